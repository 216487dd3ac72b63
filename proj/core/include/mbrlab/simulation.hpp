#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mbrlab/bounds.hpp"
#include "mbrlab/config.hpp"
#include "mbrlab/decode.hpp"
#include "mbrlab/hypothesis.hpp"
#include "mbrlab/utility.hpp"

namespace mbrlab {

enum class UtilityKind { embedding, correlated_matrix };

// A full experiment: sweep the sample count n and training size |D| over
// many seeds, measure regrets, evaluate the matching bounds, and record
// per-seed bound violations.
struct ExperimentSpec {
  std::size_t space_size = 1000;
  long dim = 4;
  double u_max = 1.0;
  HumanFamily human_family = ZipfFamily{1.0};
  UtilityKind utility_kind = UtilityKind::embedding;
  double beta = 0.2;  // high-probability boost of the matrix utility

  std::vector<long> n_grid;
  std::vector<long> d_grid;
  std::vector<double> deltas;
  std::vector<double> temperatures;   // empty: no tempered-sampling variants
  std::vector<double> noise_scales;   // empty: no proxy-utility variants

  long seeds = 100;
  std::uint64_t master_seed = 0;

  bool compute_wd = true;             // exact transport terms per trial
  std::size_t wd_limit = 2000;        // largest space solved exactly
  CostMode wd_cost_mode = CostMode::tightened;
  std::size_t tightened_limit = 1024;

  bool fixed_human = false;           // one ground truth across seeds
  int threads = 1;                    // 0 = hardware concurrency

  void validate() const;
  static ExperimentSpec from_config(const Config& config);
  static const std::vector<std::string>& known_keys();
};

struct SweepRow {
  long n = 0;
  long d_size = 0;
  double delta = 0.0;
  std::optional<double> temperature;
  std::optional<double> noise;
  long seed_index = 0;
  RegretReport report;

  std::optional<double> wd_hm;   // WD(true, model), exact
  std::optional<double> wd_tt;   // WD(model, tempered model), exact
  std::optional<double> alpha_err;
  bool wd_skipped = false;       // space exceeded the exact-WD limit

  std::optional<double> bound_mbr_nd, bound_mbr_wd;
  std::optional<double> bound_map_nd, bound_map_wd;
  std::optional<double> bound_u, bound_t;
  std::optional<bool> viol_mbr_nd, viol_mbr_wd;
  std::optional<bool> viol_map_nd, viol_map_wd;
  std::optional<bool> viol_u, viol_t;
};

struct SummaryRow {
  long n = 0;
  long d_size = 0;
  double delta = 0.0;
  std::optional<double> temperature;
  std::optional<double> noise;
  std::size_t rows = 0;

  double regret_n_median = 0.0, regret_n_mean = 0.0;
  double regret_map_median = 0.0, regret_map_mean = 0.0;
  std::optional<double> regret_u_median, regret_t_median;
  std::optional<double> bound_mbr_nd, bound_mbr_wd;   // medians over rows
  std::optional<double> bound_map_nd, bound_map_wd;
  std::optional<double> bound_u, bound_t;
  std::optional<double> viol_mbr_nd, viol_mbr_wd;     // violation rates
  std::optional<double> viol_map_nd, viol_map_wd;
  std::optional<double> viol_u, viol_t;
};

struct SweepResult {
  std::vector<SweepRow> rows;      // deterministic (grid point, seed) order
  std::vector<SummaryRow> summary;
};

SweepResult run_sweep(const ExperimentSpec& spec);

// Group rows by (n, D, delta, variant) and aggregate. run_sweep and the
// results-file reporter share this, so re-summarizing a results file is
// idempotent.
std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);

// Bound-vs-bound comparison over the (n, |D|) grid: where does the MBR bound
// drop below the MAP bound, and does the closed-form predicate agree.
struct CrossoverRow {
  long n = 0;
  long d_size = 0;
  double delta = 0.0;
  double mbr_bound = 0.0;
  double map_bound = 0.0;
  double difference = 0.0;  // map_bound - mbr_bound
  bool predicate = false;   // crossover_finite
};
std::vector<CrossoverRow> run_crossover_study(const ExperimentSpec& spec);

// Empirical probe of the two decoders' objectives: the shortfall of the
// sample mode under the exact expected utility (truth side) versus under the
// model expected utility (model side), per seed. No pass/fail — the paper's
// asymptotic constant is unspecified; only the measured gap is reported.
struct ProbeRow {
  long n = 0;
  long d_size = 0;
  long seed_index = 0;
  double truth_gap = 0.0;  // u_h(best exact) - u_h(sample mode)
  double model_gap = 0.0;  // u_m(mc decode) - u_m(sample mode)
  double gap = 0.0;        // truth_gap - model_gap
};
std::vector<ProbeRow> run_observation_probe(const ExperimentSpec& spec);

// Results / summary / study files. Headers are fixed; optional values are
// empty cells; floats are printed exactly (round-trip).
extern const char* const kResultsCsvHeader;
extern const char* const kSummaryCsvHeader;
extern const char* const kCrossoverCsvHeader;
extern const char* const kProbeCsvHeader;

void write_results_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_results_csv(std::istream& in);
void write_summary_csv(std::ostream& out,
                       const std::vector<SummaryRow>& summary);
void write_crossover_csv(std::ostream& out,
                         const std::vector<CrossoverRow>& rows);
void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);

}  // namespace mbrlab
