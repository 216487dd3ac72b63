#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mbrlab/hypothesis.hpp"
#include "mbrlab/utility.hpp"

namespace mbrlab {

// Which objective a decode maximized.
enum class Objective {
  human_expected,      // exact expected utility under the true distribution
  model_expected,      // exact expected utility under the model
  mc_expected,         // Monte Carlo expected utility over sampled references
  mc_expected_temp,    // same, references drawn at a sampling temperature
  proxy_expected,      // Monte Carlo expected utility under a proxy utility
  human_prob,          // true-distribution mode
  model_prob,          // model mode
  empirical_prob,      // sample mode
};

struct DecodeResult {
  std::size_t chosen = 0;
  double score = 0.0;
  Objective objective = Objective::human_expected;
};

// Exact expected utility of `target` against the full support of `dist`.
// Terms are accumulated in ascending index order; mc_expected_utility uses
// the same order so the two agree bitwise on matching weights.
double expected_utility(std::size_t target, const Utility& utility,
                        const Categorical& dist);

// Mean utility of `target` against a sample, with multiplicity. Identical to
// expected_utility against the sample's empirical distribution.
double mc_expected_utility(std::size_t target, const Utility& utility,
                           const SampleSet& refs);

// Expected utility of every hypothesis; the shared scoring array decoders
// and regret measurements index into.
std::vector<double> expected_utility_all(const Utility& utility,
                                         const Categorical& dist);

// argmax over the full space; ties break to the lowest index.
DecodeResult mbr_decode_exact(const Utility& utility, const Categorical& dist,
                              Objective tag = Objective::model_expected);

// argmax over the distinct hypotheses present in `refs` (the candidate set
// equals the sampled reference set). `full_space_candidates` widens the
// candidate set to the whole space for ablation runs.
DecodeResult mbr_decode_mc(const Utility& utility, const SampleSet& refs,
                           bool full_space_candidates = false,
                           Objective tag = Objective::mc_expected);

// Mode of a distribution / of sample frequencies; lowest index wins ties.
DecodeResult map_decode(const Categorical& dist,
                        Objective tag = Objective::model_prob);
DecodeResult map_decode(const SampleSet& samples);

// One full regret trial.
struct TrialConfig {
  TrialConfig(Categorical human_dist, std::shared_ptr<const Utility> u)
      : human(std::move(human_dist)), utility(std::move(u)) {}

  Categorical human;                        // ground truth distribution
  std::shared_ptr<const Utility> utility;   // scoring model
  std::optional<Categorical> model;         // explicit model distribution
  std::optional<long> d_size;               // else: empirical from |D| draws
  long n = 0;                               // reference sample count
  std::uint64_t seed = 0;
  std::optional<double> temperature;        // adds the tempered-sampling trial
  std::optional<double> noise_scale;        // adds the proxy-utility trial
};

struct RegretReport {
  double regret_n = 0.0;    // expected-utility shortfall of the MC decode
  double regret_map = 0.0;  // probability shortfall of the sample mode
  std::optional<double> regret_u;  // proxy-utility variant
  std::optional<double> regret_t;  // temperature variant
  long n = 0;
  std::optional<long> d_size;
  std::uint64_t seed = 0;

  // Chosen indices, for determinism checks and reporting.
  std::size_t best_exact = 0;   // argmax of exact expected utility
  std::size_t chosen_mc = 0;    // Monte Carlo decode
  std::size_t mode_human = 0;   // true-distribution mode
  std::size_t mode_sample = 0;  // sample mode
  std::optional<std::size_t> chosen_proxy;
  std::optional<std::size_t> chosen_temp;

  // Proxy embedding discrepancy, when the proxy trial ran.
  std::optional<double> alpha_err;
};

// Intermediate products of a trial, for callers that need them afterwards
// (the sweep computes exact transport terms from these).
struct TrialArtifacts {
  std::optional<Categorical> model;
  std::optional<SampleSet> refs;
  std::optional<Categorical> tempered;
};

// Runs the pipeline: build the model distribution (given, or empirical from
// |D| draws of `human`), sample n references from it, decode every variant,
// and evaluate all regrets under the true distribution.
RegretReport measure_regret(const TrialConfig& config,
                            TrialArtifacts* artifacts = nullptr);

// Fixed results-file schema.
extern const char* const kRegretCsvHeader;  // seed,n,D,delta_config,...
std::string regret_csv_row(const RegretReport& report,
                           std::optional<double> delta_config);

}  // namespace mbrlab
