#include "mbrlab/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "mbrlab/csv.hpp"
#include "mbrlab/rng.hpp"
#include "mbrlab/transport.hpp"

namespace mbrlab {

namespace {

bool strictly_increasing(const std::vector<long>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

double median_of(std::vector<double> values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean_of(const std::vector<double>& values) {
  return kahan_sum(values) / static_cast<double>(values.size());
}

}  // namespace

void ExperimentSpec::validate() const {
  require(space_size >= 1, "space size must be >= 1");
  require(dim >= 4, "dim must be >= 4 for the bound sweep");
  require(u_max > 0.0 && u_max <= 1.0, "u_max must lie in (0, 1]");
  require(!n_grid.empty() && strictly_increasing(n_grid),
          "n grid must be nonempty and strictly increasing");
  require(!d_grid.empty() && strictly_increasing(d_grid),
          "D grid must be nonempty and strictly increasing");
  for (long v : n_grid) require(v >= 1, "n grid entries must be >= 1");
  for (long v : d_grid) require(v >= 1, "D grid entries must be >= 1");
  require(!deltas.empty(), "deltas must be nonempty");
  for (double d : deltas)
    require(d > 0.0 && d < 1.0, "delta must be in (0,1)");
  for (double t : temperatures) require(t > 0.0, "invalid temperature");
  for (double s : noise_scales)
    require(s >= 0.0, "noise scale must be nonnegative");
  require(seeds >= 1, "seeds must be >= 1");
  if (!noise_scales.empty())
    require(utility_kind == UtilityKind::embedding,
            "proxy-utility sweeps need the embedding utility");
  if (const auto* zipf = std::get_if<ZipfFamily>(&human_family))
    require(zipf->s > 0.0, "zipf exponent must be positive");
  if (const auto* dir = std::get_if<DirichletFamily>(&human_family))
    require(dir->alpha > 0.0, "dirichlet concentration must be positive");
}

const std::vector<std::string>& ExperimentSpec::known_keys() {
  static const std::vector<std::string> keys = {
      "space.size",        "space.family",       "space.zipf_s",
      "space.dirichlet_alpha",
      "utility.kind",      "utility.dim",        "utility.u_max",
      "utility.beta",
      "sweep.n_grid",      "sweep.d_grid",       "sweep.deltas",
      "sweep.temperatures", "sweep.noise_scales",
      "sweep.compute_wd",  "sweep.wd_limit",     "sweep.wd_cost",
      "sweep.tightened_limit",
      "run.seeds",         "run.master_seed",    "run.fixed_human",
      "run.threads",
      // consumed by the CLI rather than the sweep runner
      "decode.model",      "decode.human",       "decode.utility",
      "decode.n",          "decode.seed",
  };
  return keys;
}

ExperimentSpec ExperimentSpec::from_config(const Config& config) {
  config.require_known_keys(known_keys());
  ExperimentSpec spec;
  spec.space_size =
      static_cast<std::size_t>(config.get_long_or("space.size", 1000));
  const std::string family = config.get_string_or("space.family", "zipf");
  if (family == "zipf") {
    spec.human_family = ZipfFamily{config.get_double_or("space.zipf_s", 1.0)};
  } else if (family == "dirichlet") {
    spec.human_family =
        DirichletFamily{config.get_double_or("space.dirichlet_alpha", 1.0)};
  } else {
    throw InputError("space.family must be zipf or dirichlet, got '" +
                     family + "'");
  }
  const std::string kind = config.get_string_or("utility.kind", "embedding");
  if (kind == "embedding") {
    spec.utility_kind = UtilityKind::embedding;
  } else if (kind == "matrix") {
    spec.utility_kind = UtilityKind::correlated_matrix;
  } else {
    throw InputError("utility.kind must be embedding or matrix, got '" +
                     kind + "'");
  }
  spec.dim = config.get_long_or("utility.dim", 4);
  spec.u_max = config.get_double_or("utility.u_max", 1.0);
  spec.beta = config.get_double_or("utility.beta", 0.2);
  if (config.has("sweep.n_grid")) spec.n_grid = config.get_long_list("sweep.n_grid");
  if (config.has("sweep.d_grid")) spec.d_grid = config.get_long_list("sweep.d_grid");
  if (config.has("sweep.deltas"))
    spec.deltas = config.get_double_list("sweep.deltas");
  else
    spec.deltas = {0.01, 0.1};
  if (config.has("sweep.temperatures"))
    spec.temperatures = config.get_double_list("sweep.temperatures");
  if (config.has("sweep.noise_scales"))
    spec.noise_scales = config.get_double_list("sweep.noise_scales");
  spec.compute_wd = config.get_bool_or("sweep.compute_wd", true);
  spec.wd_limit =
      static_cast<std::size_t>(config.get_long_or("sweep.wd_limit", 2000));
  const std::string cost = config.get_string_or("sweep.wd_cost", "tightened");
  if (cost == "tightened") {
    spec.wd_cost_mode = CostMode::tightened;
  } else if (cost == "trivial") {
    spec.wd_cost_mode = CostMode::trivial;
  } else {
    throw InputError("sweep.wd_cost must be tightened or trivial, got '" +
                     cost + "'");
  }
  spec.tightened_limit = static_cast<std::size_t>(
      config.get_long_or("sweep.tightened_limit", 1024));
  spec.seeds = config.get_long_or("run.seeds", 100);
  spec.master_seed = static_cast<std::uint64_t>(
      config.get_long_or("run.master_seed", 0));
  spec.fixed_human = config.get_bool_or("run.fixed_human", false);
  spec.threads = static_cast<int>(config.get_long_or("run.threads", 1));
  spec.validate();
  return spec;
}

namespace {

struct Variant {
  std::optional<double> temperature;
  std::optional<double> noise;
};

struct Task {
  long n = 0;
  long d_size = 0;
  Variant variant;
  long seed_index = 0;
};

struct TaskOutput {
  RegretReport report;
  std::optional<double> wd_hm, wd_tt, alpha_err;
  bool wd_skipped = false;
};

std::vector<Variant> make_variants(const ExperimentSpec& spec) {
  std::vector<Variant> variants{{std::nullopt, std::nullopt}};
  for (double t : spec.temperatures)
    variants.push_back({t, std::nullopt});
  for (double s : spec.noise_scales)
    variants.push_back({std::nullopt, s});
  return variants;
}

std::uint64_t variant_tag(const Variant& v) {
  if (v.temperature) return mix_seed({1, double_bits(*v.temperature)});
  if (v.noise) return mix_seed({2, double_bits(*v.noise)});
  return 0;
}

std::shared_ptr<const Utility> build_utility(const ExperimentSpec& spec,
                                             const Categorical& human,
                                             std::uint64_t seed) {
  if (spec.utility_kind == UtilityKind::embedding)
    return std::make_shared<EmbeddingUtility>(build_embedding_utility(
        spec.space_size, spec.dim, spec.u_max, seed));
  return std::make_shared<MatrixUtility>(
      build_correlated_matrix_utility(human, spec.beta, seed));
}

class SweepRunner {
 public:
  explicit SweepRunner(const ExperimentSpec& spec)
      : spec_(spec), space_(HypothesisSpace::indexed(spec.space_size)) {}

  TaskOutput run_task(const Task& task) const {
    const std::uint64_t human_seed = mix_seed(
        {spec_.master_seed, 0x68756d61ULL,
         spec_.fixed_human ? 0ULL : static_cast<std::uint64_t>(task.seed_index)});
    const Categorical human =
        make_human_distribution(space_, spec_.human_family, human_seed);
    const std::uint64_t util_seed =
        mix_seed({spec_.master_seed, 0x7574696cULL,
                  static_cast<std::uint64_t>(task.seed_index)});
    const auto utility = build_utility(spec_, human, util_seed);

    TrialConfig config(human, utility);
    config.d_size = task.d_size;
    config.n = task.n;
    config.seed = mix_seed({spec_.master_seed, 0x74726961ULL,
                            static_cast<std::uint64_t>(task.n),
                            static_cast<std::uint64_t>(task.d_size),
                            static_cast<std::uint64_t>(task.seed_index),
                            variant_tag(task.variant)});
    config.temperature = task.variant.temperature;
    config.noise_scale = task.variant.noise;

    TaskOutput out;
    TrialArtifacts artifacts;
    out.report = measure_regret(config, &artifacts);
    out.alpha_err = out.report.alpha_err;

    if (spec_.compute_wd) {
      if (spec_.space_size <= spec_.wd_limit) {
        const CostMode mode = (spec_.wd_cost_mode == CostMode::tightened &&
                               spec_.space_size <= spec_.tightened_limit)
                                  ? CostMode::tightened
                                  : CostMode::trivial;
        const LipschitzCost cost =
            default_cost(*utility, mode, spec_.tightened_limit);
        out.wd_hm =
            wasserstein(human, *artifacts.model, cost).distance;
        if (artifacts.tempered)
          out.wd_tt =
              wasserstein(*artifacts.model, *artifacts.tempered, cost)
                  .distance;
      } else {
        out.wd_skipped = true;
      }
    }
    return out;
  }

 private:
  const ExperimentSpec& spec_;
  SpacePtr space_;
};

template <typename TaskType, typename OutputType, typename Fn>
void run_parallel(const std::vector<TaskType>& tasks,
                  std::vector<OutputType>& outputs, int threads, Fn&& fn) {
  outputs.resize(tasks.size());
  int n_threads = threads == 0
                      ? static_cast<int>(std::thread::hardware_concurrency())
                      : threads;
  n_threads = std::max(1, std::min<int>(n_threads,
                                        static_cast<int>(tasks.size())));
  if (n_threads == 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) outputs[k] = fn(tasks[k]);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      try {
        outputs[k] = fn(tasks[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void attach_bounds(SweepRow& row, const ExperimentSpec& spec) {
  const auto flag = [](double regret, double bound) { return regret > bound; };
  row.bound_mbr_nd =
      mbr_bound_nd(row.n, row.d_size, spec.dim, row.delta).total;
  row.viol_mbr_nd = flag(row.report.regret_n, *row.bound_mbr_nd);
  row.bound_map_nd = map_bound_nd(row.n, row.d_size, row.delta).total;
  row.viol_map_nd = flag(row.report.regret_map, *row.bound_map_nd);
  if (row.wd_hm) {
    row.bound_mbr_wd =
        mbr_bound_wd(row.n, spec.dim, row.delta, *row.wd_hm).total;
    row.viol_mbr_wd = flag(row.report.regret_n, *row.bound_mbr_wd);
    row.bound_map_wd = map_bound_wd(row.n, row.delta, *row.wd_hm).total;
    row.viol_map_wd = flag(row.report.regret_map, *row.bound_map_wd);
  }
  if (row.report.regret_u && row.alpha_err) {
    row.bound_u = proxy_utility_bound(row.n, row.d_size, spec.dim, row.delta,
                                      *row.alpha_err)
                      .total;
    row.viol_u = flag(*row.report.regret_u, *row.bound_u);
  }
  if (row.report.regret_t && row.wd_tt) {
    row.bound_t =
        temperature_bound(row.n, row.d_size, spec.dim, row.delta, *row.wd_tt)
            .total;
    row.viol_t = flag(*row.report.regret_t, *row.bound_t);
  }
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const auto variants = make_variants(spec);
  std::vector<Task> tasks;
  for (long n : spec.n_grid)
    for (long d : spec.d_grid)
      for (const auto& variant : variants)
        for (long s = 0; s < spec.seeds; ++s)
          tasks.push_back({n, d, variant, s});

  SweepRunner runner(spec);
  std::vector<TaskOutput> outputs;
  run_parallel(tasks, outputs, spec.threads,
               [&runner](const Task& t) { return runner.run_task(t); });

  SweepResult result;
  result.rows.reserve(tasks.size() * spec.deltas.size());
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    for (double delta : spec.deltas) {
      SweepRow row;
      row.n = tasks[k].n;
      row.d_size = tasks[k].d_size;
      row.delta = delta;
      row.temperature = tasks[k].variant.temperature;
      row.noise = tasks[k].variant.noise;
      row.seed_index = tasks[k].seed_index;
      row.report = outputs[k].report;
      row.wd_hm = outputs[k].wd_hm;
      row.wd_tt = outputs[k].wd_tt;
      row.alpha_err = outputs[k].alpha_err;
      row.wd_skipped = outputs[k].wd_skipped;
      attach_bounds(row, spec);
      result.rows.push_back(std::move(row));
    }
  }
  result.summary = summarize(result.rows);
  return result;
}

namespace {

struct GroupKey {
  long n;
  long d_size;
  double delta;
  double temperature;  // NaN encoded as missing
  double noise;

  bool operator<(const GroupKey& o) const {
    if (n != o.n) return n < o.n;
    if (d_size != o.d_size) return d_size < o.d_size;
    if (delta != o.delta) return delta < o.delta;
    if (temperature != o.temperature) return temperature < o.temperature;
    return noise < o.noise;
  }
};

double key_of(const std::optional<double>& v) {
  return v ? *v : -std::numeric_limits<double>::infinity();
}

std::optional<double> median_optional(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return median_of(values);
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  // Group in first-appearance order so summaries follow the sweep layout.
  std::vector<GroupKey> order;
  std::map<GroupKey, std::vector<const SweepRow*>> groups;
  for (const auto& row : rows) {
    GroupKey key{row.n, row.d_size, row.delta, key_of(row.temperature),
                 key_of(row.noise)};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&row);
  }

  std::vector<SummaryRow> summary;
  summary.reserve(order.size());
  for (const auto& key : order) {
    const auto& members = groups[key];
    SummaryRow s;
    s.n = key.n;
    s.d_size = key.d_size;
    s.delta = key.delta;
    s.temperature = members.front()->temperature;
    s.noise = members.front()->noise;
    s.rows = members.size();

    std::vector<double> regret_n, regret_map, regret_u, regret_t;
    std::vector<double> b_mbr_nd, b_mbr_wd, b_map_nd, b_map_wd, b_u, b_t;
    std::vector<double> v_mbr_nd, v_mbr_wd, v_map_nd, v_map_wd, v_u, v_t;
    for (const auto* row : members) {
      regret_n.push_back(row->report.regret_n);
      regret_map.push_back(row->report.regret_map);
      if (row->report.regret_u) regret_u.push_back(*row->report.regret_u);
      if (row->report.regret_t) regret_t.push_back(*row->report.regret_t);
      if (row->bound_mbr_nd) b_mbr_nd.push_back(*row->bound_mbr_nd);
      if (row->bound_mbr_wd) b_mbr_wd.push_back(*row->bound_mbr_wd);
      if (row->bound_map_nd) b_map_nd.push_back(*row->bound_map_nd);
      if (row->bound_map_wd) b_map_wd.push_back(*row->bound_map_wd);
      if (row->bound_u) b_u.push_back(*row->bound_u);
      if (row->bound_t) b_t.push_back(*row->bound_t);
      if (row->viol_mbr_nd) v_mbr_nd.push_back(*row->viol_mbr_nd ? 1.0 : 0.0);
      if (row->viol_mbr_wd) v_mbr_wd.push_back(*row->viol_mbr_wd ? 1.0 : 0.0);
      if (row->viol_map_nd) v_map_nd.push_back(*row->viol_map_nd ? 1.0 : 0.0);
      if (row->viol_map_wd) v_map_wd.push_back(*row->viol_map_wd ? 1.0 : 0.0);
      if (row->viol_u) v_u.push_back(*row->viol_u ? 1.0 : 0.0);
      if (row->viol_t) v_t.push_back(*row->viol_t ? 1.0 : 0.0);
    }
    s.regret_n_median = median_of(regret_n);
    s.regret_n_mean = mean_of(regret_n);
    s.regret_map_median = median_of(regret_map);
    s.regret_map_mean = mean_of(regret_map);
    s.regret_u_median = median_optional(regret_u);
    s.regret_t_median = median_optional(regret_t);
    s.bound_mbr_nd = median_optional(b_mbr_nd);
    s.bound_mbr_wd = median_optional(b_mbr_wd);
    s.bound_map_nd = median_optional(b_map_nd);
    s.bound_map_wd = median_optional(b_map_wd);
    s.bound_u = median_optional(b_u);
    s.bound_t = median_optional(b_t);
    auto rate = [](const std::vector<double>& v) -> std::optional<double> {
      if (v.empty()) return std::nullopt;
      return kahan_sum(v) / static_cast<double>(v.size());
    };
    s.viol_mbr_nd = rate(v_mbr_nd);
    s.viol_mbr_wd = rate(v_mbr_wd);
    s.viol_map_nd = rate(v_map_nd);
    s.viol_map_wd = rate(v_map_wd);
    s.viol_u = rate(v_u);
    s.viol_t = rate(v_t);
    summary.push_back(std::move(s));
  }
  return summary;
}

std::vector<CrossoverRow> run_crossover_study(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<CrossoverRow> rows;
  for (long n : spec.n_grid)
    for (long d : spec.d_grid)
      for (double delta : spec.deltas) {
        CrossoverRow row;
        row.n = n;
        row.d_size = d;
        row.delta = delta;
        row.mbr_bound = mbr_bound_nd(n, d, spec.dim, delta).total;
        row.map_bound = map_bound_nd(n, d, delta).total;
        row.difference = row.map_bound - row.mbr_bound;
        row.predicate = crossover_finite(n, d, spec.dim, delta);
        rows.push_back(row);
      }
  return rows;
}

std::vector<ProbeRow> run_observation_probe(const ExperimentSpec& spec) {
  spec.validate();
  const auto space = HypothesisSpace::indexed(spec.space_size);
  std::vector<Task> tasks;
  for (long n : spec.n_grid)
    for (long d : spec.d_grid)
      for (long s = 0; s < spec.seeds; ++s)
        tasks.push_back({n, d, Variant{}, s});

  std::vector<ProbeRow> rows;
  run_parallel(tasks, rows, spec.threads, [&](const Task& task) {
    const std::uint64_t human_seed = mix_seed(
        {spec.master_seed, 0x68756d61ULL,
         spec.fixed_human ? 0ULL : static_cast<std::uint64_t>(task.seed_index)});
    const Categorical human =
        make_human_distribution(space, spec.human_family, human_seed);
    const auto utility = build_utility(
        spec, human,
        mix_seed({spec.master_seed, 0x7574696cULL,
                  static_cast<std::uint64_t>(task.seed_index)}));
    const std::uint64_t trial_seed =
        mix_seed({spec.master_seed, 0x70726f62ULL,
                  static_cast<std::uint64_t>(task.n),
                  static_cast<std::uint64_t>(task.d_size),
                  static_cast<std::uint64_t>(task.seed_index)});
    const auto train =
        sample(human, static_cast<std::size_t>(task.d_size),
               mix_seed({trial_seed, 1}));
    const auto model = empirical_distribution(train);
    const auto refs = sample(model, static_cast<std::size_t>(task.n),
                             mix_seed({trial_seed, 2}));

    const auto truth_scores = expected_utility_all(*utility, human);
    const auto model_scores = expected_utility_all(*utility, model);
    const auto mc = mbr_decode_mc(*utility, refs);
    const auto mode_sample = map_decode(refs);
    std::size_t best_exact = 0;
    for (std::size_t i = 1; i < truth_scores.size(); ++i)
      if (truth_scores[i] > truth_scores[best_exact]) best_exact = i;

    ProbeRow row;
    row.n = task.n;
    row.d_size = task.d_size;
    row.seed_index = task.seed_index;
    row.truth_gap =
        truth_scores[best_exact] - truth_scores[mode_sample.chosen];
    row.model_gap = model_scores[mc.chosen] - model_scores[mode_sample.chosen];
    row.gap = row.truth_gap - row.model_gap;
    return row;
  });
  return rows;
}

const char* const kResultsCsvHeader =
    "seed,n,D,delta_config,regret_n,regret_map,regret_u,regret_t,"
    "t,noise,wd_hm,wd_tt,alpha_err,"
    "bound_mbr_nd,bound_mbr_wd,bound_map_nd,bound_map_wd,bound_u,bound_t,"
    "viol_mbr_nd,viol_mbr_wd,viol_map_nd,viol_map_wd,viol_u,viol_t";

const char* const kSummaryCsvHeader =
    "n,D,delta,t,noise,rows,"
    "regret_n_median,regret_n_mean,regret_map_median,regret_map_mean,"
    "regret_u_median,regret_t_median,"
    "bound_mbr_nd,bound_mbr_wd,bound_map_nd,bound_map_wd,bound_u,bound_t,"
    "viol_rate_mbr_nd,viol_rate_mbr_wd,viol_rate_map_nd,viol_rate_map_wd,"
    "viol_rate_u,viol_rate_t";

const char* const kCrossoverCsvHeader =
    "n,D,delta,mbr_bound_nd,map_bound_nd,difference,mbr_below_map";

const char* const kProbeCsvHeader = "n,D,seed,truth_gap,model_gap,gap";

namespace {

std::string flag_cell(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "1" : "0";
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kResultsCsvHeader << '\n';
  for (const auto& row : rows) {
    out << regret_csv_row(row.report, row.delta);
    out << ',' << format_optional(row.temperature);
    out << ',' << format_optional(row.noise);
    out << ',' << format_optional(row.wd_hm);
    out << ',' << format_optional(row.wd_tt);
    out << ',' << format_optional(row.alpha_err);
    out << ',' << format_optional(row.bound_mbr_nd);
    out << ',' << format_optional(row.bound_mbr_wd);
    out << ',' << format_optional(row.bound_map_nd);
    out << ',' << format_optional(row.bound_map_wd);
    out << ',' << format_optional(row.bound_u);
    out << ',' << format_optional(row.bound_t);
    out << ',' << flag_cell(row.viol_mbr_nd);
    out << ',' << flag_cell(row.viol_mbr_wd);
    out << ',' << flag_cell(row.viol_map_nd);
    out << ',' << flag_cell(row.viol_map_wd);
    out << ',' << flag_cell(row.viol_u);
    out << ',' << flag_cell(row.viol_t);
    out << '\n';
  }
}

std::vector<SweepRow> read_results_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "results file is empty");
  require(trim(line) == kResultsCsvHeader,
          "results file has an unexpected header");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    require(f.size() == 25,
            "line " + std::to_string(line_no) + ": expected 25 fields, got " +
                std::to_string(f.size()));
    SweepRow row;
    {
      const std::string t = trim(f[0]);
      errno = 0;
      char* end = nullptr;
      row.report.seed = std::strtoull(t.c_str(), &end, 10);
      require(errno == 0 && !t.empty() && end == t.c_str() + t.size(),
              "line " + std::to_string(line_no) + ": invalid seed '" + f[0] +
                  "'");
    }
    row.n = parse_long(f[1], line_no);
    row.report.n = row.n;
    row.d_size = parse_long(f[2], line_no);
    row.report.d_size = row.d_size;
    row.delta = parse_double(f[3], line_no);
    row.report.regret_n = parse_double(f[4], line_no);
    row.report.regret_map = parse_double(f[5], line_no);
    row.report.regret_u = parse_optional(f[6], line_no);
    row.report.regret_t = parse_optional(f[7], line_no);
    row.temperature = parse_optional(f[8], line_no);
    row.noise = parse_optional(f[9], line_no);
    row.wd_hm = parse_optional(f[10], line_no);
    row.wd_tt = parse_optional(f[11], line_no);
    row.alpha_err = parse_optional(f[12], line_no);
    row.bound_mbr_nd = parse_optional(f[13], line_no);
    row.bound_mbr_wd = parse_optional(f[14], line_no);
    row.bound_map_nd = parse_optional(f[15], line_no);
    row.bound_map_wd = parse_optional(f[16], line_no);
    row.bound_u = parse_optional(f[17], line_no);
    row.bound_t = parse_optional(f[18], line_no);
    auto parse_flag = [&](const std::string& field) -> std::optional<bool> {
      const std::string t = trim(field);
      if (t.empty()) return std::nullopt;
      if (t == "0") return false;
      if (t == "1") return true;
      throw InputError("line " + std::to_string(line_no) +
                       ": invalid flag '" + field + "'");
    };
    row.viol_mbr_nd = parse_flag(f[19]);
    row.viol_mbr_wd = parse_flag(f[20]);
    row.viol_map_nd = parse_flag(f[21]);
    row.viol_map_wd = parse_flag(f[22]);
    row.viol_u = parse_flag(f[23]);
    row.viol_t = parse_flag(f[24]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(std::ostream& out,
                       const std::vector<SummaryRow>& summary) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& s : summary) {
    out << s.n << ',' << s.d_size << ',' << format_double(s.delta);
    out << ',' << format_optional(s.temperature);
    out << ',' << format_optional(s.noise);
    out << ',' << s.rows;
    out << ',' << format_double(s.regret_n_median);
    out << ',' << format_double(s.regret_n_mean);
    out << ',' << format_double(s.regret_map_median);
    out << ',' << format_double(s.regret_map_mean);
    out << ',' << format_optional(s.regret_u_median);
    out << ',' << format_optional(s.regret_t_median);
    out << ',' << format_optional(s.bound_mbr_nd);
    out << ',' << format_optional(s.bound_mbr_wd);
    out << ',' << format_optional(s.bound_map_nd);
    out << ',' << format_optional(s.bound_map_wd);
    out << ',' << format_optional(s.bound_u);
    out << ',' << format_optional(s.bound_t);
    out << ',' << format_optional(s.viol_mbr_nd);
    out << ',' << format_optional(s.viol_mbr_wd);
    out << ',' << format_optional(s.viol_map_nd);
    out << ',' << format_optional(s.viol_map_wd);
    out << ',' << format_optional(s.viol_u);
    out << ',' << format_optional(s.viol_t);
    out << '\n';
  }
}

void write_crossover_csv(std::ostream& out,
                         const std::vector<CrossoverRow>& rows) {
  out << kCrossoverCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.n << ',' << row.d_size << ',' << format_double(row.delta)
        << ',' << format_double(row.mbr_bound) << ','
        << format_double(row.map_bound) << ','
        << format_double(row.difference) << ',' << (row.predicate ? 1 : 0)
        << '\n';
  }
}

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
  out << kProbeCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.n << ',' << row.d_size << ',' << row.seed_index << ','
        << format_double(row.truth_gap) << ',' << format_double(row.model_gap)
        << ',' << format_double(row.gap) << '\n';
  }
}

}  // namespace mbrlab
