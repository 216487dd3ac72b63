#include "mbrlab/decode.hpp"

#include <algorithm>
#include <cmath>

#include "mbrlab/csv.hpp"
#include "mbrlab/rng.hpp"

namespace mbrlab {

namespace {

void require_same_size(const Utility& utility, std::size_t n) {
  require(utility.size() == n,
          "utility and distribution cover different hypothesis spaces");
}

std::size_t argmax_lowest(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

}  // namespace

double expected_utility(std::size_t target, const Utility& utility,
                        const Categorical& dist) {
  require_same_size(utility, dist.size());
  require(target < dist.size(), "hypothesis index out of range");
  const auto& p = dist.probs();
  double sum = 0.0;
  for (std::size_t yp = 0; yp < p.size(); ++yp)
    sum += utility.value(target, yp) * p[yp];
  return sum;
}

double mc_expected_utility(std::size_t target, const Utility& utility,
                           const SampleSet& refs) {
  require(!refs.indices.empty(), "empty reference sample");
  require_same_size(utility, refs.space->size);
  require(target < refs.space->size, "hypothesis index out of range");
  // Same weights and summation order as expected_utility against the
  // empirical distribution, so the estimator identity holds bitwise.
  const auto counts = sample_counts(refs);
  const double n = static_cast<double>(refs.indices.size());
  double sum = 0.0;
  for (std::size_t yp = 0; yp < counts.size(); ++yp) {
    if (counts[yp] == 0) continue;
    sum += utility.value(target, yp) * (static_cast<double>(counts[yp]) / n);
  }
  return sum;
}

std::vector<double> expected_utility_all(const Utility& utility,
                                         const Categorical& dist) {
  require_same_size(utility, dist.size());
  std::vector<double> scores(dist.size());
  for (std::size_t y = 0; y < scores.size(); ++y)
    scores[y] = expected_utility(y, utility, dist);
  return scores;
}

DecodeResult mbr_decode_exact(const Utility& utility, const Categorical& dist,
                              Objective tag) {
  const auto scores = expected_utility_all(utility, dist);
  const std::size_t best = argmax_lowest(scores);
  return {best, scores[best], tag};
}

DecodeResult mbr_decode_mc(const Utility& utility, const SampleSet& refs,
                           bool full_space_candidates, Objective tag) {
  require(!refs.indices.empty(), "empty reference sample");
  require_same_size(utility, refs.space->size);
  std::vector<std::size_t> candidates;
  if (full_space_candidates) {
    candidates.resize(refs.space->size);
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  } else {
    const auto counts = sample_counts(refs);
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] > 0) candidates.push_back(i);
  }
  std::size_t best = candidates.front();
  double best_score = mc_expected_utility(best, utility, refs);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double s = mc_expected_utility(candidates[k], utility, refs);
    if (s > best_score) {
      best = candidates[k];
      best_score = s;
    }
  }
  return {best, best_score, tag};
}

DecodeResult map_decode(const Categorical& dist, Objective tag) {
  const std::size_t best = argmax_lowest(dist.probs());
  return {best, dist[best], tag};
}

DecodeResult map_decode(const SampleSet& samples) {
  require(!samples.indices.empty(), "empty sample");
  const auto emp = empirical_distribution(samples);
  auto result = map_decode(emp, Objective::empirical_prob);
  return result;
}

RegretReport measure_regret(const TrialConfig& config,
                            TrialArtifacts* artifacts) {
  require(config.utility != nullptr, "trial needs a utility model");
  require(config.n >= 1, "trial needs at least one reference sample");
  const Utility& utility = *config.utility;
  require_same_size(utility, config.human.size());

  RegretReport report;
  report.n = config.n;
  report.seed = config.seed;

  // Model distribution: explicit, or the empirical distribution of |D|
  // ground-truth draws.
  std::optional<Categorical> model_storage;
  const Categorical* model = nullptr;
  if (config.model) {
    require(compatible(config.model->space(), config.human.space()),
            "model and true distributions live on different spaces");
    model = &*config.model;
    report.d_size = config.d_size;
  } else {
    require(config.d_size && *config.d_size >= 1,
            "trial needs either a model distribution or a training size");
    const auto train = sample(config.human,
                              static_cast<std::size_t>(*config.d_size),
                              mix_seed({config.seed, 1}));
    model_storage = empirical_distribution(train);
    model = &*model_storage;
    report.d_size = config.d_size;
  }

  const auto refs = sample(*model, static_cast<std::size_t>(config.n),
                           mix_seed({config.seed, 2}));
  if (artifacts) {
    artifacts->model = *model;
    artifacts->refs = refs;
  }

  // Ground-truth scores are computed once; every regret below subtracts two
  // entries of the same array, so regrets are nonnegative by construction.
  const auto truth_scores = expected_utility_all(utility, config.human);
  const std::size_t best_exact = argmax_lowest(truth_scores);
  report.best_exact = best_exact;

  const auto mc = mbr_decode_mc(utility, refs);
  report.chosen_mc = mc.chosen;
  report.regret_n = truth_scores[best_exact] - truth_scores[mc.chosen];

  const auto mode_h = map_decode(config.human, Objective::human_prob);
  const auto mode_s = map_decode(refs);
  report.mode_human = mode_h.chosen;
  report.mode_sample = mode_s.chosen;
  report.regret_map =
      config.human[mode_h.chosen] - config.human[mode_s.chosen];

  if (config.temperature) {
    const auto tempered = temperature_transform(*model, *config.temperature);
    if (artifacts) artifacts->tempered = tempered;
    const auto refs_t = sample(tempered, static_cast<std::size_t>(config.n),
                               mix_seed({config.seed, 3}));
    const auto mc_t =
        mbr_decode_mc(utility, refs_t, false, Objective::mc_expected_temp);
    report.chosen_temp = mc_t.chosen;
    report.regret_t = truth_scores[best_exact] - truth_scores[mc_t.chosen];
  }

  if (config.noise_scale) {
    const auto* base = dynamic_cast<const EmbeddingUtility*>(&utility);
    require(base != nullptr,
            "proxy-utility trials require an embedding-backed utility");
    const auto proxy =
        perturb_embeddings(*base, *config.noise_scale, mix_seed({config.seed, 4}));
    // Same references, scored with the proxy; regret under the true utility.
    const auto picked =
        mbr_decode_mc(proxy, refs, false, Objective::proxy_expected);
    report.chosen_proxy = picked.chosen;
    report.regret_u = truth_scores[best_exact] - truth_scores[picked.chosen];
    report.alpha_err = proxy.alpha_err();
  }

  return report;
}

const char* const kRegretCsvHeader =
    "seed,n,D,delta_config,regret_n,regret_map,regret_u,regret_t";

std::string regret_csv_row(const RegretReport& report,
                           std::optional<double> delta_config) {
  std::string row = std::to_string(report.seed);
  row += ',';
  row += std::to_string(report.n);
  row += ',';
  if (report.d_size) row += std::to_string(*report.d_size);
  row += ',';
  if (delta_config) row += format_double(*delta_config);
  row += ',';
  row += format_double(report.regret_n);
  row += ',';
  row += format_double(report.regret_map);
  row += ',';
  row += format_optional(report.regret_u);
  row += ',';
  row += format_optional(report.regret_t);
  return row;
}

}  // namespace mbrlab
