#include "mbrlab/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "mbrlab/csv.hpp"
#include "mbrlab/rng.hpp"

namespace mbrlab {

std::shared_ptr<const HypothesisSpace> HypothesisSpace::indexed(
    std::size_t size) {
  require(size >= 1, "hypothesis space must contain at least one hypothesis");
  auto space = std::make_shared<HypothesisSpace>();
  space->size = size;
  return space;
}

std::shared_ptr<const HypothesisSpace> HypothesisSpace::labeled(
    std::vector<std::string> labels) {
  require(!labels.empty(),
          "hypothesis space must contain at least one hypothesis");
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  require(seen.size() == labels.size(), "hypothesis labels must be distinct");
  auto space = std::make_shared<HypothesisSpace>();
  space->size = labels.size();
  space->labels = std::move(labels);
  return space;
}

bool compatible(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->size != b->size) return false;
  if (!a->labels.empty() && !b->labels.empty()) return a->labels == b->labels;
  return true;
}

Categorical::Categorical(SpacePtr space, std::vector<double> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  require(space_ != nullptr, "distribution requires a hypothesis space");
  require(probs_.size() == space_->size,
          "probability vector length must equal the space size");
  for (double p : probs_)
    require(p >= 0.0 && std::isfinite(p),
            "probabilities must be finite and nonnegative");
  const double sum = kahan_sum(probs_);
  if (std::abs(sum - 1.0) > 1e-12)
    throw InputError("probabilities sum to " + format_double(sum) +
                     ", must sum to 1 within 1e-12");
}

SampleSet sample(const Categorical& dist, std::size_t count,
                 std::uint64_t seed) {
  require(count > 0, "empty sample request");
  const auto& p = dist.probs();
  std::vector<double> cdf(p.size());
  double acc = 0.0, carry = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double y = p[i] - carry;
    double t = acc + y;
    carry = (t - acc) - y;
    acc = t;
    cdf[i] = acc;
    if (p[i] > 0.0) last_nonzero = i;
  }
  // Pin the tail at exactly 1 from the last supported index on: inversion
  // can neither run off the end nor land on a trailing zero-probability
  // index through the rounding gap of the partial sums.
  for (std::size_t i = last_nonzero; i < cdf.size(); ++i) cdf[i] = 1.0;

  SampleSet out;
  out.space = dist.space();
  out.origin_seed = seed;
  out.indices.resize(count);
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    // u in (0,1] with lower_bound never selects zero-probability indices.
    const double u = rng.uniform_open01();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    out.indices[k] = static_cast<std::uint32_t>(it - cdf.begin());
  }
  return out;
}

std::vector<std::uint64_t> sample_counts(const SampleSet& samples) {
  require(samples.space != nullptr, "sample set has no space");
  std::vector<std::uint64_t> counts(samples.space->size, 0);
  for (std::uint32_t idx : samples.indices) {
    require(idx < counts.size(), "sample index out of range");
    ++counts[idx];
  }
  return counts;
}

Categorical empirical_distribution(const SampleSet& samples) {
  require(!samples.indices.empty(), "empirical distribution of empty sample");
  const auto counts = sample_counts(samples);
  const double n = static_cast<double>(samples.indices.size());
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    probs[i] = static_cast<double>(counts[i]) / n;
  return Categorical(samples.space, std::move(probs));
}

Categorical temperature_transform(const Categorical& dist, double t) {
  require(t > 0.0 && std::isfinite(t), "invalid temperature");
  const auto& p = dist.probs();
  const double pmax = *std::max_element(p.begin(), p.end());
  std::vector<double> w(p.size());
  // exp((p - pmax)/t) equals exp(p/t) up to the common normalizer.
  for (std::size_t i = 0; i < p.size(); ++i)
    w[i] = std::exp((p[i] - pmax) / t);
  const double z = kahan_sum(w);
  for (double& v : w) v /= z;
  return Categorical(dist.space(), std::move(w));
}

Categorical make_human_distribution(SpacePtr space, const HumanFamily& family,
                                    std::uint64_t seed) {
  require(space != nullptr && space->size >= 1, "invalid hypothesis space");
  const std::size_t size = space->size;
  std::vector<double> probs(size);
  if (const auto* zipf = std::get_if<ZipfFamily>(&family)) {
    require(zipf->s > 0.0, "zipf exponent must be positive");
    for (std::size_t k = 0; k < size; ++k)
      probs[k] = std::pow(static_cast<double>(k + 1), -zipf->s);
  } else {
    const auto& dir = std::get<DirichletFamily>(family);
    require(dir.alpha > 0.0, "dirichlet concentration must be positive");
    Rng rng(mix_seed({seed, 0x64697269ULL}));
    for (std::size_t k = 0; k < size; ++k) probs[k] = rng.gamma(dir.alpha);
  }
  const double z = kahan_sum(probs);
  for (double& v : probs) v /= z;
  return Categorical(std::move(space), std::move(probs));
}

void write_distribution(std::ostream& out, const Categorical& dist) {
  out << "index,probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i)
    out << i << ',' << format_double(dist[i]) << '\n';
}

Categorical read_distribution(std::istream& in, SpacePtr space) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)),
          "distribution file is empty");
  require(trim(line) == "index,probability",
          "distribution file must start with header 'index,probability'");
  std::vector<double> probs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    require(fields.size() == 2, "line " + std::to_string(line_no) +
                                    ": expected 'index,probability'");
    const long idx = parse_long(fields[0], line_no);
    require(idx == static_cast<long>(probs.size()),
            "line " + std::to_string(line_no) + ": indices must be 0,1,2,...");
    probs.push_back(parse_double(fields[1], line_no));
  }
  require(!probs.empty(), "distribution file has no rows");
  if (!space) space = HypothesisSpace::indexed(probs.size());
  return Categorical(std::move(space), std::move(probs));
}

Categorical read_distribution_file(const std::string& path, SpacePtr space) {
  std::ifstream in(path);
  require(in.good(), "cannot open distribution file: " + path);
  try {
    return read_distribution(in, std::move(space));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_distribution_file(const std::string& path,
                             const Categorical& dist) {
  std::ofstream out(path);
  require(out.good(), "cannot open output file: " + path);
  write_distribution(out, dist);
}

}  // namespace mbrlab
