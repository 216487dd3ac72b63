#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mbrlab/common.hpp"

namespace mbrlab {

// A finite, indexed hypothesis set. Hypotheses are identified by their index;
// labels are optional display strings.
struct HypothesisSpace {
  std::size_t size = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` distinct entries

  static std::shared_ptr<const HypothesisSpace> indexed(std::size_t size);
  static std::shared_ptr<const HypothesisSpace> labeled(
      std::vector<std::string> labels);
};

using SpacePtr = std::shared_ptr<const HypothesisSpace>;

// Same hypothesis set: identical object, or identical size (and labels when
// both sides carry them).
bool compatible(const SpacePtr& a, const SpacePtr& b);

// Probability distribution over a HypothesisSpace. Construction validates
// nonnegativity and that the entries sum to 1 within 1e-12 (compensated sum);
// it never silently renormalizes.
class Categorical {
 public:
  Categorical(SpacePtr space, std::vector<double> probs);

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  SpacePtr space_;
  std::vector<double> probs_;
};

// An i.i.d. sample of hypothesis indices, with multiplicity, plus the seed it
// was drawn from. Identical (distribution, count, seed) reproduce identical
// indices.
struct SampleSet {
  SpacePtr space;
  std::vector<std::uint32_t> indices;
  std::uint64_t origin_seed = 0;
};

// `count` i.i.d. draws by CDF inversion; O(log size) per draw.
SampleSet sample(const Categorical& dist, std::size_t count,
                 std::uint64_t seed);

// Frequency distribution of a nonempty sample.
Categorical empirical_distribution(const SampleSet& samples);

// Raw counts per index (used by decoding and the empirical distribution).
std::vector<std::uint64_t> sample_counts(const SampleSet& samples);

// Reweights a distribution as probs'[y] ∝ exp(probs[y]/t). Note this
// exponentiates probability values, not logits, so t=1 is not the identity;
// t→∞ flattens toward uniform. Implemented this way on purpose.
Categorical temperature_transform(const Categorical& dist, double t);

// Generator families for the ground-truth distribution.
struct ZipfFamily {
  double s = 1.0;  // probs ∝ 1/(k+1)^s by index
};
struct DirichletFamily {
  double alpha = 1.0;  // symmetric concentration
};
using HumanFamily = std::variant<ZipfFamily, DirichletFamily>;

// A non-uniform distribution for use as ground truth. Zipf weights are a
// deterministic function of (size, s); Dirichlet draws depend on the seed.
Categorical make_human_distribution(SpacePtr space, const HumanFamily& family,
                                    std::uint64_t seed);

// Plain-text column format: "index,probability" header, one row per index,
// probabilities printed with enough digits to round-trip exactly.
void write_distribution(std::ostream& out, const Categorical& dist);
Categorical read_distribution(std::istream& in, SpacePtr space = nullptr);
Categorical read_distribution_file(const std::string& path,
                                   SpacePtr space = nullptr);
void write_distribution_file(const std::string& path, const Categorical& dist);

}  // namespace mbrlab
