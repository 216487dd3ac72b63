#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <memory>

#include "mbrlab/common.hpp"
#include "mbrlab/hypothesis.hpp"

namespace mbrlab {

// Pairwise utility u(y,y'), bounded in [0, u_max].
class Utility {
 public:
  virtual ~Utility() = default;
  virtual std::size_t size() const = 0;
  virtual double u_max() const = 0;
  virtual double value(std::size_t y, std::size_t yp) const = 0;

  double checked_value(std::size_t y, std::size_t yp) const {
    require(y < size() && yp < size(), "hypothesis index out of range");
    return value(y, yp);
  }
};

// u(y,y') = dot(alpha(y), alpha(y')) with nonnegative embedding coordinates
// and max row norm equal to u_max, so every value lands in [0, u_max].
class EmbeddingUtility final : public Utility {
 public:
  EmbeddingUtility(Eigen::MatrixXd embeddings, double u_max);

  std::size_t size() const override {
    return static_cast<std::size_t>(embeddings_.rows());
  }
  double u_max() const override { return u_max_; }
  double value(std::size_t y, std::size_t yp) const override {
    return embeddings_.row(y).dot(embeddings_.row(yp));
  }

  long dim() const { return embeddings_.cols(); }
  const Eigen::MatrixXd& embeddings() const { return embeddings_; }

 private:
  Eigen::MatrixXd embeddings_;  // one row per hypothesis
  double u_max_;
};

EmbeddingUtility build_embedding_utility(std::size_t size, long dim,
                                         double u_max, std::uint64_t seed);

// Dense pairwise utility table with entries in [0, u_max].
class MatrixUtility final : public Utility {
 public:
  MatrixUtility(Eigen::MatrixXd values, double u_max);

  std::size_t size() const override {
    return static_cast<std::size_t>(values_.rows());
  }
  double u_max() const override { return u_max_; }
  double value(std::size_t y, std::size_t yp) const override {
    return values_(y, yp);
  }

  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
  double u_max_;
};

// u'(y,y') = (u(y,y') + u(y',y)) / 2.
MatrixUtility symmetrize(const MatrixUtility& model);

// Repairs a symmetric utility into a positive semidefinite one: alternates
// eigenvalue clamping with clipping to [0, u_max] until both hold; the result
// satisfies min eigenvalue >= -1e-9 and stays inside the value range.
MatrixUtility psd_project(const MatrixUtility& model);

// Random symmetric utility with unit diagonal where pairs of high-probability
// hypotheses get a boosted score: u(i,j) = clip(base(i,j) +
// beta*min(p_i,p_j)/max_k p_k, 0, 1), u(i,i) = 1.
MatrixUtility build_correlated_matrix_utility(const Categorical& human,
                                              double beta, std::uint64_t seed);

// Cost matrix C with zero diagonal dominating every utility difference:
// |u(y,y') - u(y,y'')| <= C(y',y'').
class LipschitzCost {
 public:
  explicit LipschitzCost(Eigen::MatrixXd values);

  std::size_t size() const {
    return static_cast<std::size_t>(values_.rows());
  }
  double operator()(std::size_t a, std::size_t b) const {
    return values_(a, b);
  }
  const Eigen::MatrixXd& values() const { return values_; }

  // Exhaustive check of the dominance inequality; O(size^3).
  bool dominates(const Utility& u, double tol = 1e-12) const;

 private:
  Eigen::MatrixXd values_;
};

enum class CostMode { trivial, tightened };

// trivial: u_max off the diagonal. tightened: exact max_y |u(y,a) - u(y,b)|,
// refused above `tightened_limit` because it is cubic in the space size.
LipschitzCost default_cost(const Utility& model, CostMode mode,
                           std::size_t tightened_limit = 1024);

// Proxy utility built from noisy copies of the base embeddings. alpha_err is
// the max over all pairs (y, y') of ||alpha(y) - alpha'(y')||; note the max
// runs over cross pairs, not matched ones, so it is nonzero even at zero
// noise whenever the base embeddings differ from each other.
class PerturbedUtility final : public Utility {
 public:
  PerturbedUtility(const EmbeddingUtility& base,
                   Eigen::MatrixXd perturbed_embeddings);

  std::size_t size() const override {
    return static_cast<std::size_t>(perturbed_.rows());
  }
  double u_max() const override { return u_max_; }
  double value(std::size_t y, std::size_t yp) const override {
    return perturbed_.row(y).dot(perturbed_.row(yp));
  }

  double alpha_err() const { return alpha_err_; }
  const Eigen::MatrixXd& perturbed_embeddings() const { return perturbed_; }

 private:
  Eigen::MatrixXd base_;
  Eigen::MatrixXd perturbed_;
  double u_max_;
  double alpha_err_;
};

PerturbedUtility perturb_embeddings(const EmbeddingUtility& base,
                                    double noise_scale, std::uint64_t seed);

// Dense plain-text matrix serialization (row-major, comma separated).
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in);
MatrixUtility read_matrix_utility_file(const std::string& path);
void write_matrix_file(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace mbrlab
