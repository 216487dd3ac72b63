#include "mbrlab/utility.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "mbrlab/csv.hpp"
#include "mbrlab/rng.hpp"

namespace mbrlab {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* what) {
  require(m.rows() >= 1 && m.rows() == m.cols(),
          std::string(what) + " must be a nonempty square matrix");
}

}  // namespace

EmbeddingUtility::EmbeddingUtility(Eigen::MatrixXd embeddings, double u_max)
    : embeddings_(std::move(embeddings)), u_max_(u_max) {
  require(embeddings_.rows() >= 1, "utility needs at least one hypothesis");
  require(embeddings_.cols() >= 1, "embedding dimension must be >= 1");
  require(u_max_ > 0.0 && u_max_ <= 1.0, "u_max must lie in (0, 1]");
  require(embeddings_.minCoeff() >= 0.0,
          "embedding coordinates must be nonnegative");
  const double max_norm = embeddings_.rowwise().norm().maxCoeff();
  require(std::abs(max_norm - u_max_) <= 1e-9,
          "max embedding norm must equal u_max");
}

EmbeddingUtility build_embedding_utility(std::size_t size, long dim,
                                         double u_max, std::uint64_t seed) {
  require(size >= 1, "utility needs at least one hypothesis");
  require(dim >= 1, "embedding dimension must be >= 1");
  require(u_max > 0.0 && u_max <= 1.0, "u_max must lie in (0, 1]");
  Rng rng(mix_seed({seed, 0x656d6264ULL}));
  Eigen::MatrixXd emb(size, dim);
  for (Eigen::Index r = 0; r < emb.rows(); ++r)
    for (Eigen::Index c = 0; c < emb.cols(); ++c)
      emb(r, c) = rng.uniform01();
  // Nonnegative coordinates keep every inner product >= 0; rescaling pins the
  // largest norm at u_max so products stay <= u_max^2 <= u_max.
  double max_norm = emb.rowwise().norm().maxCoeff();
  if (max_norm == 0.0) {
    emb(0, 0) = 1.0;
    max_norm = 1.0;
  }
  emb *= u_max / max_norm;
  return EmbeddingUtility(std::move(emb), u_max);
}

MatrixUtility::MatrixUtility(Eigen::MatrixXd values, double u_max)
    : values_(std::move(values)), u_max_(u_max) {
  require_square(values_, "utility matrix");
  require(u_max_ > 0.0, "u_max must be positive");
  require(values_.minCoeff() >= 0.0 && values_.maxCoeff() <= u_max_ + 1e-12,
          "utility values must lie in [0, u_max]");
}

MatrixUtility symmetrize(const MatrixUtility& model) {
  const Eigen::MatrixXd& v = model.values();
  Eigen::MatrixXd sym = 0.5 * (v + v.transpose());
  return MatrixUtility(std::move(sym), model.u_max());
}

MatrixUtility psd_project(const MatrixUtility& model) {
  const Eigen::MatrixXd& input = model.values();
  require((input - input.transpose()).cwiseAbs().maxCoeff() <= 1e-9,
          "symmetrize first");
  const double u_max = model.u_max();
  const double eig_tol = 1e-10;

  Eigen::MatrixXd m = 0.5 * (input + input.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for (int iter = 0; iter < 2000; ++iter) {
    eig.compute(m);
    const bool psd_ok = eig.eigenvalues().minCoeff() >= -eig_tol;
    const bool box_ok =
        m.minCoeff() >= -1e-13 && m.maxCoeff() <= u_max + 1e-13;
    if (psd_ok && box_ok) {
      // The final clip moves entries by at most 1e-13 each, which perturbs
      // eigenvalues by well under the advertised -1e-9.
      Eigen::MatrixXd out =
          m.cwiseMax(0.0).cwiseMin(u_max);
      return MatrixUtility(std::move(out), u_max);
    }
    Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
    m = eig.eigenvectors() * clamped.asDiagonal() *
        eig.eigenvectors().transpose();
    m = 0.5 * (m + m.transpose()).eval();
    m = m.cwiseMax(0.0).cwiseMin(u_max);
  }
  throw std::runtime_error("psd projection did not converge");
}

MatrixUtility build_correlated_matrix_utility(const Categorical& human,
                                              double beta,
                                              std::uint64_t seed) {
  require(beta >= 0.0, "beta must be nonnegative");
  const std::size_t n = human.size();
  const double p_max =
      *std::max_element(human.probs().begin(), human.probs().end());
  Rng rng(mix_seed({seed, 0x6d747578ULL}));
  Eigen::MatrixXd u(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    u(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double boost =
          beta * std::min(human[i], human[j]) / p_max;
      const double v = std::min(1.0, std::max(0.0, rng.uniform01() + boost));
      u(i, j) = v;
      u(j, i) = v;
    }
  }
  return MatrixUtility(std::move(u), 1.0);
}

LipschitzCost::LipschitzCost(Eigen::MatrixXd values)
    : values_(std::move(values)) {
  require_square(values_, "cost matrix");
  require(values_.minCoeff() >= 0.0, "cost entries must be nonnegative");
  require(values_.diagonal().cwiseAbs().maxCoeff() == 0.0,
          "cost diagonal must be zero");
}

bool LipschitzCost::dominates(const Utility& u, double tol) const {
  const std::size_t n = size();
  if (u.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double worst = 0.0;
      for (std::size_t y = 0; y < n; ++y)
        worst = std::max(worst, std::abs(u.value(y, a) - u.value(y, b)));
      if (worst > values_(a, b) + tol) return false;
    }
  return true;
}

LipschitzCost default_cost(const Utility& model, CostMode mode,
                           std::size_t tightened_limit) {
  const std::size_t n = model.size();
  if (mode == CostMode::trivial) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(n, n, model.u_max());
    c.diagonal().setZero();
    return LipschitzCost(std::move(c));
  }
  require(n <= tightened_limit, "cost matrix too large");
  // Materialize the utility table once; the pair scan below is cubic.
  Eigen::MatrixXd table(n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t yp = 0; yp < n; ++yp) table(y, yp) = model.value(y, yp);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double worst =
          (table.col(a) - table.col(b)).cwiseAbs().maxCoeff();
      c(a, b) = worst;
      c(b, a) = worst;
    }
  return LipschitzCost(std::move(c));
}

PerturbedUtility::PerturbedUtility(const EmbeddingUtility& base,
                                   Eigen::MatrixXd perturbed_embeddings)
    : base_(base.embeddings()),
      perturbed_(std::move(perturbed_embeddings)),
      u_max_(base.u_max()) {
  require(perturbed_.rows() == base_.rows() &&
              perturbed_.cols() == base_.cols(),
          "perturbed embeddings must match the base shape");
  require(perturbed_.minCoeff() >= 0.0,
          "perturbed embedding coordinates must be nonnegative");
  require(perturbed_.rowwise().norm().maxCoeff() <= u_max_ + 1e-9,
          "perturbed embedding norms must stay within u_max");
  // alpha_err maximizes over all cross pairs, exactly as defined.
  double worst = 0.0;
  for (Eigen::Index y = 0; y < base_.rows(); ++y)
    for (Eigen::Index yp = 0; yp < base_.rows(); ++yp)
      worst = std::max(worst,
                       (base_.row(y) - perturbed_.row(yp)).norm());
  alpha_err_ = worst;
}

PerturbedUtility perturb_embeddings(const EmbeddingUtility& base,
                                    double noise_scale, std::uint64_t seed) {
  require(noise_scale >= 0.0, "noise scale must be nonnegative");
  Rng rng(mix_seed({seed, 0x70657274ULL}));
  Eigen::MatrixXd noisy = base.embeddings();
  for (Eigen::Index r = 0; r < noisy.rows(); ++r)
    for (Eigen::Index c = 0; c < noisy.cols(); ++c)
      noisy(r, c) =
          std::max(0.0, noisy(r, c) + noise_scale * rng.normal());
  // Only rows pushed past u_max are rescaled; zero noise is a no-op.
  for (Eigen::Index r = 0; r < noisy.rows(); ++r) {
    const double norm = noisy.row(r).norm();
    if (norm > base.u_max()) noisy.row(r) *= base.u_max() / norm;
  }
  return PerturbedUtility(base, std::move(noisy));
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, line_no));
    if (!rows.empty())
      require(row.size() == rows.front().size(),
              "line " + std::to_string(line_no) + ": ragged matrix row");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "matrix file has no rows");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

MatrixUtility read_matrix_utility_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open utility file: " + path);
  try {
    Eigen::MatrixXd m = read_matrix(in);
    const double top = m.maxCoeff();
    return MatrixUtility(std::move(m), std::max(top, 1e-12));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_matrix_file(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  require(out.good(), "cannot open output file: " + path);
  write_matrix(out, m);
}

}  // namespace mbrlab
