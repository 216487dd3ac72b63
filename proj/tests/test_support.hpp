#pragma once

// Shared test helpers. Oracles here are written as straight-line
// re-derivations, independent of the library code paths they check.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <vector>

#include "mbrlab/decode.hpp"
#include "mbrlab/hypothesis.hpp"
#include "mbrlab/rng.hpp"
#include "mbrlab/utility.hpp"

namespace testsup {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Cyclic Jacobi eigenvalues for a symmetric matrix — an eigensolver
// independent of Eigen's, for verifying PSD projections.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a,
                                              int sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-24) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-18) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (Eigen::Index i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

// Straight-line regret re-derivation from a trial's raw ingredients.
struct OracleRegrets {
  double regret_n = 0.0;
  double regret_map = 0.0;
};

inline OracleRegrets oracle_regrets(const mbrlab::Categorical& human,
                                    const mbrlab::Utility& u,
                                    const mbrlab::SampleSet& refs) {
  const std::size_t size = human.size();
  // Exact expected utilities under the truth.
  std::vector<double> uh(size, 0.0);
  for (std::size_t y = 0; y < size; ++y)
    for (std::size_t yp = 0; yp < size; ++yp)
      uh[y] += u.value(y, yp) * human[yp];
  std::size_t best = 0;
  for (std::size_t y = 1; y < size; ++y)
    if (uh[y] > uh[best]) best = y;

  // Monte Carlo decode over the sampled candidates.
  std::vector<long> counts(size, 0);
  for (auto idx : refs.indices) ++counts[idx];
  const double n = static_cast<double>(refs.indices.size());
  double best_mc_score = -1.0;
  std::size_t best_mc = 0;
  for (std::size_t y = 0; y < size; ++y) {
    if (counts[y] == 0) continue;
    double score = 0.0;
    for (auto idx : refs.indices) score += u.value(y, idx);
    score /= n;
    if (score > best_mc_score) {
      best_mc_score = score;
      best_mc = y;
    }
  }

  // Modes.
  std::size_t mode_h = 0;
  for (std::size_t y = 1; y < size; ++y)
    if (human[y] > human[mode_h]) mode_h = y;
  std::size_t mode_s = 0;
  for (std::size_t y = 1; y < size; ++y)
    if (counts[y] > counts[mode_s]) mode_s = y;

  OracleRegrets out;
  out.regret_n = uh[best] - uh[best_mc];
  out.regret_map = human[mode_h] - human[mode_s];
  return out;
}

// Random dense distribution over `size` points.
inline mbrlab::Categorical random_dist(mbrlab::SpacePtr space,
                                       mbrlab::Rng& rng) {
  std::vector<double> w(space->size);
  double sum = 0.0;
  for (auto& v : w) {
    v = rng.uniform01() + 1e-3;
    sum += v;
  }
  for (auto& v : w) v /= sum;
  // Exact renormalization within the constructor's tolerance.
  double total = 0.0;
  for (double v : w) total += v;
  w.back() += 1.0 - total;
  return mbrlab::Categorical(space, std::move(w));
}

// Random symmetric utility matrix with unit u_max.
inline mbrlab::MatrixUtility random_matrix_utility(std::size_t size,
                                                   mbrlab::Rng& rng) {
  Eigen::MatrixXd m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    m(i, i) = rng.uniform01();
    for (std::size_t j = i + 1; j < size; ++j) {
      m(i, j) = rng.uniform01();
      m(j, i) = m(i, j);
    }
  }
  return mbrlab::MatrixUtility(std::move(m), 1.0);
}

}  // namespace testsup
