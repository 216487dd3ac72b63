#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbrlab/rng.hpp"
#include "mbrlab/transport.hpp"
#include "test_support.hpp"

using namespace mbrlab;

namespace {

Eigen::MatrixXd random_cost(std::size_t n, Rng& rng, bool zero_diag = true) {
  Eigen::MatrixXd c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = rng.uniform01();
  if (zero_diag) c.diagonal().setZero();
  return c;
}

std::vector<double> random_masses(std::size_t n, Rng& rng,
                                  std::size_t support) {
  std::vector<double> w(n, 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < support; ++k) {
    const std::size_t idx = rng.next() % n;
    w[idx] += rng.uniform01() + 0.05;
  }
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  double total = 0.0;
  for (double v : w) total += v;
  w[0] += 1.0 - total;
  return w;
}

void check_feasible(const TransportResult& r, double tol = 1e-9) {
  const auto& g = r.coupling.gamma;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    CHECK(std::abs(g.row(i).sum() - r.coupling.row_marginal[i]) <= tol);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    CHECK(std::abs(g.col(j).sum() - r.coupling.col_marginal[j]) <= tol);
  CHECK(g.minCoeff() >= 0.0);
}

}  // namespace

TEST_CASE("identical distributions have zero self-distance") {
  auto space = HypothesisSpace::indexed(12);
  Rng rng(6);
  const auto dist = testsup::random_dist(space, rng);
  LipschitzCost cost(random_cost(12, rng));
  const auto r = wasserstein(dist, dist, cost);
  CHECK(r.distance <= 1e-12);
  check_feasible(r);
}

TEST_CASE("two-point example with 0-1 cost recovers total variation") {
  auto space = HypothesisSpace::indexed(2);
  Categorical nu(space, {0.7, 0.3});
  Categorical mu(space, {0.4, 0.6});
  Eigen::MatrixXd c(2, 2);
  c << 0.0, 1.0, 1.0, 0.0;
  const auto r = wasserstein(nu, mu, LipschitzCost(c));
  CHECK(r.distance == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(wasserstein_bruteforce(nu, mu, LipschitzCost(c)) ==
        doctest::Approx(0.3).epsilon(1e-12));
  check_feasible(r);
}

TEST_CASE("power-of-two cost scaling scales the distance exactly") {
  auto space = HypothesisSpace::indexed(8);
  Rng rng(31);
  const auto nu = testsup::random_dist(space, rng);
  const auto mu = testsup::random_dist(space, rng);
  const Eigen::MatrixXd base = random_cost(8, rng);
  const double d1 = wasserstein(nu, mu, LipschitzCost(base)).distance;
  const double d2 = wasserstein(nu, mu, LipschitzCost(2.0 * base)).distance;
  const double dh = wasserstein(nu, mu, LipschitzCost(0.5 * base)).distance;
  CHECK(d2 == 2.0 * d1);
  CHECK(dh == 0.5 * d1);
  // General positive factors hold to rounding.
  const double d3 = wasserstein(nu, mu, LipschitzCost(3.0 * base)).distance;
  CHECK(d3 == doctest::Approx(3.0 * d1).epsilon(1e-12));
}

TEST_CASE("degenerate single-point cases") {
  auto space = HypothesisSpace::indexed(4);
  Categorical pa(space, {0.0, 1.0, 0.0, 0.0});
  Categorical pb(space, {0.0, 0.0, 0.0, 1.0});
  Rng rng(3);
  const Eigen::MatrixXd c = random_cost(4, rng);
  // Coinciding point masses.
  CHECK(wasserstein(pa, pa, LipschitzCost(c)).distance == 0.0);
  CHECK(wasserstein_bruteforce(pa, pa, LipschitzCost(c)) == 0.0);
  // Distinct point masses: everything moves along one arc.
  CHECK(wasserstein(pa, pb, LipschitzCost(c)).distance ==
        doctest::Approx(c(1, 3)).epsilon(1e-12));
  CHECK(wasserstein_bruteforce(pa, pb, LipschitzCost(c)) ==
        doctest::Approx(c(1, 3)).epsilon(1e-12));
}

TEST_CASE("distance under a trivial cost never exceeds its off-diagonal") {
  auto space = HypothesisSpace::indexed(10);
  Rng rng(17);
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(10, 10, 0.8);
  c.diagonal().setZero();
  for (int trial = 0; trial < 20; ++trial) {
    const auto nu = testsup::random_dist(space, rng);
    const auto mu = testsup::random_dist(space, rng);
    const auto r = wasserstein(nu, mu, LipschitzCost(c));
    CHECK(r.distance <= 0.8 + 1e-12);
    check_feasible(r);
  }
}

TEST_CASE("symmetric costs give symmetric distances") {
  auto space = HypothesisSpace::indexed(9);
  Rng rng(23);
  Eigen::MatrixXd c = random_cost(9, rng);
  c = 0.5 * (c + c.transpose()).eval();
  c.diagonal().setZero();
  for (int trial = 0; trial < 10; ++trial) {
    const auto nu = testsup::random_dist(space, rng);
    const auto mu = testsup::random_dist(space, rng);
    const double ab = wasserstein(nu, mu, LipschitzCost(c)).distance;
    const double ba = wasserstein(mu, nu, LipschitzCost(c)).distance;
    CHECK(std::abs(ab - ba) <= 1e-9);
  }
}

TEST_CASE("network solver matches the dense simplex oracle") {
  Rng rng(2025);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.next() % 4;  // space of 2..5 points
    const auto nu = random_masses(n, rng, 1 + rng.next() % n);
    const auto mu = random_masses(n, rng, 1 + rng.next() % n);
    const Eigen::MatrixXd c = random_cost(n, rng, trial % 2 == 0);
    const auto fast = wasserstein_raw(nu, mu, c);
    const double oracle = wasserstein_bruteforce_raw(nu, mu, c);
    CHECK(std::abs(fast.distance - oracle) <= 1e-9);
    check_feasible(fast);
    // The reported distance equals the coupling objective.
    double recomputed = 0.0;
    const auto& coupling = fast.coupling;
    for (Eigen::Index i = 0; i < coupling.gamma.rows(); ++i)
      for (Eigen::Index j = 0; j < coupling.gamma.cols(); ++j)
        recomputed += coupling.gamma(i, j) *
                      c(coupling.row_support[i], coupling.col_support[j]);
    CHECK(fast.distance == doctest::Approx(recomputed).epsilon(1e-9));
  }
}

TEST_CASE("oracle refuses large supports") {
  auto space = HypothesisSpace::indexed(9);
  Rng rng(40);
  const auto nu = testsup::random_dist(space, rng);
  const auto mu = testsup::random_dist(space, rng);
  CHECK_THROWS_AS(
      wasserstein_bruteforce(nu, mu, LipschitzCost(random_cost(9, rng))),
      InputError);
}

TEST_CASE("support trimming drops dust but keeps feasibility") {
  auto space = HypothesisSpace::indexed(5);
  std::vector<double> nu = {0.5, 1e-16, 0.5 - 1e-16, 0.0, 1e-16};
  double total = 0.0;
  for (double v : nu) total += v;
  nu[0] += 1.0 - total;
  std::vector<double> mu = {0.25, 0.25, 0.25, 0.25, 0.0};
  Rng rng(9);
  const auto r = wasserstein_raw(nu, mu, random_cost(5, rng));
  CHECK(r.stats.trimmed_mass < 1e-12);
  CHECK(r.stats.row_support == 2);
  check_feasible(r);
}

TEST_CASE("mismatched spaces are rejected") {
  Rng rng(3);
  Categorical nu(HypothesisSpace::indexed(3), {0.2, 0.3, 0.5});
  Categorical mu(HypothesisSpace::indexed(4), {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(wasserstein(nu, mu, LipschitzCost(random_cost(3, rng))),
                  InputError);
}

TEST_CASE("moderate supports stay exact against cross-checks") {
  // A 60-point instance solved twice: once directly, once with mass split
  // over duplicated cost structure; the optimum must agree with itself under
  // row/column permutation.
  Rng rng(88);
  const std::size_t n = 60;
  auto space = HypothesisSpace::indexed(n);
  const auto nu = testsup::random_dist(space, rng);
  const auto mu = testsup::random_dist(space, rng);
  const Eigen::MatrixXd c = random_cost(n, rng);
  const double base = wasserstein(nu, mu, LipschitzCost(c)).distance;

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = (i * 7 + 3) % n;
  std::vector<double> pnu(n), pmu(n);
  Eigen::MatrixXd pc(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    pnu[perm[i]] = nu[i];
    pmu[perm[i]] = mu[i];
    for (std::size_t j = 0; j < n; ++j) pc(perm[i], perm[j]) = c(i, j);
  }
  const double permuted = wasserstein_raw(pnu, pmu, pc).distance;
  CHECK(base == doctest::Approx(permuted).epsilon(1e-9));
}
