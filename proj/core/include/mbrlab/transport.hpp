#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "mbrlab/hypothesis.hpp"
#include "mbrlab/utility.hpp"

namespace mbrlab {

// Joint distribution over the two supports whose marginals recover the
// inputs (after support trimming, to 1e-9).
struct Coupling {
  std::vector<std::size_t> row_support;  // original indices of nu's support
  std::vector<std::size_t> col_support;  // original indices of mu's support
  Eigen::MatrixXd gamma;                 // row_support x col_support
  std::vector<double> row_marginal;      // trimmed nu restricted to support
  std::vector<double> col_marginal;      // trimmed mu restricted to support
};

struct SolverStats {
  std::size_t iterations = 0;
  std::size_t row_support = 0;
  std::size_t col_support = 0;
  double trimmed_mass = 0.0;
};

struct TransportResult {
  double distance = 0.0;
  Coupling coupling;
  SolverStats stats;
};

// Exact optimal-transport distance between two distributions on the same
// space under a nonnegative cost, solved by a transportation (network)
// simplex on the support bipartite graph. Support entries below 1e-15 are
// dropped and their mass redistributed proportionally.
TransportResult wasserstein(const Categorical& nu, const Categorical& mu,
                            const LipschitzCost& cost);

// Same on a raw cost matrix restricted to index pairs (used internally and
// by tests that build couplings without a full space-sized cost).
TransportResult wasserstein_raw(const std::vector<double>& nu,
                                const std::vector<double>& mu,
                                const Eigen::MatrixXd& cost);

// Test oracle: the same LP solved by a dense two-phase tableau simplex with
// Bland's rule — a completely separate code path from the network solver.
// Supports of more than 6 points are refused.
double wasserstein_bruteforce(const Categorical& nu, const Categorical& mu,
                              const LipschitzCost& cost);
double wasserstein_bruteforce_raw(const std::vector<double>& nu,
                                  const std::vector<double>& mu,
                                  const Eigen::MatrixXd& cost);

}  // namespace mbrlab
