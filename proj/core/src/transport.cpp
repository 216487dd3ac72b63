#include "mbrlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mbrlab {

namespace {

constexpr double kSupportTrim = 1e-15;
constexpr double kPivotTol = 1e-12;
constexpr double kFlowSnap = 1e-15;

struct Support {
  std::vector<std::size_t> indices;
  std::vector<double> mass;
  double trimmed = 0.0;
};

Support trim_support(const std::vector<double>& probs) {
  Support s;
  double kept = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] >= kSupportTrim) {
      s.indices.push_back(i);
      s.mass.push_back(probs[i]);
      kept += probs[i];
    } else {
      s.trimmed += probs[i];
    }
  }
  require(!s.indices.empty(), "distribution has empty support");
  // Redistribute the trimmed dust proportionally over the kept support.
  for (double& m : s.mass) m /= kept;
  return s;
}

// Transportation simplex over the bipartite support graph. Nodes 0..m-1 are
// rows (supplies), m..m+n-1 are columns (demands); the basis is a spanning
// tree of m+n-1 cells.
class TransportSimplex {
 public:
  TransportSimplex(std::vector<double> supply, std::vector<double> demand,
                   const Eigen::MatrixXd& cost)
      : a_(std::move(supply)),
        b_(std::move(demand)),
        cost_(cost),
        m_(a_.size()),
        n_(b_.size()),
        nodes_(m_ + n_) {}

  void solve() {
    build_initial_basis();
    rebuild_tree();
    const std::size_t cells = m_ * n_;
    const std::size_t max_pivots = 400 * (m_ + n_) + 40000;
    std::size_t scan_from = 0;
    while (true) {
      // Block pricing: take the most negative reduced cost in the first
      // block (from the rolling offset) that contains any negative cell.
      constexpr std::size_t kBlock = 8192;
      std::size_t scanned = 0;
      long best_cell = -1;
      double best_red = -kPivotTol;
      while (scanned < cells) {
        const std::size_t stop =
            std::min(scanned + kBlock, cells);
        for (; scanned < stop; ++scanned) {
          const std::size_t cell = (scan_from + scanned) % cells;
          const std::size_t r = cell / n_;
          const std::size_t c = cell % n_;
          const double red = cost_(r, c) - u_[r] - v_[m_ + c];
          if (red < best_red) {
            best_red = red;
            best_cell = static_cast<long>(cell);
          }
        }
        if (best_cell >= 0) break;
      }
      if (best_cell < 0) break;  // optimal
      scan_from = (static_cast<std::size_t>(best_cell) + 1) % cells;
      pivot(static_cast<std::size_t>(best_cell) / n_,
            static_cast<std::size_t>(best_cell) % n_);
      if (++iterations_ > max_pivots)
        throw std::runtime_error("transport solver exceeded pivot budget");
    }
  }

  std::size_t iterations() const { return iterations_; }

  Eigen::MatrixXd flows() const {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m_, n_);
    for (const auto& e : edges_)
      if (e.alive) g(e.row, e.col - m_) = std::max(0.0, e.flow);
    return g;
  }

 private:
  struct Edge {
    std::size_t row;  // node id < m_
    std::size_t col;  // node id >= m_
    double flow = 0.0;
    bool alive = false;
  };

  void add_edge(std::size_t row, std::size_t col_node, double flow) {
    edges_.push_back({row, col_node, flow, true});
  }

  // Row-sequential least-cost start, then spanning-tree completion with
  // zero-flow cells.
  void build_initial_basis() {
    std::vector<double> ra = a_, rb = b_;
    std::vector<std::size_t> order(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (ra[i] <= 0.0) continue;
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return cost_(i, x) < cost_(i, y);
      });
      for (std::size_t c : order) {
        if (ra[i] <= 0.0) break;
        if (rb[c] <= 0.0) continue;
        const double t = std::min(ra[i], rb[c]);
        add_edge(i, m_ + c, t);
        ra[i] -= t;
        rb[c] -= t;
        if (ra[i] < kFlowSnap) ra[i] = 0.0;
        if (rb[c] < kFlowSnap) rb[c] = 0.0;
      }
    }
    // Union-find completion to a spanning tree (zero-flow basics).
    std::vector<std::size_t> parent(nodes_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    std::size_t components = nodes_;
    for (const auto& e : edges_) {
      const auto fr = find(e.row), fc = find(e.col);
      if (fr != fc) {
        parent[fr] = fc;
        --components;
      }
    }
    for (std::size_t i = 0; i < m_ && components > 1; ++i)
      for (std::size_t c = 0; c < n_ && components > 1; ++c) {
        const auto fr = find(i), fc = find(m_ + c);
        if (fr != fc) {
          add_edge(i, m_ + c, 0.0);
          parent[fr] = fc;
          --components;
        }
      }
    // Keep exactly the tree edges: drop surplus is impossible by
    // construction (each allocation zeroes a side), assert instead.
    if (edges_.size() != nodes_ - 1)
      throw std::runtime_error("transport basis is not a spanning tree");
  }

  // Recomputes parent pointers, depths and potentials from node 0.
  void rebuild_tree() {
    adj_.assign(nodes_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!edges_[e].alive) continue;
      adj_[edges_[e].row].push_back(e);
      adj_[edges_[e].col].push_back(e);
    }
    parent_.assign(nodes_, SIZE_MAX);
    parent_edge_.assign(nodes_, SIZE_MAX);
    u_.assign(nodes_, 0.0);
    v_.assign(nodes_, 0.0);
    std::vector<std::size_t> stack{0};
    std::vector<char> seen(nodes_, 0);
    seen[0] = 1;
    u_[0] = 0.0;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t e : adj_[x]) {
        const auto& edge = edges_[e];
        const std::size_t y = (edge.row == x) ? edge.col : edge.row;
        if (seen[y]) continue;
        seen[y] = 1;
        parent_[y] = x;
        parent_edge_[y] = e;
        // u[row] + v[col] = cost on basic cells.
        const double c = cost_(edge.row, edge.col - m_);
        if (y >= m_)
          v_[y] = c - u_[x];
        else
          u_[y] = c - v_[x];
        stack.push_back(y);
      }
    }
    for (std::size_t x = 0; x < nodes_; ++x)
      if (!seen[x])
        throw std::runtime_error("transport basis tree is disconnected");
  }

  void pivot(std::size_t row, std::size_t col) {
    const std::size_t i = row;
    const std::size_t j = m_ + col;
    // Paths to the least common ancestor.
    std::vector<char> on_path(nodes_, 0);
    for (std::size_t x = i; x != SIZE_MAX; x = parent_[x]) on_path[x] = 1;
    std::size_t lca = j;
    while (!on_path[lca]) lca = parent_[lca];

    // Minus edges alternate starting at the first edge out of each endpoint.
    std::vector<std::size_t> cycle_edges;
    std::vector<int> signs;
    int sign = -1;
    for (std::size_t x = i; x != lca; x = parent_[x]) {
      cycle_edges.push_back(parent_edge_[x]);
      signs.push_back(sign);
      sign = -sign;
    }
    sign = -1;
    for (std::size_t x = j; x != lca; x = parent_[x]) {
      cycle_edges.push_back(parent_edge_[x]);
      signs.push_back(sign);
      sign = -sign;
    }

    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = SIZE_MAX;
    for (std::size_t k = 0; k < cycle_edges.size(); ++k) {
      if (signs[k] < 0 && edges_[cycle_edges[k]].flow < theta) {
        theta = edges_[cycle_edges[k]].flow;
        leaving = cycle_edges[k];
      }
    }
    if (leaving == SIZE_MAX)
      throw std::runtime_error("transport pivot found no leaving edge");

    for (std::size_t k = 0; k < cycle_edges.size(); ++k) {
      auto& e = edges_[cycle_edges[k]];
      e.flow += signs[k] * theta;
      if (e.flow < kFlowSnap) e.flow = 0.0;
    }
    // Replace the leaving edge with the entering one in place.
    edges_[leaving] = {i, j, theta, true};
    rebuild_tree();
  }

  std::vector<double> a_, b_;
  const Eigen::MatrixXd& cost_;
  std::size_t m_, n_, nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> parent_, parent_edge_;
  std::vector<double> u_, v_;
  std::size_t iterations_ = 0;
};

double coupling_objective(const Eigen::MatrixXd& gamma,
                          const Eigen::MatrixXd& cost) {
  double sum = 0.0, carry = 0.0;
  for (Eigen::Index r = 0; r < gamma.rows(); ++r)
    for (Eigen::Index c = 0; c < gamma.cols(); ++c) {
      const double term = gamma(r, c) * cost(r, c);
      double y = term - carry;
      double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
  return sum;
}

}  // namespace

TransportResult wasserstein_raw(const std::vector<double>& nu,
                                const std::vector<double>& mu,
                                const Eigen::MatrixXd& cost) {
  require(cost.minCoeff() >= 0.0, "cost must be nonnegative");
  const Support snu = trim_support(nu);
  const Support smu = trim_support(mu);
  const std::size_t m = snu.indices.size();
  const std::size_t n = smu.indices.size();
  Eigen::MatrixXd sub(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      sub(r, c) = cost(snu.indices[r], smu.indices[c]);

  TransportSimplex solver(snu.mass, smu.mass, sub);
  solver.solve();

  TransportResult result;
  result.coupling.row_support = snu.indices;
  result.coupling.col_support = smu.indices;
  result.coupling.gamma = solver.flows();
  result.coupling.row_marginal = snu.mass;
  result.coupling.col_marginal = smu.mass;
  result.stats.iterations = solver.iterations();
  result.stats.row_support = m;
  result.stats.col_support = n;
  result.stats.trimmed_mass = snu.trimmed + smu.trimmed;
  result.distance = coupling_objective(result.coupling.gamma, sub);
  return result;
}

TransportResult wasserstein(const Categorical& nu, const Categorical& mu,
                            const LipschitzCost& cost) {
  require(compatible(nu.space(), mu.space()),
          "distributions live on different spaces");
  require(cost.size() == nu.size(),
          "cost matrix does not match the hypothesis space");
  return wasserstein_raw(nu.probs(), mu.probs(), cost.values());
}

namespace {

// Dense two-phase tableau simplex with Bland's rule; used as the
// brute-force oracle on tiny supports.
class DenseSimplex {
 public:
  // minimize c'x st Ax = b, x >= 0; b >= 0 expected.
  DenseSimplex(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  double solve() {
    const Eigen::Index rows = a_.rows();
    const Eigen::Index cols = a_.cols();
    // Tableau with artificial variables appended.
    t_.resize(rows, cols + rows + 1);
    t_.leftCols(cols) = a_;
    t_.middleCols(cols, rows) = Eigen::MatrixXd::Identity(rows, rows);
    t_.col(cols + rows) = b_;
    basis_.resize(rows);
    for (Eigen::Index r = 0; r < rows; ++r) basis_[r] = cols + r;

    // Phase 1: drive artificials to zero.
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols + rows);
    phase1.tail(rows).setOnes();
    run(phase1, cols + rows);
    // Residual infeasibility means inconsistent marginals.
    double infeas = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r)
      if (basis_[r] >= cols) infeas += t_(r, cols + rows);
    if (infeas > 1e-9)
      throw std::runtime_error("transport oracle: infeasible marginals");

    // Phase 2: original objective, artificials barred from entering.
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols + rows);
    phase2.head(cols) = c_;
    run(phase2, cols);

    double obj = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r)
      if (basis_[r] < cols) obj += c_[basis_[r]] * t_(r, cols + rows);
    return obj;
  }

 private:
  void run(const Eigen::VectorXd& cost, Eigen::Index enter_limit) {
    const Eigen::Index rows = t_.rows();
    const Eigen::Index width = t_.cols() - 1;
    for (int guard = 0; guard < 100000; ++guard) {
      // Reduced costs: r_j = c_j - c_B' B^-1 A_j; with the tableau kept in
      // canonical form this is c_j - sum_r c_basis[r] * t(r, j).
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < enter_limit; ++j) {
        double red = cost[j];
        for (Eigen::Index r = 0; r < rows; ++r) red -= cost[basis_[r]] * t_(r, j);
        if (red < -1e-11) {
          entering = j;  // Bland: first eligible index
          break;
        }
      }
      if (entering < 0) return;
      Eigen::Index leaving = -1;
      double best_ratio = 0.0;
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (t_(r, entering) > 1e-11) {
          const double ratio = t_(r, width) / t_(r, entering);
          if (leaving < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 &&
               basis_[r] < basis_[leaving])) {
            leaving = r;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0)
        throw std::runtime_error("transport oracle: unbounded LP");
      // Pivot.
      t_.row(leaving) /= t_(leaving, entering);
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (r == leaving) continue;
        const double f = t_(r, entering);
        if (f != 0.0) t_.row(r) -= f * t_.row(leaving);
      }
      basis_[leaving] = entering;
    }
    throw std::runtime_error("transport oracle: pivot budget exceeded");
  }

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_, c_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

double wasserstein_bruteforce_raw(const std::vector<double>& nu,
                                  const std::vector<double>& mu,
                                  const Eigen::MatrixXd& cost) {
  const Support snu = trim_support(nu);
  const Support smu = trim_support(mu);
  const std::size_t m = snu.indices.size();
  const std::size_t n = smu.indices.size();
  require(m <= 6 && n <= 6, "brute-force oracle limited to supports of 6");

  const std::size_t vars = m * n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + n, vars);
  Eigen::VectorXd b(m + n);
  Eigen::VectorXd c(vars);
  for (std::size_t r = 0; r < m; ++r) b[r] = snu.mass[r];
  for (std::size_t cc = 0; cc < n; ++cc) b[m + cc] = smu.mass[cc];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t cc = 0; cc < n; ++cc) {
      const std::size_t k = r * n + cc;
      a(r, k) = 1.0;
      a(m + cc, k) = 1.0;
      c[k] = cost(snu.indices[r], smu.indices[cc]);
    }
  DenseSimplex lp(std::move(a), std::move(b), std::move(c));
  return lp.solve();
}

double wasserstein_bruteforce(const Categorical& nu, const Categorical& mu,
                              const LipschitzCost& cost) {
  require(compatible(nu.space(), mu.space()),
          "distributions live on different spaces");
  return wasserstein_bruteforce_raw(nu.probs(), mu.probs(), cost.values());
}

}  // namespace mbrlab
