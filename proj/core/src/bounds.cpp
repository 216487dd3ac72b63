#include "mbrlab/bounds.hpp"

#include <cmath>

#include "mbrlab/common.hpp"

namespace mbrlab {

namespace {

void check_delta(double delta) {
  require(delta > 0.0 && delta < 1.0, "delta must be in (0,1)");
}

void check_count(long value, const char* name) {
  require(value >= 1, std::string(name) + " must be >= 1");
}

double log_inv(double delta) { return std::log(1.0 / delta); }

// sqrt(log(1/delta)/n)
double root_term(long n, double delta) {
  return std::sqrt(log_inv(delta) / static_cast<double>(n));
}

// (36/n) * sqrt(d log d)
double complexity_term(long n, long dim) {
  const double d = static_cast<double>(dim);
  return 36.0 / static_cast<double>(n) * std::sqrt(d * std::log(d));
}

}  // namespace

BoundValue make_bound(std::vector<BoundTerm> terms) {
  BoundValue v;
  v.terms = std::move(terms);
  for (const auto& t : v.terms) v.total += t.value;
  return v;
}

BoundValue mc_error_embedding(long n, long dim, double delta) {
  check_count(n, "n");
  check_delta(delta);
  require(dim >= 4, "dim < 4: use mc_error_embedding_smalld");
  return make_bound({{"sampling", 3.0 * root_term(n, delta)},
                     {"complexity", complexity_term(n, dim)}});
}

BoundValue mc_error_embedding_smalld(long n, long dim, double delta) {
  check_count(n, "n");
  check_delta(delta);
  require(dim >= 1, "dim must be >= 1");
  require(dim < 4, "dim >= 4: use mc_error_embedding");
  const double d = static_cast<double>(dim);
  return make_bound(
      {{"sampling", 3.0 * root_term(n, delta)},
       {"complexity", 72.0 * std::sqrt(d) / static_cast<double>(n)}});
}

BoundValue mc_error_kernel(long n, double delta) {
  check_count(n, "n");
  check_delta(delta);
  return make_bound(
      {{"sampling", 3.0 * root_term(n, delta)},
       {"complexity", 2.0 / std::sqrt(static_cast<double>(n))}});
}

BoundValue model_mismatch(double wd_hm) {
  require(wd_hm >= 0.0, "wd must be nonnegative");
  return make_bound({{"mismatch", 2.0 * wd_hm}});
}

BoundValue empirical_model_error(long d_size, double delta) {
  check_count(d_size, "D");
  check_delta(delta);
  return make_bound({{"training", 3.0 * root_term(d_size, delta)}});
}

BoundValue mbr_bound_wd(long n, long dim, double delta, double wd_hm) {
  auto mc = mc_error_embedding(n, dim, delta);
  auto wd = model_mismatch(wd_hm);
  mc.terms.push_back(wd.terms.front());
  return make_bound(std::move(mc.terms));
}

BoundValue mbr_bound_nd(long n, long d_size, long dim, double delta) {
  check_count(n, "n");
  check_count(d_size, "D");
  check_delta(delta);
  require(dim >= 4, "dim must be >= 4");
  return make_bound({{"sampling", 4.0 * root_term(n, delta)},
                     {"training", 4.0 * root_term(d_size, delta)},
                     {"complexity", complexity_term(n, dim)}});
}

double expected_regret(double bound_value, double delta, double worst_case) {
  check_delta(delta);
  require(bound_value >= 0.0 && worst_case >= 0.0,
          "bound and worst case must be nonnegative");
  return (1.0 - delta) * bound_value + delta * worst_case;
}

double expected_regret_simplified(double bound_value, double delta) {
  check_delta(delta);
  require(bound_value >= 0.0, "bound must be nonnegative");
  return bound_value + delta;
}

BoundValue proxy_utility_bound(long n, long d_size, long dim, double delta,
                               double alpha_err) {
  check_count(n, "n");
  check_count(d_size, "D");
  check_delta(delta);
  require(dim >= 1, "dim must be >= 1");
  require(alpha_err >= 0.0, "alpha_err must be nonnegative");
  return make_bound(
      {{"training", 4.0 * root_term(d_size, delta)},
       {"sampling", 4.0 * root_term(n, delta)},
       {"proxy", 2.0 * static_cast<double>(dim) * alpha_err}});
}

BoundValue temperature_bound(long n, long d_size, long dim, double delta,
                             double wd_tt) {
  require(wd_tt >= 0.0, "wd must be nonnegative");
  auto base = mbr_bound_nd(n, d_size, dim, delta);
  base.terms.push_back({"tempering", wd_tt});
  return make_bound(std::move(base.terms));
}

BoundValue map_bound_wd(long n, double delta, double wd_hm) {
  check_count(n, "n");
  check_delta(delta);
  auto wd = model_mismatch(wd_hm);
  return make_bound(
      {{"sampling", 6.0 * root_term(n, delta)}, wd.terms.front()});
}

BoundValue map_bound_nd(long n, long d_size, double delta) {
  check_count(n, "n");
  check_count(d_size, "D");
  check_delta(delta);
  return make_bound({{"sampling", 8.0 * root_term(n, delta)},
                     {"training", 8.0 * root_term(d_size, delta)}});
}

bool crossover_fixed_model(long n, long dim, double delta) {
  check_count(n, "n");
  check_count(dim, "dim");
  check_delta(delta);
  const double d = static_cast<double>(dim);
  const double lhs =
      std::sqrt(static_cast<double>(n) * log_inv(delta)) / 9.0;
  return lhs >= std::sqrt(d * std::log(d));
}

bool crossover_finite(long n, long d_size, long dim, double delta) {
  check_count(n, "n");
  check_count(d_size, "D");
  check_count(dim, "dim");
  check_delta(delta);
  const double d = static_cast<double>(dim);
  const double lhs = static_cast<double>(n) / 9.0 *
                     (root_term(n, delta) + root_term(d_size, delta));
  return lhs >= std::sqrt(d * std::log(d));
}

long crossover_fixed_model_threshold(long dim, double delta) {
  check_count(dim, "dim");
  check_delta(delta);
  const double d = static_cast<double>(dim);
  const double exact = 81.0 * d * std::log(d) / log_inv(delta);
  return static_cast<long>(std::ceil(exact));
}

namespace raw {

BoundValue mc_error_embedding(long n, long dim, double delta, double u_max) {
  check_count(n, "n");
  check_delta(delta);
  require(u_max > 0.0 && u_max <= 1.0, "u_max must lie in (0, 1]");
  const double d = static_cast<double>(dim);
  const double nn = static_cast<double>(n);
  return make_bound(
      {{"sampling",
        2.0 * u_max * std::sqrt(std::log(4.0 / delta) / (2.0 * nn))},
       {"complexity",
        12.0 * u_max / nn *
            (std::sqrt(d * std::log(2.0 * std::sqrt(d))) +
             2.0 * std::sqrt(d))}});
}

BoundValue identical_distributions(long n, long dim, double delta,
                                   double u_max) {
  check_count(n, "n");
  check_delta(delta);
  const double d = static_cast<double>(dim);
  const double nn = static_cast<double>(n);
  return make_bound(
      {{"sampling",
        2.0 * u_max * std::sqrt(std::log(8.0 / delta) / (2.0 * nn))},
       {"complexity",
        12.0 * u_max / nn *
            (std::sqrt(d * std::log(2.0 * std::sqrt(d))) +
             2.0 * std::sqrt(d))}});
}

BoundValue empirical_model_error(long d_size, double delta, double u_max) {
  check_count(d_size, "D");
  check_delta(delta);
  return make_bound(
      {{"training", 2.0 * u_max * std::sqrt(std::log(4.0 / delta) /
                                            (2.0 * static_cast<double>(d_size)))}});
}

BoundValue mbr_bound_nd(long n, long d_size, long dim, double delta,
                        double u_max) {
  auto mc = identical_distributions(n, dim, delta, u_max);
  const double dd = static_cast<double>(d_size);
  mc.terms.push_back(
      {"training",
       2.0 * u_max * std::sqrt(std::log(8.0 / delta) / (2.0 * dd))});
  return make_bound(std::move(mc.terms));
}

BoundValue map_bound_nd(long n, long d_size, double delta) {
  check_count(n, "n");
  check_count(d_size, "D");
  check_delta(delta);
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d_size);
  return make_bound(
      {{"sampling", 4.0 * std::sqrt(std::log(8.0 / delta) / (2.0 * nn))},
       {"training", 4.0 * std::sqrt(std::log(8.0 / delta) / (2.0 * dd))}});
}

}  // namespace raw

BoundReport evaluate_bounds(const BoundInputs& in, bool include_raw) {
  check_count(in.n, "n");
  check_delta(in.delta);
  BoundReport report;
  auto add = [&report](const std::string& name, BoundValue v) {
    report.values.emplace_back(name, std::move(v));
  };
  auto skip = [&report](const std::string& name, const std::string& missing) {
    report.skipped.emplace_back(name, missing);
  };

  if (in.dim >= 4)
    add("mc_error_embedding", mc_error_embedding(in.n, in.dim, in.delta));
  else
    add("mc_error_embedding_smalld",
        mc_error_embedding_smalld(in.n, in.dim, in.delta));
  add("mc_error_kernel", mc_error_kernel(in.n, in.delta));

  if (in.wd_hm) {
    add("model_mismatch", model_mismatch(*in.wd_hm));
    if (in.dim >= 4) {
      auto b3 = mbr_bound_wd(in.n, in.dim, in.delta, *in.wd_hm);
      add("expected_regret_mbr_wd",
          make_bound({{"expected",
                       expected_regret_simplified(b3.total, in.delta)}}));
      add("mbr_bound_wd", std::move(b3));
    }
    add("map_bound_wd", map_bound_wd(in.n, in.delta, *in.wd_hm));
  } else {
    skip("model_mismatch", "wd");
    skip("mbr_bound_wd", "wd");
    skip("map_bound_wd", "wd");
  }

  if (in.d_size) {
    add("empirical_model_error", empirical_model_error(*in.d_size, in.delta));
    if (in.dim >= 4) {
      auto b = mbr_bound_nd(in.n, *in.d_size, in.dim, in.delta);
      add("expected_regret_mbr_nd",
          make_bound({{"expected",
                       expected_regret_simplified(b.total, in.delta)}}));
      add("mbr_bound_nd", std::move(b));
    }
    add("map_bound_nd", map_bound_nd(in.n, *in.d_size, in.delta));
    if (in.alpha_err && in.dim >= 1)
      add("proxy_utility_bound",
          proxy_utility_bound(in.n, *in.d_size, in.dim, in.delta,
                              *in.alpha_err));
    else
      skip("proxy_utility_bound", "alpha_err");
    if (in.wd_tt && in.dim >= 4)
      add("temperature_bound",
          temperature_bound(in.n, *in.d_size, in.dim, in.delta, *in.wd_tt));
    else
      skip("temperature_bound", "wd_t");
  } else {
    skip("empirical_model_error", "D");
    skip("mbr_bound_nd", "D");
    skip("map_bound_nd", "D");
    skip("proxy_utility_bound", "D");
    skip("temperature_bound", "D");
  }

  if (include_raw) {
    add("raw_mc_error_embedding",
        raw::mc_error_embedding(in.n, in.dim, in.delta, in.u_max));
    add("raw_identical_distributions",
        raw::identical_distributions(in.n, in.dim, in.delta, in.u_max));
    if (in.d_size) {
      add("raw_empirical_model_error",
          raw::empirical_model_error(*in.d_size, in.delta, in.u_max));
      add("raw_mbr_bound_nd",
          raw::mbr_bound_nd(in.n, *in.d_size, in.dim, in.delta, in.u_max));
      add("raw_map_bound_nd", raw::map_bound_nd(in.n, *in.d_size, in.delta));
    }
  }
  return report;
}

}  // namespace mbrlab
