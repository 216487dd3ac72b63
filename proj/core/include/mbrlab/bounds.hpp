#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mbrlab {

struct BoundTerm {
  std::string label;
  double value = 0.0;
};

// A bound value together with its additive decomposition; `total` is the
// plain sum of the terms.
struct BoundValue {
  double total = 0.0;
  std::vector<BoundTerm> terms;
};

BoundValue make_bound(std::vector<BoundTerm> terms);

// High-probability bound on the Monte Carlo estimation error of the expected
// utility, inner-product utilities, embedding dimension >= 4:
//   3*sqrt(log(1/delta)/n) + (36/n)*sqrt(d*log d).
BoundValue mc_error_embedding(long n, long dim, double delta);

// Same quantity for embedding dimension < 4:
//   3*sqrt(log(1/delta)/n) + 72*sqrt(d)/n.
BoundValue mc_error_embedding_smalld(long n, long dim, double delta);

// Same quantity for positive-definite-kernel utilities:
//   3*sqrt(log(1/delta)/n) + 2/sqrt(n).
BoundValue mc_error_kernel(long n, double delta);

// Model-mismatch contribution: 2 * WD(true, model).
BoundValue model_mismatch(double wd_hm);

// Error of an empirical model distribution built from |D| training draws:
//   3*sqrt(log(1/delta)/|D|).
BoundValue empirical_model_error(long d_size, double delta);

// MBR regret bound with an explicit model-mismatch term:
//   mc_error_embedding + 2*WD.
BoundValue mbr_bound_wd(long n, long dim, double delta, double wd_hm);

// MBR regret bound under an empirical model of |D| training draws:
//   4*sqrt(log(1/delta)/n) + 4*sqrt(log(1/delta)/|D|) + (36/n)*sqrt(d*log d).
BoundValue mbr_bound_nd(long n, long d_size, long dim, double delta);

// Converts a high-probability bound into an expected-regret bound:
//   (1-delta)*bound + delta*worst_case.
double expected_regret(double bound_value, double delta, double worst_case);

// Coarser form with worst case 1 absorbed: bound + delta.
double expected_regret_simplified(double bound_value, double delta);

// MBR regret bound when only a proxy utility is available:
//   4*sqrt(log(1/delta)/|D|) + 4*sqrt(log(1/delta)/n) + 2*d*alpha_err.
BoundValue proxy_utility_bound(long n, long d_size, long dim, double delta,
                               double alpha_err);

// MBR regret bound when references are drawn at a sampling temperature:
//   mbr_bound_nd + WD(model, tempered model).
BoundValue temperature_bound(long n, long d_size, long dim, double delta,
                             double wd_tt);

// MAP regret bound with a model-mismatch term:
//   6*sqrt(log(1/delta)/n) + 2*WD.
BoundValue map_bound_wd(long n, double delta, double wd_hm);

// MAP regret bound under an empirical model:
//   8*sqrt(log(1/delta)/n) + 8*sqrt(log(1/delta)/|D|).
BoundValue map_bound_nd(long n, long d_size, double delta);

// Crossover predicates: parameter regimes where the MBR bound is below the
// MAP bound. `crossover_fixed_model` is the unlimited-training-data case,
//   (1/9)*sqrt(n*log(1/delta)) >= sqrt(d*log d);
// `crossover_finite` keeps |D| finite,
//   (n/9)*(sqrt(log(1/delta)/n) + sqrt(log(1/delta)/|D|)) >= sqrt(d*log d).
bool crossover_fixed_model(long n, long dim, double delta);
bool crossover_finite(long n, long d_size, long dim, double delta);

// Smallest n satisfying crossover_fixed_model: ceil(81*d*log d / log(1/delta)).
long crossover_fixed_model_threshold(long dim, double delta);

// Pre-simplification forms with the explicit u_max factors and the
// log(4/delta)/log(8/delta) constants the simplified forms absorb. The
// simplified forms above are authoritative; these exist for tightness
// studies.
namespace raw {
BoundValue mc_error_embedding(long n, long dim, double delta, double u_max);
BoundValue identical_distributions(long n, long dim, double delta,
                                   double u_max);
BoundValue empirical_model_error(long d_size, double delta, double u_max);
BoundValue mbr_bound_nd(long n, long d_size, long dim, double delta,
                        double u_max);
BoundValue map_bound_nd(long n, long d_size, double delta);
}  // namespace raw

// Everything the given inputs allow, by name; bounds whose inputs are
// missing are listed in `skipped` with the missing symbol.
struct BoundInputs {
  long n = 0;
  std::optional<long> d_size;
  long dim = 4;
  double delta = 0.1;
  std::optional<double> wd_hm;
  std::optional<double> wd_tt;
  std::optional<double> alpha_err;
  double u_max = 1.0;
};

struct BoundReport {
  std::vector<std::pair<std::string, BoundValue>> values;
  std::vector<std::pair<std::string, std::string>> skipped;  // name, missing
};

BoundReport evaluate_bounds(const BoundInputs& inputs, bool include_raw = false);

}  // namespace mbrlab
