#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mbrlab/simulation.hpp"
#include "test_support.hpp"

using namespace mbrlab;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.space_size = 40;
  spec.dim = 4;
  spec.n_grid = {25, 50};
  spec.d_grid = {200};
  spec.deltas = {0.01, 0.1};
  spec.seeds = 6;
  spec.master_seed = 99;
  spec.compute_wd = true;
  spec.wd_limit = 100;
  spec.tightened_limit = 100;
  return spec;
}

}  // namespace

TEST_CASE("spec validation") {
  ExperimentSpec spec = small_spec();
  spec.n_grid = {50, 25};
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = small_spec();
  spec.deltas = {1.2};
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = small_spec();
  spec.dim = 3;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = small_spec();
  spec.noise_scales = {0.1};
  spec.utility_kind = UtilityKind::correlated_matrix;
  CHECK_THROWS_AS(spec.validate(), InputError);
}

TEST_CASE("spec loads from config with unknown keys rejected") {
  std::stringstream text(
      "space.size = 30\n"
      "utility.kind = matrix\n"
      "sweep.n_grid = 10,20\n"
      "sweep.d_grid = 100\n"
      "sweep.deltas = 0.1\n"
      "run.seeds = 3\n"
      "run.master_seed = 7\n");
  auto config = Config::parse(text);
  const auto spec = ExperimentSpec::from_config(config);
  CHECK(spec.space_size == 30);
  CHECK(spec.utility_kind == UtilityKind::correlated_matrix);
  CHECK(spec.n_grid == std::vector<long>{10, 20});
  CHECK(spec.seeds == 3);

  config.set("sweeps.typo", "1");
  CHECK_THROWS_AS(ExperimentSpec::from_config(config), InputError);
}

TEST_CASE("sweep on a single-point space has zero regrets everywhere") {
  ExperimentSpec spec = small_spec();
  spec.space_size = 1;
  spec.wd_limit = 10;
  spec.seeds = 1;
  const auto result = run_sweep(spec);
  CHECK(result.rows.size() == 2 * 1 * 2 * 1);
  for (const auto& row : result.rows) {
    CHECK(row.report.regret_n == 0.0);
    CHECK(row.report.regret_map == 0.0);
    CHECK(*row.viol_mbr_nd == false);
    CHECK(*row.viol_map_nd == false);
    CHECK(*row.wd_hm == 0.0);
  }
}

TEST_CASE("sweep rows carry consistent bounds and flags") {
  const auto result = run_sweep(small_spec());
  CHECK(result.rows.size() == 2 * 1 * 2 * 6);
  for (const auto& row : result.rows) {
    REQUIRE(row.bound_mbr_nd.has_value());
    CHECK(*row.bound_mbr_nd ==
          doctest::Approx(
              mbr_bound_nd(row.n, row.d_size, 4, row.delta).total)
              .epsilon(1e-15));
    CHECK(*row.viol_mbr_nd == (row.report.regret_n > *row.bound_mbr_nd));
    REQUIRE(row.wd_hm.has_value());
    CHECK(*row.wd_hm >= 0.0);
    REQUIRE(row.bound_mbr_wd.has_value());
    CHECK(*row.bound_mbr_wd ==
          doctest::Approx(
              mbr_bound_wd(row.n, 4, row.delta, *row.wd_hm).total)
              .epsilon(1e-15));
    CHECK(row.report.regret_n >= -1e-12);
    CHECK(row.report.regret_map >= -1e-12);
  }
}

TEST_CASE("sweep is deterministic and delta-independent per trial") {
  const auto a = run_sweep(small_spec());
  const auto b = run_sweep(small_spec());
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].report.regret_n == b.rows[i].report.regret_n);
    CHECK(a.rows[i].report.chosen_mc == b.rows[i].report.chosen_mc);
    CHECK(a.rows[i].report.seed == b.rows[i].report.seed);
  }
  // Rows at the two deltas share the same underlying trial.
  for (std::size_t i = 0; i + 1 < a.rows.size(); i += 2) {
    CHECK(a.rows[i].n == a.rows[i + 1].n);
    CHECK(a.rows[i].delta != a.rows[i + 1].delta);
    CHECK(a.rows[i].report.regret_n == a.rows[i + 1].report.regret_n);
  }
}

TEST_CASE("threaded sweep matches the serial one") {
  ExperimentSpec spec = small_spec();
  const auto serial = run_sweep(spec);
  spec.threads = 4;
  const auto parallel = run_sweep(spec);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].report.regret_n ==
          parallel.rows[i].report.regret_n);
    CHECK(serial.rows[i].wd_hm == parallel.rows[i].wd_hm);
  }
}

TEST_CASE("temperature and noise variants populate their columns") {
  ExperimentSpec spec = small_spec();
  spec.temperatures = {2.0};
  spec.noise_scales = {0.1};
  spec.seeds = 3;
  const auto result = run_sweep(spec);
  // variants: base, t=2, noise=0.1.
  CHECK(result.rows.size() == 2 * 1 * 3 * 3 * 2);
  bool saw_temp = false, saw_noise = false;
  for (const auto& row : result.rows) {
    if (row.temperature) {
      saw_temp = true;
      REQUIRE(row.report.regret_t.has_value());
      REQUIRE(row.wd_tt.has_value());
      REQUIRE(row.bound_t.has_value());
      CHECK(*row.bound_t ==
            doctest::Approx(temperature_bound(row.n, row.d_size, 4, row.delta,
                                              *row.wd_tt)
                                .total)
                .epsilon(1e-15));
    }
    if (row.noise) {
      saw_noise = true;
      REQUIRE(row.report.regret_u.has_value());
      REQUIRE(row.alpha_err.has_value());
      REQUIRE(row.bound_u.has_value());
    }
  }
  CHECK(saw_temp);
  CHECK(saw_noise);
}

TEST_CASE("wd is skipped above the limit, flagged per row") {
  ExperimentSpec spec = small_spec();
  spec.wd_limit = 10;  // below the space size
  const auto result = run_sweep(spec);
  for (const auto& row : result.rows) {
    CHECK(row.wd_skipped);
    CHECK_FALSE(row.wd_hm.has_value());
    CHECK_FALSE(row.bound_mbr_wd.has_value());
    CHECK(row.bound_mbr_nd.has_value());  // the training-size bound remains
  }
}

TEST_CASE("summaries aggregate by grid point") {
  const auto result = run_sweep(small_spec());
  CHECK(result.summary.size() == 4);  // 2 n values x 2 deltas
  for (const auto& s : result.summary) {
    CHECK(s.rows == 6);
    CHECK(s.regret_n_median >= 0.0);
    REQUIRE(s.viol_mbr_nd.has_value());
    CHECK(*s.viol_mbr_nd >= 0.0);
    CHECK(*s.viol_mbr_nd <= 1.0);
  }
  CHECK(summarize(result.rows).size() == result.summary.size());
}

TEST_CASE("results csv round-trips and re-summarizes identically") {
  const auto result = run_sweep(small_spec());
  std::stringstream buf;
  write_results_csv(buf, result.rows);
  const auto rows = read_results_csv(buf);
  REQUIRE(rows.size() == result.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].report.regret_n == result.rows[i].report.regret_n);
    CHECK(rows[i].bound_mbr_wd == result.rows[i].bound_mbr_wd);
    CHECK(rows[i].viol_mbr_nd == result.rows[i].viol_mbr_nd);
  }
  const auto summary = summarize(rows);
  REQUIRE(summary.size() == result.summary.size());
  for (std::size_t i = 0; i < summary.size(); ++i) {
    CHECK(summary[i].regret_n_median == result.summary[i].regret_n_median);
    CHECK(summary[i].bound_mbr_wd == result.summary[i].bound_mbr_wd);
  }
  // Byte-identical emission after a round trip.
  std::stringstream again;
  write_results_csv(again, rows);
  CHECK(again.str() == buf.str());
}

TEST_CASE("corrupted results rows are rejected with a line number") {
  const auto result = run_sweep(small_spec());
  std::stringstream buf;
  write_results_csv(buf, result.rows);
  std::string text = buf.str();
  text += "garbage,row\n";
  std::stringstream bad(text);
  try {
    read_results_csv(bad);
    CHECK(false);
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("line " + std::to_string(result.rows.size() + 2)) !=
          std::string::npos);
  }
}

TEST_CASE("crossover study agrees with the closed-form predicate") {
  ExperimentSpec spec = small_spec();
  spec.n_grid = {10, 50, 100, 196, 500, 2000};
  spec.d_grid = {10, 100, 1000, 100000};
  spec.deltas = {0.1};
  const auto rows = run_crossover_study(spec);
  CHECK(rows.size() == 6 * 4);
  for (const auto& row : rows) {
    CHECK(row.difference ==
          doctest::Approx(row.map_bound - row.mbr_bound).epsilon(1e-15));
    if (std::abs(row.difference) > 1e-12)
      CHECK(row.predicate == (row.difference >= 0.0));
  }
}

TEST_CASE("observation probe trends toward zero gap") {
  ExperimentSpec spec;
  spec.space_size = 30;
  spec.n_grid = {100, 1600};
  spec.d_grid = {100, 1600};
  spec.deltas = {0.1};
  spec.seeds = 40;
  spec.master_seed = 5;
  const auto rows = run_observation_probe(spec);
  CHECK(rows.size() == 2 * 2 * 40);

  auto median_abs_gap = [&](long n, long d) {
    std::vector<double> gaps;
    for (const auto& row : rows)
      if (row.n == n && row.d_size == d) gaps.push_back(std::abs(row.gap));
    return testsup::median(gaps);
  };
  CHECK(median_abs_gap(1600, 1600) < median_abs_gap(100, 100));
  for (const auto& row : rows) {
    CHECK(std::isfinite(row.gap));
    CHECK(std::abs(row.truth_gap) <= 1.0 + 1e-12);
    CHECK(std::abs(row.model_gap) <= 1.0 + 1e-12);
  }
}

TEST_CASE("crossover and probe tables serialize with their headers") {
  ExperimentSpec spec = small_spec();
  spec.n_grid = {10, 100};
  spec.d_grid = {50};
  spec.deltas = {0.1};
  spec.seeds = 2;
  std::stringstream cross;
  write_crossover_csv(cross, run_crossover_study(spec));
  CHECK(cross.str().rfind(kCrossoverCsvHeader, 0) == 0);

  std::stringstream probe;
  const auto rows = run_observation_probe(spec);
  write_probe_csv(probe, rows);
  CHECK(probe.str().rfind(kProbeCsvHeader, 0) == 0);
  std::size_t lines = 0;
  for (char ch : probe.str())
    if (ch == '\n') ++lines;
  CHECK(lines == rows.size() + 1);
}

TEST_CASE("probe on a point-mass space is identically zero") {
  ExperimentSpec spec;
  spec.space_size = 1;
  spec.n_grid = {10};
  spec.d_grid = {10};
  spec.deltas = {0.1};
  spec.seeds = 2;
  const auto rows = run_observation_probe(spec);
  for (const auto& row : rows) {
    CHECK(row.truth_gap == 0.0);
    CHECK(row.model_gap == 0.0);
    CHECK(row.gap == 0.0);
  }
}
