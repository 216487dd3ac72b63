#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "mbrlab/hypothesis.hpp"
#include "mbrlab/rng.hpp"
#include "test_support.hpp"

using namespace mbrlab;

TEST_CASE("space and distribution validation") {
  CHECK_THROWS_AS(HypothesisSpace::indexed(0), InputError);
  CHECK_THROWS_AS(HypothesisSpace::labeled({"a", "a"}), InputError);

  auto space = HypothesisSpace::indexed(3);
  CHECK_THROWS_AS(Categorical(space, {0.5, 0.5}), InputError);
  CHECK_THROWS_AS(Categorical(space, {0.5, 0.5, -0.1}), InputError);
  // Sums to 0.9: the message names the normalization violation.
  try {
    Categorical bad(space, {0.3, 0.3, 0.3});
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("sum") != std::string::npos);
  }
  CHECK_NOTHROW(Categorical(space, {0.3, 0.3, 0.4}));
}

TEST_CASE("point mass sampling") {
  auto space = HypothesisSpace::indexed(1);
  Categorical dist(space, {1.0});
  const auto s = sample(dist, 5, 123);
  for (auto idx : s.indices) CHECK(idx == 0);
  CHECK_THROWS_AS(sample(dist, 0, 1), InputError);
}

TEST_CASE("fair coin frequencies land in the binomial window") {
  // 1e5 draws at p=0.5: three sigma is 0.5 +- 0.00474, well inside
  // [0.494, 0.506].
  auto space = HypothesisSpace::indexed(2);
  Categorical dist(space, {0.5, 0.5});
  const auto s = sample(dist, 100000, 7);
  std::size_t zeros = 0;
  for (auto idx : s.indices)
    if (idx == 0) ++zeros;
  const double freq = static_cast<double>(zeros) / 100000.0;
  CHECK(freq >= 0.494);
  CHECK(freq <= 0.506);
}

TEST_CASE("sampling is deterministic per (dist, count, seed)") {
  auto space = HypothesisSpace::indexed(10);
  Rng rng(99);
  const auto dist = testsup::random_dist(space, rng);
  const auto a = sample(dist, 1000, 42);
  const auto b = sample(dist, 1000, 42);
  CHECK(a.indices == b.indices);
  const auto c = sample(dist, 1000, 43);
  CHECK(a.indices != c.indices);
}

TEST_CASE("empirical distribution counts") {
  auto space = HypothesisSpace::indexed(3);
  SampleSet s{space, {0, 1, 0, 2, 0}, 0};
  const auto emp = empirical_distribution(s);
  CHECK(emp[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(emp[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(emp[2] == doctest::Approx(0.2).epsilon(1e-15));

  SampleSet all_b{space, {1, 1, 1}, 0};
  const auto point = empirical_distribution(all_b);
  CHECK(point[1] == 1.0);
  CHECK(point[0] == 0.0);
}

TEST_CASE("empirical distribution approaches the sampled law") {
  // Total variation after 1e4 draws from (0.3, 0.7); DKW gives ~0.0096 at
  // 95%, asserted with the looser 0.03 margin.
  auto space = HypothesisSpace::indexed(2);
  Categorical dist(space, {0.3, 0.7});
  const auto emp = empirical_distribution(sample(dist, 10000, 11));
  const double tv =
      0.5 * (std::abs(emp[0] - 0.3) + std::abs(emp[1] - 0.7));
  CHECK(tv <= 0.03);
}

TEST_CASE("sample support stays inside the distribution support") {
  auto space = HypothesisSpace::indexed(6);
  Categorical dist(space, {0.0, 0.5, 0.0, 0.25, 0.25, 0.0});
  const auto s = sample(dist, 5000, 5);
  for (auto idx : s.indices) {
    CHECK(idx != 0);
    CHECK(idx != 2);
    CHECK(idx != 5);
  }

  // Trailing zeros whose running sum rounds just below 1: the rounding gap
  // must not leak probability mass onto the unsupported tail.
  auto space3 = HypothesisSpace::indexed(3);
  Categorical gap(space3, {0.3, 0.7, 0.0});
  const auto g = sample(gap, 200000, 17);
  for (auto idx : g.indices) CHECK(idx != 2);
}

TEST_CASE("law of large numbers across seeds") {
  // TV at n=1e5 below TV at n=1e3 for at least 95 of 100 seeds.
  auto space = HypothesisSpace::indexed(50);
  const auto dist = make_human_distribution(space, ZipfFamily{1.0}, 0);
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto tv = [&](std::size_t n) {
      const auto emp = empirical_distribution(sample(dist, n, seed * 2 + 1));
      double acc = 0.0;
      for (std::size_t i = 0; i < 50; ++i) acc += std::abs(emp[i] - dist[i]);
      return 0.5 * acc;
    };
    if (tv(100000) <= tv(1000)) ++improved;
  }
  CHECK(improved >= 95);
}

TEST_CASE("temperature transform worked values") {
  auto space = HypothesisSpace::indexed(2);
  Categorical dist(space, {0.8, 0.2});
  const auto out = temperature_transform(dist, 1.0);
  // exp(0.8)/(exp(0.8)+exp(0.2)) = 0.6457 to four decimals
  CHECK(out[0] == doctest::Approx(0.6457).epsilon(1e-4));
  CHECK(out[1] == doctest::Approx(0.3543).epsilon(1e-4));

  const auto flat = temperature_transform(dist, 1e9);
  CHECK(std::abs(flat[0] - 0.5) < 1e-6);
  CHECK(std::abs(flat[1] - 0.5) < 1e-6);

  Categorical uniform(HypothesisSpace::indexed(4), {0.25, 0.25, 0.25, 0.25});
  for (double t : {0.3, 1.0, 7.0}) {
    const auto u = temperature_transform(uniform, t);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(u[i] == doctest::Approx(0.25).epsilon(1e-12));
  }

  CHECK_THROWS_AS(temperature_transform(dist, 0.0), InputError);
  CHECK_THROWS_AS(temperature_transform(dist, -1.0), InputError);
}

TEST_CASE("temperature transform preserves ordering and validity") {
  auto space = HypothesisSpace::indexed(20);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dist = testsup::random_dist(space, rng);
    for (double t : {0.1, 0.5, 1.0, 10.0, 1e6}) {
      const auto out = temperature_transform(dist, t);  // ctor validates
      for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 20; ++j)
          if (dist[i] > dist[j]) CHECK(out[i] > out[j]);
    }
  }
}

TEST_CASE("zipf ground truth") {
  auto space = HypothesisSpace::indexed(3);
  const auto dist = make_human_distribution(space, ZipfFamily{1.0}, 77);
  CHECK(dist[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
  CHECK(dist[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
  CHECK(dist[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-12));

  const auto one =
      make_human_distribution(HypothesisSpace::indexed(1), ZipfFamily{2.0}, 0);
  CHECK(one[0] == 1.0);
  CHECK_THROWS_AS(
      make_human_distribution(space, ZipfFamily{0.0}, 0), InputError);
}

TEST_CASE("dirichlet ground truth varies with the seed") {
  auto space = HypothesisSpace::indexed(100);
  const auto a = make_human_distribution(space, DirichletFamily{1.0}, 1);
  const auto b = make_human_distribution(space, DirichletFamily{1.0}, 2);
  CHECK(a.probs() != b.probs());
  const auto a2 = make_human_distribution(space, DirichletFamily{1.0}, 1);
  CHECK(a.probs() == a2.probs());
  CHECK_THROWS_AS(
      make_human_distribution(space, DirichletFamily{0.0}, 0), InputError);

  const auto one = make_human_distribution(HypothesisSpace::indexed(1),
                                           DirichletFamily{2.0}, 5);
  CHECK(one[0] == 1.0);
}

TEST_CASE("distribution serialization round-trips") {
  auto space = HypothesisSpace::indexed(5);
  Rng rng(8);
  const auto dist = testsup::random_dist(space, rng);
  std::stringstream buf;
  write_distribution(buf, dist);
  const auto back = read_distribution(buf);
  CHECK(back.probs() == dist.probs());

  std::stringstream bad("index,probability\n0,0.4\n1,0.5\n");
  CHECK_THROWS_AS(read_distribution(bad), InputError);
  std::stringstream garbled("index,probability\n0,zero\n");
  CHECK_THROWS_AS(read_distribution(garbled), InputError);
}
