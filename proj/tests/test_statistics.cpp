#include <cmath>
#include <fstream>
#include <random>
#include <vector>

#include "doctest.h"
#include "gcmhaz/json_io.hpp"
#include "gcmhaz/statistics.hpp"
#include "oracles.hpp"

using namespace gcmhaz;

TEST_CASE("worked example: obs {0.1, 0.2, 0.9}") {
  SortedSample s({0.1, 0.2, 0.9});
  double t = statistic_T(s, 1.0);
  double u = statistic_U(s, 1.0);
  // Interior atom sits above the chord; hand computation gives
  // (1/3)(log(3/2) - 0.1 * log 3 / 0.8) for T.
  double expected_t = (std::log(1.5) - 0.1 * std::log(3.0) / 0.8) / 3.0;
  CHECK(t == doctest::Approx(expected_t).epsilon(1e-13));
  CHECK(t == doctest::Approx(0.089378).epsilon(5e-5));
  CHECK(u == doctest::Approx(0.068334).epsilon(5e-4));
  CHECK(t == doctest::Approx(oracle::statistic_T(s.obs(), 1.0)).epsilon(1e-13));
  CHECK(u == doctest::Approx(oracle::statistic_U(s.obs(), 1.0)).epsilon(1e-13));
}

TEST_CASE("zero statistic when hull interpolates all atoms") {
  SortedSample s({0.2, 0.5});
  CHECK(statistic_T(s, 1.0) == 0.0);
  CHECK(statistic_U(s, 1.0) == 0.0);
}

TEST_CASE("all observations beyond the interval") {
  SortedSample s({2.0, 3.0, 4.0});
  CHECK(statistic_T(s, 1.0) == 0.0);
  CHECK(statistic_U(s, 1.0) == 0.0);
  CHECK_THROWS_AS(statistic_T(s, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(statistic_U(s, 0.0), std::invalid_argument);
}

TEST_CASE("U excludes the atom at a (half-open interval)") {
  SortedSample s({0.1, 0.2, 0.9});
  double u_at = statistic_U(s, 0.9);   // atom at 0.9 excluded
  double u_in = statistic_U(s, 0.95);  // atom at 0.9 included
  CHECK(u_at >= 0.0);
  CHECK(u_in >= 0.0);
  CHECK(u_at == doctest::Approx(oracle::statistic_U(s.obs(), 0.9)).epsilon(1e-13));
}

TEST_CASE("randomized oracle equivalence") {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<int> nd(1, 12);
  std::uniform_real_distribution<double> xd(0.01, 2.0);
  for (int rep = 0; rep < 300; ++rep) {
    int n = nd(rng);
    std::vector<double> obs(n);
    for (auto& x : obs) x = xd(rng);
    std::sort(obs.begin(), obs.end());
    obs.erase(std::unique(obs.begin(), obs.end()), obs.end());
    SortedSample s(obs);
    double a = xd(rng);
    CHECK(std::abs(statistic_T(s, a) - oracle::statistic_T(obs, a)) <= 1e-12);
    CHECK(std::abs(statistic_U(s, a) - oracle::statistic_U(obs, a)) <= 1e-12);
    CHECK(statistic_T(s, a) >= 0.0);
    CHECK(statistic_U(s, a) >= 0.0);
  }
}

TEST_CASE("zero characterization: atoms on hull segments") {
  // Left-limit constraint points collinear -> T = 0 even with 3 atoms.
  // For n = 3, left limits are 0, -log(2/3), -log(1/3); spacing the atoms
  // proportionally makes them collinear.
  double y1 = -std::log(2.0 / 3.0), y2 = -std::log(1.0 / 3.0);
  std::vector<double> obs = {0.5, 0.5 + y1, 0.5 + y2};
  SortedSample s(obs);
  CHECK(statistic_T(s, 3.0) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("monotone response to a concave kink") {
  // Base sample with T = 0; inserting an atom just after an existing one
  // puts a steep rise before a shallow one, a strict concave kink in the
  // left-limit constraint set, and must strictly increase T.
  SortedSample base({0.2, 0.5});
  double t0 = statistic_T(base, 1.0);
  CHECK(t0 == 0.0);
  SortedSample kinked({0.2, 0.21, 0.5});
  double t1 = statistic_T(kinked, 1.0);
  CHECK(t1 > t0);
  CHECK(t1 == doctest::Approx(oracle::statistic_T(kinked.obs(), 1.0)).epsilon(1e-13));
}

TEST_CASE("standardize: linearity in E|C(0)| and centering") {
  HazardModel model = make_model("linhaz:1,1");
  CanonicalConstants constants;
  constants.e_abs_c0 = 0.0;
  constants.sigma2 = 0.25;
  auto rep = standardize(0.01, StatKind::T, 1000, model, 1.0, constants);
  CHECK(*rep.mu_n == 0.0);
  CHECK(*rep.z ==
        doctest::Approx(std::pow(1000.0, 5.0 / 6.0) * 0.01 / *rep.scale).epsilon(1e-12));

  constants.e_abs_c0 = 0.41;
  auto rep2 = standardize(0.0, StatKind::U, 500, model, 1.0, constants);
  auto rep3 = standardize(*rep2.mu_n, StatKind::U, 500, model, 1.0, constants);
  CHECK(*rep3.z == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(*rep3.p_value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("standardize with the pinned constants fixture is reproducible") {
  auto constants =
      load_constants_file(std::string(GCMHAZ_SOURCE_DIR) + "/data/constants_fixture.json");
  HazardModel model = make_model("linhaz:1,1");
  auto r1 = standardize(0.001, StatKind::T, 10000, model, 1.0, constants);
  auto r2 = standardize(0.001, StatKind::T, 10000, model, 1.0, constants);
  CHECK(*r1.mu_n == *r2.mu_n);
  CHECK(*r1.z == *r2.z);
  CHECK(*r1.scale > 0.0);
  CHECK(report_to_json(r1).dump() == report_to_json(r2).dump());
}

TEST_CASE("standardize refuses constant hazard") {
  CanonicalConstants constants;
  constants.e_abs_c0 = 0.41;
  constants.sigma2 = 0.25;
  CHECK_THROWS_AS(
      standardize(0.01, StatKind::T, 100, make_model("exponential:1"), 1.0, constants),
      std::invalid_argument);
}
