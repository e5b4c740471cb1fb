#include <cmath>
#include <vector>

#include "doctest.h"
#include "gcmhaz/empirical.hpp"

using namespace gcmhaz;

TEST_CASE("ecdf evaluation and left limits") {
  SortedSample s({0.2, 0.5});
  auto F = ecdf(s);
  CHECK(F(0.3) == 0.5);
  CHECK(F.left_limit(0.5) == 0.5);
  CHECK(F(0.5) == 1.0);
  CHECK(F(0.1) == 0.0);

  SortedSample s2({1, 2, 3, 4});
  CHECK(ecdf(s2)(4.0) == 1.0);
}

TEST_CASE("empirical cumulative hazard values") {
  SortedSample s({0.5, 1.0, 1.5, 2.0});
  auto H = emp_cum_hazard(s);
  CHECK(H(1.2) == doctest::Approx(0.6931471805599453).epsilon(1e-10));  // after X(2)
  CHECK(H(0.7) == doctest::Approx(0.2876820724517809).epsilon(1e-10));  // after X(1)
  CHECK(H(0.3) == 0.0);
  CHECK(H.left_limit(0.5) == 0.0);
  CHECK(H.infinite_at(2.0));
  CHECK(!H.infinite_at(1.999));
  CHECK(std::isinf(H(2.5)));
}

TEST_CASE("ties rejected by default, jittered on request") {
  CHECK_THROWS_AS(SortedSample({1.0, 1.0, 2.0}), std::invalid_argument);
  SortedSample s({1.0, 1.0, 2.0}, /*jitter_ties=*/true);
  CHECK(s.obs()[0] < s.obs()[1]);
  CHECK(s.obs()[1] < s.obs()[2]);
}

TEST_CASE("rejects nonpositive or non-finite observations") {
  CHECK_THROWS_AS(SortedSample({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SortedSample({-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SortedSample({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(SortedSample({}), std::invalid_argument);
}

TEST_CASE("isotonic estimators: two observations") {
  SortedSample s({0.2, 0.5});
  auto est = isotonic_estimators(s, 1.0);
  REQUIRE(est.cum_hazard.num_knots() == 3);
  CHECK(est.cum_hazard.knot_x() == std::vector<double>{0.0, 0.2, 0.5});
  CHECK(est.cum_hazard.knot_y()[2] == doctest::Approx(0.6931471805599453));
  CHECK(est.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(est.cdf(0.0) == 0.0);
}

TEST_CASE("isotonic estimators: no observations below a") {
  SortedSample s({2.0, 3.0});
  auto est = isotonic_estimators(s, 1.0);
  CHECK(est.cum_hazard(0.5) == 0.0);
  CHECK(est.cdf(0.9) == 0.0);
}

TEST_CASE("isotonic estimators: interior point above chord is dropped") {
  SortedSample s({0.1, 0.2, 0.9});
  auto est = isotonic_estimators(s, 1.0);
  REQUIRE(est.cum_hazard.num_knots() == 3);
  CHECK(est.cum_hazard.knot_x() == std::vector<double>{0.0, 0.1, 0.9});
  CHECK(est.cum_hazard.knot_y()[2] == doctest::Approx(1.0986122886681098));
  CHECK_THROWS_AS(isotonic_estimators(s, 0.0), std::invalid_argument);
}

TEST_CASE("minorant property through the monotone transform") {
  SortedSample s({0.1, 0.3, 0.35, 0.8, 1.4});
  auto est = isotonic_estimators(s, 2.0);
  auto H = emp_cum_hazard(s);
  std::size_t n = s.n();
  for (std::size_t k = 0; k < n; ++k) {
    double x = s.obs()[k];
    if (x > est.cum_hazard.x_max()) break;
    CHECK(est.cum_hazard(x) <= H.left_limit(x) + 1e-12);
    // exp(-Hhat(X_(k))) >= 1 - k/n.
    CHECK(std::exp(-est.cum_hazard(x)) >=
          1.0 - static_cast<double>(k + 1) / static_cast<double>(n) - 1e-12);
  }
  CHECK(est.cum_hazard(0.0) == 0.0);
}

TEST_CASE("scale equivariance") {
  std::vector<double> obs = {0.1, 0.25, 0.7, 0.9};
  double lambda = 3.7;
  auto est1 = isotonic_estimators(SortedSample(obs), 1.0);
  std::vector<double> scaled = obs;
  for (auto& x : scaled) x *= lambda;
  auto est2 = isotonic_estimators(SortedSample(scaled), lambda);
  REQUIRE(est1.cum_hazard.num_knots() == est2.cum_hazard.num_knots());
  for (std::size_t k = 0; k < est1.cum_hazard.num_knots(); ++k) {
    CHECK(est2.cum_hazard.knot_x()[k] ==
          doctest::Approx(lambda * est1.cum_hazard.knot_x()[k]).epsilon(1e-12));
    CHECK(est2.cum_hazard.knot_y()[k] ==
          doctest::Approx(est1.cum_hazard.knot_y()[k]).epsilon(1e-12));
  }
}
