#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gcmhaz/gcm.hpp"
#include "oracles.hpp"

using namespace gcmhaz;

TEST_CASE("gcm_points collapses collinear points") {
  auto hull = gcm_points({{0, 0}, {1, 2}, {2, 4}});
  REQUIRE(hull.num_knots() == 2);
  CHECK(hull.knot_x()[0] == 0.0);
  CHECK(hull.knot_x()[1] == 2.0);
  CHECK(hull(1.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gcm_points drops points above the hull") {
  auto hull = gcm_points({{0, 0}, {1, 2}, {2, 2}, {3, 6}});
  REQUIRE(hull.num_knots() == 3);
  CHECK(hull.knot_x() == std::vector<double>{0, 2, 3});
  CHECK(hull.knot_y() == std::vector<double>{0, 2, 6});
}

TEST_CASE("gcm_points singleton") {
  auto hull = gcm_points({{0.5, 1.0}});
  REQUIRE(hull.num_knots() == 1);
  CHECK(hull(0.5) == 1.0);
}

TEST_CASE("gcm_points rejects bad input") {
  CHECK_THROWS_AS(gcm_points(std::vector<std::pair<double, double>>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(gcm_points({{0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(gcm_points({{1, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(gcm_points({{0, 0}, {1, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("evaluation outside the knot span is an error") {
  auto hull = gcm_points({{0, 0}, {1, 1}});
  CHECK_THROWS_AS(hull(-0.1), std::domain_error);
  CHECK_THROWS_AS(hull(1.1), std::domain_error);
}

TEST_CASE("gcm_of_step with infinite tail") {
  StepFunction f({0.2, 0.5}, {0.6931471805599453, 0.0}, 0.0, /*infinite_from=*/1);
  auto hull = gcm_of_step(f, 1.0);
  REQUIRE(hull.num_knots() == 3);
  CHECK(hull.knot_x() == std::vector<double>{0.0, 0.2, 0.5});
  CHECK(hull.knot_y()[0] == 0.0);
  CHECK(hull.knot_y()[1] == 0.0);
  CHECK(hull.knot_y()[2] == doctest::Approx(0.6931471805599453));
}

TEST_CASE("gcm_of_step of a constant function") {
  StepFunction f({}, {}, 0.0);
  auto hull = gcm_of_step(f, 1.0);
  REQUIRE(hull.num_knots() == 2);
  CHECK(hull(0.37) == 0.0);
}

TEST_CASE("gcm_of_step endpoint uses right-continuous value") {
  StepFunction f({0.1, 0.2}, {0.4054651081081645, 1.0986122886681098}, 0.0);
  auto hull = gcm_of_step(f, 0.15);
  // Constraints {(0,0), (0.1,0), (0.15, 0.4055)}.
  auto ref = oracle::lower_hull({{0.0, 0.0}, {0.1, 0.0}, {0.15, 0.4054651081081645}});
  REQUIRE(hull.num_knots() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(hull.knot_x()[i] == doctest::Approx(ref[i].first).epsilon(1e-14));
    CHECK(hull.knot_y()[i] == doctest::Approx(ref[i].second).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gcm_of_step(f, -1.0), std::invalid_argument);
}

TEST_CASE("gcm_sampled_path of convex and concave inputs") {
  std::vector<double> xs, parab, bump;
  for (int i = -200; i <= 200; ++i) {
    double x = i * 0.01;
    xs.push_back(x);
    parab.push_back(x * x);
    bump.push_back(-std::abs(x));
  }
  auto hull_parab = gcm_sampled_path(xs, parab);
  CHECK(hull_parab.num_knots() == xs.size());
  auto hull_bump = gcm_sampled_path(xs, bump);
  // Concave bump: hull is the chord between the endpoints.
  CHECK(hull_bump.num_knots() == 2);
  CHECK(hull_bump(0.0) == doctest::Approx(-2.0).epsilon(1e-12));
}

namespace {

std::vector<std::pair<double, double>> random_points(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> nd(1, max_n);
  std::uniform_real_distribution<double> yd(-10.0, 10.0);
  int n = nd(rng);
  std::vector<double> xs(n);
  std::uniform_real_distribution<double> xd(0.0, 10.0);
  for (auto& x : xs) x = xd(rng);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<double, double>> pts;
  for (double x : xs) pts.emplace_back(x, yd(rng));
  return pts;
}

}  // namespace

TEST_CASE("hull matches gift-wrap oracle on random point sets") {
  std::mt19937_64 rng(20240817);
  for (int rep = 0; rep < 200; ++rep) {
    auto pts = random_points(rng, 12);
    auto hull = gcm_points(pts);
    auto ref = oracle::lower_hull(pts);
    REQUIRE(hull.num_knots() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(hull.knot_x()[i] == ref[i].first);
      CHECK(std::abs(hull.knot_y()[i] - ref[i].second) <= 1e-12);
    }
  }
}

TEST_CASE("hull invariants: minorant, convexity, touching, idempotence") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    auto pts = random_points(rng, 40);
    auto hull = gcm_points(pts);
    // Minorant and touching.
    for (const auto& [x, y] : pts) CHECK(hull(x) <= y + 1e-12);
    for (std::size_t k = 0; k < hull.num_knots(); ++k) {
      bool found = false;
      for (const auto& [x, y] : pts)
        if (x == hull.knot_x()[k] && y == hull.knot_y()[k]) found = true;
      CHECK(found);
    }
    // Convexity.
    for (std::size_t k = 0; k + 2 < hull.num_knots(); ++k) {
      double s1 = (hull.knot_y()[k + 1] - hull.knot_y()[k]) /
                  (hull.knot_x()[k + 1] - hull.knot_x()[k]);
      double s2 = (hull.knot_y()[k + 2] - hull.knot_y()[k + 1]) /
                  (hull.knot_x()[k + 2] - hull.knot_x()[k + 1]);
      CHECK(s1 <= s2 + 1e-12 * std::max({1.0, std::abs(s1), std::abs(s2)}));
    }
    // Idempotence.
    std::vector<std::pair<double, double>> knots;
    for (std::size_t k = 0; k < hull.num_knots(); ++k)
      knots.emplace_back(hull.knot_x()[k], hull.knot_y()[k]);
    auto again = gcm_points(knots);
    CHECK(again.num_knots() == hull.num_knots());
  }
}

TEST_CASE("sup-norm contraction of the hull map") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  std::vector<double> xs(101);
  for (int i = 0; i <= 100; ++i) xs[i] = i * 0.01;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> f(101), g(101);
    double wf = 0, wg = 0;
    for (int i = 0; i <= 100; ++i) {
      wf += 0.1 * nd(rng);
      wg += 0.1 * nd(rng);
      f[i] = wf;
      g[i] = wg;
    }
    std::vector<double> hf(101), hg(101);
    gcm_values_on_grid(xs, f, hf);
    gcm_values_on_grid(xs, g, hg);
    double din = 0, dout = 0;
    for (int i = 0; i <= 100; ++i) {
      din = std::max(din, std::abs(f[i] - g[i]));
      dout = std::max(dout, std::abs(hf[i] - hg[i]));
    }
    CHECK(dout <= din + 1e-12);
  }
}

TEST_CASE("affine equivariance of the hull") {
  std::mt19937_64 rng(123);
  std::normal_distribution<double> nd;
  std::vector<double> xs(201), f(201), g(201);
  for (int i = 0; i <= 200; ++i) xs[i] = i * 0.005;
  for (int rep = 0; rep < 20; ++rep) {
    double w = 0;
    double slope = nd(rng), intercept = nd(rng);
    for (int i = 0; i <= 200; ++i) {
      w += 0.07 * nd(rng);
      f[i] = w;
      g[i] = w + slope * xs[i] + intercept;
    }
    std::vector<double> hf(201), hg(201);
    gcm_values_on_grid(xs, f, hf);
    gcm_values_on_grid(xs, g, hg);
    for (int i = 0; i <= 200; ++i)
      CHECK(std::abs(hg[i] - (hf[i] + slope * xs[i] + intercept)) < 1e-9);
  }
}
