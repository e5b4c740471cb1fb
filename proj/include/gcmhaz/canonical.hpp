#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gcmhaz/models.hpp"

namespace gcmhaz {

// One simulated realization of V(x) = W(x) + x^2 on a uniform grid, with W
// standard two-sided Brownian motion anchored at W(0) = 0.  The two sides
// are built from independent one-sided streams; stream ids 2*stream and
// 2*stream + 1 are consumed internally.
struct PathSim {
  double delta = 0.0;
  double x_lo = 0.0, x_hi = 0.0;
  std::vector<double> xs;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

PathSim simulate_V(double x_lo, double x_hi, double delta, std::uint64_t seed,
                   std::uint64_t stream = 0, bool noise_off = false);

// Q_c = int_0^c {V(x) - C(x)} dx with C the GCM of V over the full window
// (the finite-window stand-in for the minorant on all of R).  The window
// must extend at least one unit beyond [0, c] on each side.
double q_c(const PathSim& path, double c);

struct ConstantsBudget {
  double c = 200.0;
  std::uint64_t replications = 400;
  double delta = 1e-3;
  double l_pad = 5.0;
};

// Full estimation output.  The primary sigma2 estimate is the truncated
// block-covariance series sigma2 = var(D_0) + 2 sum_k covar(D_0, D_k),
// which pools all unit blocks; var(Q_c)/c is kept as an independent
// cross-check with its own (much larger) standard error.
struct ConstantsEstimate {
  CanonicalConstants constants;
  double sigma2_qc = 0.0;     // estimator (a): var(Q_c) / c
  double se_sigma2_qc = 0.0;  // batch SE of estimator (a)
  int covariance_lags = 0;    // lags summed in estimator (b)
};

ConstantsEstimate estimate_constants_detail(const ConstantsBudget& budget,
                                            std::uint64_t seed, bool noise_off = false);

CanonicalConstants estimate_constants(const ConstantsBudget& budget, std::uint64_t seed);

// Grid-refinement diagnostic with common random numbers: each replicate
// simulates one path at delta / 2 and the delta-grid path is its every-other
// subsample, so the paired difference isolates the discretization effect
// from Monte Carlo noise.  Returns {coarse estimate, fine estimate}.
std::pair<ConstantsEstimate, ConstantsEstimate> estimate_constants_refinement(
    const ConstantsBudget& budget, std::uint64_t seed);

// Per-replicate unit-block integrals D_k = int_k^{k+1} {V - C} dx, for the
// CLT self-checks.  Row r holds blocks k = 0 .. c-1 of replicate r.
std::vector<std::vector<double>> block_integrals(const ConstantsBudget& budget,
                                                 std::uint64_t seed);

struct TailPoint {
  double z = 0.0;
  double p_hat = 0.0;           // empirical P{min V <= -z}
  double se = 0.0;              // binomial SE
  double airy_prediction = 0.0; // 2/sqrt(3) exp{-8 z^{3/2}/sqrt(27)}
  std::uint64_t hits = 0;
};

// Tail frequencies of the minimum of V over [-window, window].  No hull is
// involved, so huge replication counts are affordable even single-threaded.
std::vector<TailPoint> tail_check(const std::vector<double>& z_values,
                                  std::uint64_t replications, double delta,
                                  double window, std::uint64_t seed);

struct ScalingReport {
  double a_coef = 0.0, b_coef = 0.0;
  double c = 0.0;
  std::uint64_t replications = 0;
  double mean_ratio = 0.0, mean_ratio_se = 0.0, mean_predicted = 0.0;
  double var_ratio = 0.0, var_ratio_se = 0.0, var_predicted = 0.0;
};

// Monte Carlo check of the scaling law for x -> a x^2 + W(b x): the mean of
// the integrated excess scales by b^{2/3} a^{-1/3} and its variance by
// b^{5/3} a^{-4/3} relative to the standard process.
ScalingReport scaling_check(double a_coef, double b_coef, double c,
                            std::uint64_t replications, double delta, double l_pad,
                            std::uint64_t seed);

}  // namespace gcmhaz
