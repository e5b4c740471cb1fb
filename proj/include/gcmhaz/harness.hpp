#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcmhaz/models.hpp"
#include "gcmhaz/statistics.hpp"

namespace gcmhaz {

// Big-blocks / small-blocks partition of [0, a).  Big blocks of length
// ~ n^{-1/3} log n are separated by small buffer blocks of length
// ~ 2 n^{-1/3} sqrt(log n); the separating blocks are split into halves so
// that [0, a) = J~_1 | I_1 | J-_2 J~_2 | I_2 | ... | I_m | J-_{m+1}, with
// the two edge buffers having half the interior buffer length.  All
// lengths are rescaled by a common factor so the union is exactly [0, a).
struct BlockPartition {
  struct Interval {
    double lo = 0.0, hi = 0.0;
  };

  std::uint64_t n = 0;
  double a = 0.0;
  double big_len = 0.0;    // |I_k| after rescaling
  double small_len = 0.0;  // interior buffer length |J_k| after rescaling
  std::size_t m = 0;       // number of big blocks
  std::vector<double> l_bounds;   // a_1 = 0 < a_2 < ... < a_{m+1} = a
  std::vector<Interval> big;      // I_1 .. I_m
  std::vector<Interval> small;    // J~_1, J-_2, J~_2, ..., J-_{m+1} left to right
};

BlockPartition build_partition(std::uint64_t n, double a);

// One realization of the surrogate process
//   V_n(x) = H0(x) + n^{-1/2} W(F0(x) / (1 - F0(x)))
// on a uniform grid over [0, a].  The Brownian motion is generated through
// its exact time change: independent increments N(0, G(x_{i+1}) - G(x_i))
// with G = F0 / (1 - F0).
struct SurrogatePath {
  double delta_x = 0.0;
  double a = 0.0;
  std::vector<double> xs;
  std::vector<double> values;
};

SurrogatePath simulate_surrogate_path(const HazardModel& model, double n, double a,
                                      double delta_x, std::uint64_t seed,
                                      std::uint64_t stream = 0, bool noise_off = false);

// D_n = int_0^a {V_n(x) - C_n(x)} dF0(x) with C_n the GCM of V_n on [0, a].
// The simulation cost does not depend on n, so this is the cheap testbed
// for the n^{5/6} CLT at very large n.
double simulate_surrogate_Dn(const HazardModel& model, double n, double a,
                             double delta_x, std::uint64_t seed,
                             std::uint64_t stream = 0, bool noise_off = false);

struct LocalizationReport {
  std::uint64_t n = 0;
  double a = 0.0;
  std::uint64_t replications = 0;
  std::size_t m = 0;
  // Fraction of big blocks where the global GCM differs from the local GCM
  // on the enclosing L-block by more than 1e-3 n^{-2/3} in sup norm.
  double big_mismatch_freq = 0.0;
  // Fraction of small half-blocks containing no slope change of the global GCM.
  double small_no_knot_freq = 0.0;
};

LocalizationReport localization_check(const HazardModel& model, std::uint64_t n,
                                      double a, double delta_x,
                                      std::uint64_t replications, std::uint64_t seed);

enum class ExperimentKind { Surrogate, EmpiricalT, EmpiricalU };

ExperimentKind parse_experiment_kind(const std::string& s);

struct CLTReport {
  std::string kind;
  std::string model;
  double a = 0.0;
  double n = 0.0;
  std::uint64_t replications = 0;
  std::vector<double> standardized;  // n^{5/6} (value_r - mu_n)
  double sample_mean = 0.0;
  double sample_var = 0.0;
  double target_var = 0.0;
  double var_ratio = 0.0;
  double ks_distance = 0.0;
  double ks_p = 0.0;
  double mean_check_mc = 0.0;      // n^{2/3} * mean of raw values
  double mean_check_target = 0.0;  // E|C(0)| * mean integral
  std::uint64_t seed = 0;
};

// Replicated draw of the chosen statistic, standardized against the
// quadrature targets; reports variance ratio, KS distance/p against
// N(0, target_var) and the n^{2/3}-mean check.
CLTReport clt_experiment(ExperimentKind kind, const HazardModel& model, double a,
                         double n, std::uint64_t replications,
                         const CanonicalConstants& constants, std::uint64_t seed,
                         double delta_x = 1e-4);

struct QuantileSummary {
  double q50 = 0.0, q90 = 0.0, q95 = 0.0;
  double se50 = 0.0, se90 = 0.0, se95 = 0.0;
};

struct ConstantHazardReport {
  double lambda = 0.0;
  double a = 0.0;
  std::uint64_t n = 0;
  std::uint64_t replications = 0;
  QuantileSummary scaled_statistic;  // n^{1/2} U_n from exponential samples
  QuantileSummary limit;             // draws of the limiting functional U
  std::vector<double> scaled_draws;
  std::vector<double> limit_draws;
};

// Constant-hazard regime: n^{1/2} U_n against direct draws of the limit
//   U = int_0^a {1 - F0} {W(F0/(1-F0)) - C} dF0,
// C the GCM of x -> W(F0(x)/(1-F0(x))) on [0, a].
ConstantHazardReport constant_hazard_experiment(double lambda, double a,
                                                std::uint64_t n,
                                                std::uint64_t replications,
                                                double delta_x, std::uint64_t seed);

// One-sample Kolmogorov-Smirnov distance and asymptotic p against a
// centered normal with the given variance.
double ks_distance_normal(std::vector<double> draws, double variance);
double ks_asymptotic_p(double distance, std::size_t n);

}  // namespace gcmhaz
