#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gcmhaz/empirical.hpp"

namespace gcmhaz {

// Analytic null model: distribution, density, cumulative hazard, hazard and
// hazard derivative on [0, a_max], with a closed-form inverse CDF for
// sampling.  F0 = 1 - exp(-H0) and f0 = h0 * (1 - F0) by construction.
struct HazardModel {
  std::string name;
  std::vector<double> params;
  std::function<double(double)> F0, f0, H0, h0, dh0;
  std::function<double(double)> inverse_F0;  // u in [0,1) -> t
  double a_max;                              // F0(a_max) < 1
  bool constant_hazard = false;              // dh0 == 0 everywhere
  bool hazard_vanishes_at_zero = false;      // h0(0) == 0 (weibull k > 1)

  std::string spec_string() const;
};

// Parse a model spec string:
//   linhaz:alpha,beta      h0(t) = alpha + beta t        (alpha, beta > 0)
//   gompertz:alpha,beta    h0(t) = alpha exp(beta t)
//   exponential:lambda     h0(t) = lambda (constant hazard)
//   weibull:k,lambda       h0(t) = (k/lambda)(t/lambda)^{k-1}, k > 1 flagged
HazardModel make_model(const std::string& spec);

// Monte Carlo estimates of the universal canonical-process constants,
// together with the budget and seed of the simulation that produced them.
struct CanonicalConstants {
  double e_abs_c0 = 0.0;  // E|C(0)|
  double sigma2 = 0.0;    // long-run variance of the integrated excess
  double se_e_abs_c0 = 0.0;
  double se_sigma2 = 0.0;
  double delta = 0.0;
  double c = 0.0;
  std::uint64_t replications = 0;
  double l_pad = 0.0;
  std::uint64_t seed = 0;
  std::string version;
};

/// The four deterministic functionals entering the limit theorems:
//   mean_T_integral = int_0^a (2 h0 f0 / h0')^{1/3} dH0
//   mean_U_integral = int_0^a (2 h0 f0 / h0')^{1/3} dF0
//   var_T = 2^{4/3} sigma^2 int_0^a h0^2 (h0 f0)^{1/3} h0'^{-4/3} dH0
//   var_U = sigma^2 int_0^a (2 h0 f0 / h0')^{4/3} dF0
struct AsymptoticConstants {
  double mean_T_integral = 0.0;
  double mean_U_integral = 0.0;
  double var_T = 0.0;
  double var_U = 0.0;
  double quadrature_error_bound = 0.0;
};

// Quadrature of the asymptotic mean/variance functionals on [a_start, a].
// The model must have h0 > 0 and h0' > 0 there; a_start > 0 is the
// documented escape hatch for weibull k > 1, whose hazard vanishes at 0.
AsymptoticConstants asymptotic_constants(const HazardModel& model, double a,
                                         const CanonicalConstants& canonical,
                                         double a_start = 0.0);

// n i.i.d. draws via the closed-form inverse CDF, sorted.
SortedSample sample_from(const HazardModel& model, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream = 0);

}  // namespace gcmhaz
