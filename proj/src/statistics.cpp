#include "gcmhaz/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcmhaz {

double statistic_T(const SortedSample& s, double a) {
  if (!(a > 0)) throw std::invalid_argument("statistic_T: a must be > 0");
  StepFunction hazard = emp_cum_hazard(s);
  bool any_atom = false;
  for (double x : s.obs())
    if (x <= a) any_atom = true;
  if (!any_atom) return 0.0;
  ConvexPL hull = gcm_of_step(hazard, a);
  double sum = 0.0;
  for (double x : s.obs()) {
    if (x > a) continue;
    if (hazard.infinite_left_limit_at(x))
      throw std::domain_error("statistic_T: atom with infinite left limit");
    sum += hazard.left_limit(x) - hull(x);
  }
  return std::max(sum, 0.0) / static_cast<double>(s.n());
}

double statistic_U(const SortedSample& s, double a) {
  if (!(a > 0)) throw std::invalid_argument("statistic_U: a must be > 0");
  bool any_atom = false;
  for (double x : s.obs())
    if (x < a) any_atom = true;
  if (!any_atom) return 0.0;
  StepFunction cdf = ecdf(s);
  IsotonicEstimators est = isotonic_estimators(s, a);
  double sum = 0.0;
  for (double x : s.obs()) {
    if (x >= a) continue;
    sum += cdf.left_limit(x) - est.cdf(x);
  }
  return std::max(sum, 0.0) / static_cast<double>(s.n());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

TestReport standardize(double value, StatKind kind, std::size_t n,
                       const HazardModel& model, double a,
                       const CanonicalConstants& constants) {
  if (value < 0) throw std::invalid_argument("standardize: statistic must be >= 0");
  AsymptoticConstants ac = asymptotic_constants(model, a, constants);
  double mean_integral = kind == StatKind::T ? ac.mean_T_integral : ac.mean_U_integral;
  double var = kind == StatKind::T ? ac.var_T : ac.var_U;
  if (!(var > 0))
    throw std::invalid_argument("standardize: nonpositive target variance (missing constants?)");
  double nn = static_cast<double>(n);
  TestReport r;
  r.kind = kind;
  r.value = value;
  r.n = n;
  r.a = a;
  r.mu_n = std::pow(nn, -2.0 / 3.0) * constants.e_abs_c0 * mean_integral;
  r.scale = std::sqrt(var);
  r.z = std::pow(nn, 5.0 / 6.0) * (value - *r.mu_n) / *r.scale;
  r.p_value = 1.0 - normal_cdf(*r.z);
  r.calibration_mode = "model";
  r.diagnostics["F0_a"] = model.F0(a);
  r.diagnostics["mean_integral"] = mean_integral;
  r.diagnostics["target_var"] = var;
  return r;
}

}  // namespace gcmhaz
