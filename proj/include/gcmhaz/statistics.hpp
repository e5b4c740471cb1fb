#pragma once

#include <map>
#include <optional>
#include <string>

#include "gcmhaz/empirical.hpp"
#include "gcmhaz/models.hpp"

namespace gcmhaz {

enum class StatKind { T, U };

inline const char* to_string(StatKind k) { return k == StatKind::T ? "T" : "U"; }

// T_n: (1/n) sum over observations X_i <= a of H_n(X_i-) - Hhat_n(X_i),
// the L1 distance between the empirical cumulative hazard and its GCM,
// integrated against the empirical measure.  Exact atom sum; zero exactly
// when the GCM interpolates every left-limit constraint point.
double statistic_T(const SortedSample& s, double a);

// U_n: (1/n) sum over observations X_i in [0, a) of F_n(X_i-) - Fhat_n(X_i),
// with Fhat_n = 1 - exp(-Hhat_n).  Half-open interval at a.
double statistic_U(const SortedSample& s, double a);

struct TestReport {
  StatKind kind = StatKind::T;
  double value = 0.0;
  std::size_t n = 0;
  double a = 0.0;
  std::optional<double> mu_n;     // centering n^{-2/3} E|C(0)| * mean integral
  std::optional<double> scale;    // sqrt(sigma2_H0) or sqrt(sigma2_F0)
  std::optional<double> z;        // n^{5/6} (value - mu_n) / scale
  std::optional<double> p_value;  // one-sided upper tail
  std::string calibration_mode;   // "raw" or "model"
  std::map<std::string, double> diagnostics;
};

// Standardize a computed statistic under a user-supplied null model using
// Monte Carlo canonical constants.  One-sided: large values reject.
TestReport standardize(double value, StatKind kind, std::size_t n,
                       const HazardModel& model, double a,
                       const CanonicalConstants& constants);

double normal_cdf(double z);

}  // namespace gcmhaz
