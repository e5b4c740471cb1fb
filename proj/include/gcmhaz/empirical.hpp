#pragma once

#include <vector>

#include "gcmhaz/gcm.hpp"
#include "gcmhaz/step_function.hpp"

namespace gcmhaz {

// Order statistics of an i.i.d. sample of positive reals.  Ties are
// rejected by default (the model class is absolutely continuous); with
// jitter enabled tied values receive a deterministic offset of
// k * 1e-9 * range in index order.
class SortedSample {
 public:
  explicit SortedSample(std::vector<double> observations, bool jitter_ties = false);

  const std::vector<double>& obs() const { return obs_; }
  std::size_t n() const { return obs_.size(); }

 private:
  std::vector<double> obs_;
};

// Empirical distribution function: jumps of 1/n at each observation.
StepFunction ecdf(const SortedSample& s);

// Empirical cumulative hazard -log(1 - F_n): value -log(1 - k/n) at and
// after the k-th order statistic, infinite at and after the largest.
StepFunction emp_cum_hazard(const SortedSample& s);

struct IsotonicEstimators {
  ConvexPL cum_hazard;  // GCM of the empirical cumulative hazard on [0, a]

  // Isotonized distribution function 1 - exp(-cum_hazard(x)).
  double cdf(double x) const;
};

IsotonicEstimators isotonic_estimators(const SortedSample& s, double a);

}  // namespace gcmhaz
