#include "gcmhaz/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcmhaz {

SortedSample::SortedSample(std::vector<double> observations, bool jitter_ties)
    : obs_(std::move(observations)) {
  if (obs_.empty()) throw std::invalid_argument("SortedSample: empty sample");
  std::sort(obs_.begin(), obs_.end());
  for (double x : obs_) {
    if (!std::isfinite(x) || x <= 0.0)
      throw std::invalid_argument("SortedSample: observations must be positive finite");
  }
  bool has_ties = std::adjacent_find(obs_.begin(), obs_.end()) != obs_.end();
  if (has_ties) {
    if (!jitter_ties) throw std::invalid_argument("SortedSample: tied observations");
    double eps = 1e-9 * (obs_.back() - obs_.front());
    if (eps == 0.0) eps = 1e-9 * obs_.front();
    for (std::size_t k = 0; k < obs_.size(); ++k) obs_[k] += static_cast<double>(k) * eps;
    std::sort(obs_.begin(), obs_.end());
  }
}

StepFunction ecdf(const SortedSample& s) {
  std::size_t n = s.n();
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k)
    vals[k] = static_cast<double>(k + 1) / static_cast<double>(n);
  return StepFunction(s.obs(), std::move(vals), 0.0);
}

StepFunction emp_cum_hazard(const SortedSample& s) {
  std::size_t n = s.n();
  std::vector<double> vals(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k)
    vals[k] = -std::log1p(-static_cast<double>(k + 1) / static_cast<double>(n));
  // Infinite at and after the largest observation, where F_n hits 1.
  return StepFunction(s.obs(), std::move(vals), 0.0, n - 1);
}

double IsotonicEstimators::cdf(double x) const {
  return -std::expm1(-cum_hazard(x));
}

IsotonicEstimators isotonic_estimators(const SortedSample& s, double a) {
  if (!(a > 0)) throw std::invalid_argument("isotonic_estimators: a must be > 0");
  return IsotonicEstimators{gcm_of_step(emp_cum_hazard(s), a)};
}

}  // namespace gcmhaz
