#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gcmhaz {

// Right-continuous nondecreasing step function on [0, inf).
//
// The function equals initial_value on [0, jump_points[0]) and values[k] on
// [jump_points[k], jump_points[k+1]).  An optional sentinel index marks the
// first jump at and after which the function is +infinity (the empirical
// cumulative hazard is infinite at and after the largest observation).
class StepFunction {
 public:
  static constexpr std::size_t kNoInfinity = static_cast<std::size_t>(-1);

  StepFunction(std::vector<double> jump_points, std::vector<double> values,
               double initial_value, std::size_t infinite_from = kNoInfinity)
      : jumps_(std::move(jump_points)),
        values_(std::move(values)),
        initial_(initial_value),
        infinite_from_(infinite_from) {
    if (jumps_.size() != values_.size())
      throw std::invalid_argument("StepFunction: jumps/values size mismatch");
    double prev_x = -std::numeric_limits<double>::infinity();
    double prev_v = initial_;
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
      if (!(jumps_[k] > prev_x))
        throw std::invalid_argument("StepFunction: jump points not strictly increasing");
      prev_x = jumps_[k];
      if (infinite_from_ == kNoInfinity || k < infinite_from_) {
        if (values_[k] < prev_v)
          throw std::invalid_argument("StepFunction: values decreasing");
        prev_v = values_[k];
      }
    }
  }

  // Right-continuous evaluation.
  double operator()(double x) const {
    std::size_t k = segment_at(x);
    if (k == 0) return initial_;
    return value_of(k - 1);
  }

  // Left-limit evaluation: value of the segment strictly left of x.
  double left_limit(double x) const {
    std::size_t k = segment_before(x);
    if (k == 0) return initial_;
    return value_of(k - 1);
  }

  bool infinite_at(double x) const {
    if (infinite_from_ == kNoInfinity) return false;
    return x >= jumps_[infinite_from_];
  }

  bool infinite_left_limit_at(double x) const {
    if (infinite_from_ == kNoInfinity) return false;
    return segment_before(x) > infinite_from_;
  }

  const std::vector<double>& jump_points() const { return jumps_; }
  const std::vector<double>& values() const { return values_; }
  double initial_value() const { return initial_; }
  std::size_t infinite_from() const { return infinite_from_; }

 private:
  // Number of jumps at or before x.
  std::size_t segment_at(double x) const {
    return std::upper_bound(jumps_.begin(), jumps_.end(), x) - jumps_.begin();
  }
  // Number of jumps strictly before x.
  std::size_t segment_before(double x) const {
    return std::lower_bound(jumps_.begin(), jumps_.end(), x) - jumps_.begin();
  }
  double value_of(std::size_t k) const {
    if (infinite_from_ != kNoInfinity && k >= infinite_from_)
      return std::numeric_limits<double>::infinity();
    return values_[k];
  }

  std::vector<double> jumps_;
  std::vector<double> values_;
  double initial_;
  std::size_t infinite_from_;
};

}  // namespace gcmhaz
