#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gcmhaz/step_function.hpp"

namespace gcmhaz {

// Piecewise-linear convex function given by its knots.  Slopes between
// consecutive knots are nondecreasing; evaluation outside the knot span is
// an error rather than extrapolation.
class ConvexPL {
 public:
  ConvexPL(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  std::size_t num_knots() const { return xs_.size(); }
  const std::vector<double>& knot_x() const { return xs_; }
  const std::vector<double>& knot_y() const { return ys_; }

  // Left-derivative at the right end of the span (slope of the last segment).
  double final_slope() const;

 private:
  std::vector<double> xs_, ys_;
};

// Greatest convex minorant (lower convex hull) of a finite point set with
// strictly increasing x, restricted to [x_first, x_last].  Monotone-chain,
// O(n); collinear interior points are collapsed.
ConvexPL gcm_points(std::span<const double> xs, std::span<const double> ys);
ConvexPL gcm_points(const std::vector<std::pair<double, double>>& points);

// GCM of a cadlag step function over [0, a].  Constraints are the left
// limits at the jumps in (0, a] plus the origin (0, f(0-)) and, when a is
// not itself a jump and f(a) is finite, the endpoint (a, f(a)).  Jumps with
// infinite left limit and an infinite endpoint value are dropped, so the
// hull span ends at the last finite constraint.
ConvexPL gcm_of_step(const StepFunction& f, double a);

// GCM of a sampled path on a uniform grid.
ConvexPL gcm_sampled_path(std::span<const double> xs, std::span<const double> ys);

// In-place hull values: writes hull(x_i) for every grid point into `out`
// (same length as ys).  This is the workhorse for simulated paths, where
// the excess ys - hull is integrated afterwards.
void gcm_values_on_grid(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out);

// Indices of the hull knots of the sampled path (always includes first and
// last index).
std::vector<std::size_t> gcm_knot_indices(std::span<const double> xs,
                                          std::span<const double> ys);

}  // namespace gcmhaz
