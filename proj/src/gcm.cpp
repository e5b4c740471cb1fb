#include "gcmhaz/gcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcmhaz {

namespace {

bool slope_not_below(double s_prev, double s_next) {
  // Collapse collinear knots: treat slopes equal to within 1e-14 relative
  // as a violation so the middle point is removed.
  double tol = 1e-14 * std::max({1.0, std::abs(s_prev), std::abs(s_next)});
  return s_prev >= s_next - tol;
}

}  // namespace

ConvexPL::ConvexPL(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.empty() || xs_.size() != ys_.size())
    throw std::invalid_argument("ConvexPL: empty or mismatched knot lists");
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    if (!(xs_[i] < xs_[i + 1]))
      throw std::invalid_argument("ConvexPL: knot x not strictly increasing");
  }
  for (std::size_t i = 0; i + 2 < xs_.size(); ++i) {
    double s1 = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    double s2 = (ys_[i + 2] - ys_[i + 1]) / (xs_[i + 2] - xs_[i + 1]);
    double tol = 1e-9 * std::max({1.0, std::abs(s1), std::abs(s2)});
    if (s1 > s2 + tol)
      throw std::invalid_argument("ConvexPL: slopes decreasing (not convex)");
  }
}

double ConvexPL::operator()(double x) const {
  if (x < xs_.front() || x > xs_.back())
    throw std::domain_error("ConvexPL: evaluation outside knot span");
  if (xs_.size() == 1) return ys_.front();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t hi = std::min<std::size_t>(it - xs_.begin(), xs_.size() - 1);
  if (hi == 0) hi = 1;
  std::size_t lo = hi - 1;
  double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return ys_[lo] + t * (ys_[hi] - ys_[lo]);
}

double ConvexPL::final_slope() const {
  if (xs_.size() < 2) return 0.0;
  std::size_t m = xs_.size();
  return (ys_[m - 1] - ys_[m - 2]) / (xs_[m - 1] - xs_[m - 2]);
}

std::vector<std::size_t> gcm_knot_indices(std::span<const double> xs,
                                          std::span<const double> ys) {
  std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("gcm: empty input");
  if (ys.size() != n) throw std::invalid_argument("gcm: xs/ys size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(ys[i])) throw std::invalid_argument("gcm: non-finite y");
    if (i + 1 < n && !(xs[i] < xs[i + 1]))
      throw std::invalid_argument("gcm: x not strictly increasing");
  }
  std::vector<std::size_t> hull;
  hull.reserve(64);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double s1 = (ys[b] - ys[a]) / (xs[b] - xs[a]);
      double s2 = (ys[i] - ys[b]) / (xs[i] - xs[b]);
      if (slope_not_below(s1, s2))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  return hull;
}

ConvexPL gcm_points(std::span<const double> xs, std::span<const double> ys) {
  auto idx = gcm_knot_indices(xs, ys);
  std::vector<double> hx(idx.size()), hy(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    hx[k] = xs[idx[k]];
    hy[k] = ys[idx[k]];
  }
  return ConvexPL(std::move(hx), std::move(hy));
}

ConvexPL gcm_points(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> xs(points.size()), ys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    xs[i] = points[i].first;
    ys[i] = points[i].second;
  }
  return gcm_points(xs, ys);
}

ConvexPL gcm_sampled_path(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2) throw std::invalid_argument("gcm_sampled_path: need >= 2 grid points");
  return gcm_points(xs, ys);
}

void gcm_values_on_grid(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out) {
  auto idx = gcm_knot_indices(xs, ys);
  if (out.size() != ys.size())
    throw std::invalid_argument("gcm_values_on_grid: bad output size");
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    std::size_t i0 = idx[k], i1 = idx[k + 1];
    double x0 = xs[i0], y0 = ys[i0];
    double slope = (ys[i1] - y0) / (xs[i1] - x0);
    for (std::size_t i = i0; i < i1; ++i) out[i] = y0 + slope * (xs[i] - x0);
  }
  out[idx.back()] = ys[idx.back()];
  if (idx.size() == 1) out[idx[0]] = ys[idx[0]];
}

ConvexPL gcm_of_step(const StepFunction& f, double a) {
  if (!(a > 0)) throw std::invalid_argument("gcm_of_step: a must be > 0");
  std::vector<double> xs, ys;
  xs.push_back(0.0);
  ys.push_back(f.left_limit(0.0));
  const auto& jumps = f.jump_points();
  bool a_is_jump = false;
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    double t = jumps[k];
    if (t <= 0.0 || t > a) continue;
    if (f.infinite_left_limit_at(t)) continue;
    // The minorant is continuous, so the binding constraint at a jump is
    // the left limit f(t-).
    xs.push_back(t);
    ys.push_back(f.left_limit(t));
    if (t == a) a_is_jump = true;
  }
  if (!a_is_jump && !f.infinite_at(a)) {
    xs.push_back(a);
    ys.push_back(f(a));
  }
  if (xs.size() == 1) {
    // No usable constraints beyond the origin (everything in (0,a] infinite).
    throw std::invalid_argument("gcm_of_step: no finite constraints on (0,a]");
  }
  return gcm_points(xs, ys);
}

}  // namespace gcmhaz
