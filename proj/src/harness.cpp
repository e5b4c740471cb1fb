#include "gcmhaz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gcmhaz/gcm.hpp"
#include "gcmhaz/parallel.hpp"
#include "gcmhaz/rng.hpp"

namespace gcmhaz {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
  double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  double pos = p * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

QuantileSummary summarize_quantiles(std::vector<double> draws) {
  std::sort(draws.begin(), draws.end());
  std::size_t R = draws.size();
  // se(q_p) ~ sqrt(p(1-p)/R) / f(q_p); the density is taken from a local
  // difference quotient of order statistics around the quantile.
  auto order_se = [&](double p) {
    double half = 1.6 * std::sqrt(p * (1.0 - p) / static_cast<double>(R));
    double lo_p = std::max(p - half, 0.0), hi_p = std::min(p + half, 1.0);
    return (quantile_sorted(draws, hi_p) - quantile_sorted(draws, lo_p)) *
           (1.6 / (hi_p - lo_p)) * std::sqrt(p * (1.0 - p) / static_cast<double>(R)) /
           1.6;
  };
  QuantileSummary s;
  s.q50 = quantile_sorted(draws, 0.50);
  s.q90 = quantile_sorted(draws, 0.90);
  s.q95 = quantile_sorted(draws, 0.95);
  s.se50 = order_se(0.50);
  s.se90 = order_se(0.90);
  s.se95 = order_se(0.95);
  return s;
}

}  // namespace

BlockPartition build_partition(std::uint64_t n, double a) {
  if (!(a > 0)) throw std::invalid_argument("build_partition: a must be > 0");
  if (n < 3) throw std::invalid_argument("build_partition: n too small");
  double ncbrt = std::cbrt(static_cast<double>(n));
  double logn = std::log(static_cast<double>(n));
  double big = logn / ncbrt;
  double small = 2.0 * std::sqrt(logn) / ncbrt;
  if (big + small > a)
    throw std::invalid_argument(
        "build_partition: n too small for one big block on [0,a); increase n");
  std::size_t m = static_cast<std::size_t>(std::floor(a / (big + small)));
  // Rescale so the m L-blocks tile [0, a) exactly.
  double scale = a / (static_cast<double>(m) * (big + small));
  big *= scale;
  small *= scale;

  BlockPartition part;
  part.n = n;
  part.a = a;
  part.big_len = big;
  part.small_len = small;
  part.m = m;
  double half = 0.5 * small;
  double len_L = big + small;
  part.l_bounds.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    part.l_bounds[k] = (k == m) ? a : static_cast<double>(k) * len_L;
  for (std::size_t k = 0; k < m; ++k) {
    double lo = part.l_bounds[k];
    double hi = part.l_bounds[k + 1];
    part.small.push_back({lo, lo + half});
    part.big.push_back({lo + half, hi - half});
    part.small.push_back({hi - half, hi});
  }
  return part;
}

SurrogatePath simulate_surrogate_path(const HazardModel& model, double n, double a,
                                      double delta_x, std::uint64_t seed,
                                      std::uint64_t stream, bool noise_off) {
  if (!(a > 0) || !(delta_x > 0))
    throw std::invalid_argument("simulate_surrogate_path: a and delta_x must be > 0");
  if (model.F0(a) >= 1.0 - 1e-12)
    throw std::invalid_argument("simulate_surrogate_path: F0(a) too close to 1");
  std::size_t steps = static_cast<std::size_t>(std::lround(a / delta_x));
  if (steps < 2) throw std::invalid_argument("simulate_surrogate_path: grid too coarse");
  double dx = a / static_cast<double>(steps);

  SurrogatePath path;
  path.delta_x = dx;
  path.a = a;
  path.xs.resize(steps + 1);
  path.values.resize(steps + 1);
  RngStream rng(seed, stream);
  double scale = noise_off ? 0.0 : 1.0 / std::sqrt(n);
  double w = 0.0;
  double g_prev = 0.0;
  path.xs[0] = 0.0;
  path.values[0] = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    double x = static_cast<double>(i) * dx;
    double F = model.F0(x);
    double g = F / (1.0 - F);
    w += std::sqrt(g - g_prev) * rng.gaussian();
    g_prev = g;
    path.xs[i] = x;
    path.values[i] = model.H0(x) + scale * w;
  }
  return path;
}

double simulate_surrogate_Dn(const HazardModel& model, double n, double a,
                             double delta_x, std::uint64_t seed,
                             std::uint64_t stream, bool noise_off) {
  SurrogatePath path = simulate_surrogate_path(model, n, a, delta_x, seed, stream, noise_off);
  std::size_t np = path.values.size();
  std::vector<double> hull(np);
  gcm_values_on_grid(path.xs, path.values, hull);
  // int (V_n - C_n) dF0 by trapezoid against the density f0.
  double s = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double w = (i == 0 || i + 1 == np) ? 0.5 : 1.0;
    s += w * (path.values[i] - hull[i]) * model.f0(path.xs[i]);
  }
  return s * path.delta_x;
}

LocalizationReport localization_check(const HazardModel& model, std::uint64_t n,
                                      double a, double delta_x,
                                      std::uint64_t replications, std::uint64_t seed) {
  BlockPartition part = build_partition(n, a);
  LocalizationReport rep;
  rep.n = n;
  rep.a = a;
  rep.replications = replications;
  rep.m = part.m;

  std::vector<std::uint64_t> big_mismatch_r(replications, 0), small_empty_r(replications, 0);
  // hull discrepancies of interest live at the n^{-2/3} vertical scale, so
  // the equality tolerance follows it (floored well above roundoff)
  const double tol =
      std::max(1e-12, 1e-3 * std::pow(static_cast<double>(n), -2.0 / 3.0));
  parallel_for(replications, [&](std::uint64_t r) {
    SurrogatePath path =
        simulate_surrogate_path(model, static_cast<double>(n), a, delta_x, seed, r);
    std::size_t np = path.values.size();
    std::vector<double> global(np);
    gcm_values_on_grid(path.xs, path.values, global);
    auto knots = gcm_knot_indices(path.xs, path.values);

    auto index_of = [&](double x) {
      std::size_t i = static_cast<std::size_t>(std::lround(x / path.delta_x));
      return std::min(i, np - 1);
    };
    for (std::size_t k = 0; k < part.m; ++k) {
      // Local hull on the enclosing L-block, compared on the big block.
      std::size_t lo = index_of(part.l_bounds[k]);
      std::size_t hi = index_of(part.l_bounds[k + 1]);
      std::size_t cnt = hi - lo + 1;
      std::vector<double> local(cnt);
      gcm_values_on_grid(std::span(path.xs).subspan(lo, cnt),
                         std::span(path.values).subspan(lo, cnt), local);
      std::size_t blo = index_of(part.big[k].lo), bhi = index_of(part.big[k].hi);
      double sup = 0.0;
      for (std::size_t i = blo; i <= bhi; ++i)
        sup = std::max(sup, std::abs(global[i] - local[i - lo]));
      if (sup > tol) ++big_mismatch_r[r];
    }
    for (const auto& blk : part.small) {
      bool has_knot = false;
      for (std::size_t idx : knots) {
        double x = path.xs[idx];
        if (x > blk.lo && x < blk.hi) {
          has_knot = true;
          break;
        }
      }
      if (!has_knot) ++small_empty_r[r];
    }
  });
  std::uint64_t big_mismatch = 0, small_empty = 0;
  for (std::uint64_t r = 0; r < replications; ++r) {
    big_mismatch += big_mismatch_r[r];
    small_empty += small_empty_r[r];
  }
  double big_total = static_cast<double>(replications) * static_cast<double>(part.m);
  double small_total = static_cast<double>(replications) * static_cast<double>(part.small.size());
  rep.big_mismatch_freq = static_cast<double>(big_mismatch) / big_total;
  rep.small_no_knot_freq = static_cast<double>(small_empty) / small_total;
  return rep;
}

ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "surrogate") return ExperimentKind::Surrogate;
  if (s == "T") return ExperimentKind::EmpiricalT;
  if (s == "U") return ExperimentKind::EmpiricalU;
  throw std::invalid_argument("unknown experiment kind '" + s + "'");
}

double ks_distance_normal(std::vector<double> draws, double variance) {
  if (!(variance > 0)) throw std::invalid_argument("ks_distance_normal: variance <= 0");
  std::sort(draws.begin(), draws.end());
  double sd = std::sqrt(variance);
  double d = 0.0;
  std::size_t n = draws.size();
  for (std::size_t i = 0; i < n; ++i) {
    double F = normal_cdf(draws[i] / sd);
    double lo = static_cast<double>(i) / static_cast<double>(n);
    double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max({d, std::abs(F - lo), std::abs(F - hi)});
  }
  return d;
}

double ks_asymptotic_p(double distance, std::size_t n) {
  double rn = std::sqrt(static_cast<double>(n));
  double lambda = (rn + 0.12 + 0.11 / rn) * distance;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

CLTReport clt_experiment(ExperimentKind kind, const HazardModel& model, double a,
                         double n, std::uint64_t replications,
                         const CanonicalConstants& constants, std::uint64_t seed,
                         double delta_x) {
  if (replications < 100)
    throw std::invalid_argument("clt_experiment: need at least 100 replications");
  if (model.constant_hazard)
    throw std::invalid_argument(
        "clt_experiment: constant hazard is outside the normal-limit regime; "
        "use the constant-hazard experiment");
  AsymptoticConstants ac = asymptotic_constants(model, a, constants);
  bool is_u = kind == ExperimentKind::EmpiricalU;
  double mean_integral = is_u ? ac.mean_U_integral : ac.mean_T_integral;
  double target_var = is_u ? ac.var_U : ac.var_T;
  double mu_n = std::pow(n, -2.0 / 3.0) * constants.e_abs_c0 * mean_integral;

  std::vector<double> values(replications);
  parallel_for(replications, [&](std::uint64_t r) {
    switch (kind) {
      case ExperimentKind::Surrogate:
        values[r] = simulate_surrogate_Dn(model, n, a, delta_x, seed, r);
        break;
      case ExperimentKind::EmpiricalT: {
        SortedSample s = sample_from(model, static_cast<std::size_t>(n), seed, r);
        values[r] = statistic_T(s, a);
        break;
      }
      case ExperimentKind::EmpiricalU: {
        SortedSample s = sample_from(model, static_cast<std::size_t>(n), seed, r);
        values[r] = statistic_U(s, a);
        break;
      }
    }
  });

  CLTReport rep;
  rep.kind = kind == ExperimentKind::Surrogate ? "surrogate" : (is_u ? "U" : "T");
  rep.model = model.spec_string();
  rep.a = a;
  rep.n = n;
  rep.replications = replications;
  rep.seed = seed;
  rep.standardized.resize(replications);
  double scale = std::pow(n, 5.0 / 6.0);
  for (std::uint64_t r = 0; r < replications; ++r)
    rep.standardized[r] = scale * (values[r] - mu_n);
  rep.sample_mean = mean_of(rep.standardized);
  rep.sample_var = var_of(rep.standardized);
  rep.target_var = target_var;
  rep.var_ratio = rep.sample_var / target_var;
  rep.ks_distance = ks_distance_normal(rep.standardized, target_var);
  rep.ks_p = ks_asymptotic_p(rep.ks_distance, rep.standardized.size());
  rep.mean_check_mc = std::pow(n, 2.0 / 3.0) * mean_of(values);
  rep.mean_check_target = constants.e_abs_c0 * mean_integral;
  return rep;
}

ConstantHazardReport constant_hazard_experiment(double lambda, double a,
                                                std::uint64_t n,
                                                std::uint64_t replications,
                                                double delta_x, std::uint64_t seed) {
  HazardModel model = make_model("exponential:" + std::to_string(lambda));
  if (model.F0(a) >= 1.0 - 1e-12)
    throw std::invalid_argument("constant_hazard_experiment: F0(a) too close to 1");
  if (replications < 100)
    throw std::invalid_argument("constant_hazard_experiment: need at least 100 replications");

  ConstantHazardReport rep;
  rep.lambda = lambda;
  rep.a = a;
  rep.n = n;
  rep.replications = replications;

  double root_n = std::sqrt(static_cast<double>(n));
  rep.scaled_draws.resize(replications);
  parallel_for(replications, [&](std::uint64_t r) {
    SortedSample s = sample_from(model, n, seed, r);
    rep.scaled_draws[r] = root_n * statistic_U(s, a);
  });

  // Limit draws: U = int {1-F0} {B - C} dF0 with B = W(F0/(1-F0)) and C
  // the GCM of B on [0, a]; no n enters.
  std::size_t steps = static_cast<std::size_t>(std::lround(a / delta_x));
  double dx = a / static_cast<double>(steps);
  rep.limit_draws.resize(replications);
  std::vector<double> xs(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) xs[i] = static_cast<double>(i) * dx;
  parallel_for(replications, [&](std::uint64_t r) {
    std::vector<double> b(steps + 1), hull(steps + 1);
    RngStream rng(seed, (1ULL << 32) + r);
    double g_prev = 0.0, w = 0.0;
    b[0] = 0.0;
    for (std::size_t i = 1; i <= steps; ++i) {
      double F = model.F0(xs[i]);
      double g = F / (1.0 - F);
      w += std::sqrt(g - g_prev) * rng.gaussian();
      g_prev = g;
      b[i] = w;
    }
    gcm_values_on_grid(xs, b, hull);
    double s = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
      double wt = (i == 0 || i == steps) ? 0.5 : 1.0;
      double surv = 1.0 - model.F0(xs[i]);
      s += wt * surv * (b[i] - hull[i]) * model.f0(xs[i]);
    }
    rep.limit_draws[r] = s * dx;
  });

  rep.scaled_statistic = summarize_quantiles(rep.scaled_draws);
  rep.limit = summarize_quantiles(rep.limit_draws);
  return rep;
}

}  // namespace gcmhaz
