#include "gcmhaz/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gcmhaz/gcm.hpp"
#include "gcmhaz/parallel.hpp"
#include "gcmhaz/rng.hpp"
#include "gcmhaz/version.hpp"

namespace gcmhaz {

namespace {

// Trapezoid integral of sampled values over index range [i0, i1].
double trapezoid(const std::vector<double>& v, std::size_t i0, std::size_t i1,
                 double delta) {
  double s = 0.5 * (v[i0] + v[i1]);
  for (std::size_t i = i0 + 1; i < i1; ++i) s += v[i];
  return s * delta;
}

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
  double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// SE of a statistic computed on batches of replicates.
double batch_se(const std::vector<double>& batch_values) {
  return std::sqrt(sample_var(batch_values) / static_cast<double>(batch_values.size()));
}

}  // namespace

PathSim simulate_V(double x_lo, double x_hi, double delta, std::uint64_t seed,
                   std::uint64_t stream, bool noise_off) {
  if (!(delta > 0)) throw std::invalid_argument("simulate_V: delta must be > 0");
  if (!(x_lo < x_hi)) throw std::invalid_argument("simulate_V: degenerate window");
  // Grid anchored at 0 so that x = 0 is always a grid point.
  long m = std::lround(std::ceil(std::max(0.0, -x_lo) / delta));
  long p = std::lround(std::ceil(std::max(0.0, x_hi) / delta));
  if (m + p < 1) throw std::invalid_argument("simulate_V: window does not straddle a grid step");
  PathSim path;
  path.delta = delta;
  path.x_lo = -static_cast<double>(m) * delta;
  path.x_hi = static_cast<double>(p) * delta;
  path.seed = seed;
  path.stream = stream;
  std::size_t n = static_cast<std::size_t>(m + p + 1);
  path.xs.resize(n);
  path.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    path.xs[i] = (static_cast<double>(i) - static_cast<double>(m)) * delta;

  double sd = std::sqrt(delta);
  std::size_t origin = static_cast<std::size_t>(m);
  path.values[origin] = 0.0;
  if (noise_off) {
    for (std::size_t i = 0; i < n; ++i) path.values[i] = 0.0;
  } else {
    RngStream pos(seed, 2 * stream);
    double w = 0.0;
    for (std::size_t i = origin + 1; i < n; ++i) {
      w += sd * pos.gaussian();
      path.values[i] = w;
    }
    RngStream neg(seed, 2 * stream + 1);
    w = 0.0;
    for (std::size_t i = origin; i-- > 0;) {
      w += sd * neg.gaussian();
      path.values[i] = w;
    }
  }
  for (std::size_t i = 0; i < n; ++i) path.values[i] += path.xs[i] * path.xs[i];
  return path;
}

double q_c(const PathSim& path, double c) {
  if (!(c > 0)) throw std::invalid_argument("q_c: c must be > 0");
  if (path.x_lo > -1.0 || path.x_hi < c + 1.0)
    throw std::invalid_argument("q_c: window too small for requested c");
  std::vector<double> hull(path.values.size());
  gcm_values_on_grid(path.xs, path.values, hull);
  std::size_t i0 = static_cast<std::size_t>(std::lround(-path.x_lo / path.delta));
  std::size_t ic = static_cast<std::size_t>(std::lround((c - path.x_lo) / path.delta));
  std::vector<double> excess(path.values.size());
  for (std::size_t i = i0; i <= ic; ++i) excess[i] = path.values[i] - hull[i];
  return trapezoid(excess, i0, ic, path.delta);
}

std::vector<std::vector<double>> block_integrals(const ConstantsBudget& budget,
                                                 std::uint64_t seed) {
  long blocks = std::lround(budget.c);
  if (blocks < 1) throw std::invalid_argument("block_integrals: c must be a positive integer");
  long per_unit = std::lround(1.0 / budget.delta);
  if (per_unit < 2) throw std::invalid_argument("block_integrals: delta too coarse");
  double delta = 1.0 / static_cast<double>(per_unit);

  std::vector<std::vector<double>> d(budget.replications);
  parallel_for(budget.replications, [&](std::uint64_t r) {
    PathSim path = simulate_V(-budget.l_pad, budget.c + budget.l_pad, delta, seed, r);
    std::vector<double> hull(path.values.size());
    gcm_values_on_grid(path.xs, path.values, hull);
    for (std::size_t i = 0; i < hull.size(); ++i) hull[i] = path.values[i] - hull[i];
    std::size_t i0 = static_cast<std::size_t>(std::lround(-path.x_lo / delta));
    d[r].resize(blocks);
    for (long k = 0; k < blocks; ++k) {
      std::size_t lo = i0 + static_cast<std::size_t>(k) * per_unit;
      d[r][k] = trapezoid(hull, lo, lo + per_unit, delta);
    }
  });
  return d;
}

namespace {

void validate_budget(const ConstantsBudget& budget) {
  if (budget.c < 50.0)
    throw std::invalid_argument("estimate_constants: c must be >= 50");
  if (budget.replications < 40)
    throw std::invalid_argument("estimate_constants: too few replications to resolve SEs");
  if (!(budget.delta > 0)) throw std::invalid_argument("estimate_constants: delta must be > 0");
  if (!(budget.l_pad > 0)) throw std::invalid_argument("estimate_constants: l_pad must be > 0");
}

ConstantsEstimate estimate_from_blocks(const std::vector<std::vector<double>>& d,
                                       const ConstantsBudget& budget,
                                       std::uint64_t seed) {
  std::size_t R = d.size();
  long K = std::lround(budget.c);

  std::vector<double> q(R, 0.0);
  double e_hat = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    q[r] = std::accumulate(d[r].begin(), d[r].end(), 0.0);
    e_hat += q[r];
  }
  e_hat /= static_cast<double>(R) * static_cast<double>(K);

  // Block autocovariances gamma_l, pooled over replicates; the process of
  // unit-block integrals is stationary, so every (k, k+l) pair contributes.
  std::size_t max_lag = static_cast<std::size_t>(K) / 2;
  std::vector<std::vector<double>> gamma_rep(max_lag + 1, std::vector<double>(R));
  for (std::size_t l = 0; l <= max_lag; ++l) {
    for (std::size_t r = 0; r < R; ++r) {
      double s = 0.0;
      for (long k = 0; k + static_cast<long>(l) < K; ++k)
        s += (d[r][k] - e_hat) * (d[r][k + l] - e_hat);
      gamma_rep[l][r] = s / static_cast<double>(K - static_cast<long>(l));
    }
  }
  std::vector<double> gamma(max_lag + 1), gamma_se(max_lag + 1);
  for (std::size_t l = 0; l <= max_lag; ++l) {
    gamma[l] = sample_mean(gamma_rep[l]);
    gamma_se[l] = std::sqrt(sample_var(gamma_rep[l]) / static_cast<double>(R));
  }

  // Truncate the covariance series at the first lag opening a run of three
  // consecutive lags with |gamma| below twice its MC standard error.
  std::size_t last_lag = max_lag;
  int small_run = 0;
  for (std::size_t l = 1; l <= max_lag; ++l) {
    if (std::abs(gamma[l]) < 2.0 * gamma_se[l]) {
      if (++small_run == 3) {
        last_lag = l - 3;
        break;
      }
    } else {
      small_run = 0;
    }
  }

  auto sigma2_cov_from = [&](std::size_t r_lo, std::size_t r_hi) {
    // Recompute the series on a replicate range with the global truncation lag.
    double s2 = 0.0;
    for (std::size_t l = 0; l <= last_lag; ++l) {
      double g = 0.0;
      for (std::size_t r = r_lo; r < r_hi; ++r) g += gamma_rep[l][r];
      g /= static_cast<double>(r_hi - r_lo);
      s2 += (l == 0 ? 1.0 : 2.0) * g;
    }
    return s2;
  };

  double sigma2_cov = sigma2_cov_from(0, R);
  double sigma2_qc = sample_var(q) / budget.c;

  // Batch SEs: split replicates into 20 equal batches.
  std::size_t B = std::min<std::size_t>(20, R / 2);
  std::vector<double> e_b(B), cov_b(B), qc_b(B);
  for (std::size_t b = 0; b < B; ++b) {
    std::size_t lo = b * R / B, hi = (b + 1) * R / B;
    double m = 0.0;
    for (std::size_t r = lo; r < hi; ++r) m += q[r];
    e_b[b] = m / (static_cast<double>(hi - lo) * static_cast<double>(K));
    cov_b[b] = sigma2_cov_from(lo, hi);
    std::vector<double> qs(q.begin() + lo, q.begin() + hi);
    qc_b[b] = sample_var(qs) / budget.c;
  }

  ConstantsEstimate out;
  out.constants.e_abs_c0 = e_hat;
  out.constants.sigma2 = sigma2_cov;
  out.constants.se_e_abs_c0 = batch_se(e_b);
  out.constants.se_sigma2 = batch_se(cov_b);
  out.constants.delta = budget.delta;
  out.constants.c = budget.c;
  out.constants.replications = budget.replications;
  out.constants.l_pad = budget.l_pad;
  out.constants.seed = seed;
  out.constants.version = kVersion;
  out.sigma2_qc = sigma2_qc;
  out.se_sigma2_qc = batch_se(qc_b);
  out.covariance_lags = static_cast<int>(last_lag);
  return out;
}

}  // namespace

ConstantsEstimate estimate_constants_detail(const ConstantsBudget& budget,
                                            std::uint64_t seed, bool noise_off) {
  validate_budget(budget);
  std::size_t R = budget.replications;
  long K = std::lround(budget.c);
  std::vector<std::vector<double>> d(R);
  if (!noise_off) {
    d = block_integrals(budget, seed);
  } else {
    for (std::size_t r = 0; r < R; ++r) d[r].assign(K, 0.0);
  }
  return estimate_from_blocks(d, budget, seed);
}

CanonicalConstants estimate_constants(const ConstantsBudget& budget, std::uint64_t seed) {
  return estimate_constants_detail(budget, seed).constants;
}

std::pair<ConstantsEstimate, ConstantsEstimate> estimate_constants_refinement(
    const ConstantsBudget& budget, std::uint64_t seed) {
  validate_budget(budget);
  long blocks = std::lround(budget.c);
  long per_unit = std::lround(1.0 / budget.delta);
  if (per_unit < 2)
    throw std::invalid_argument("estimate_constants_refinement: delta too coarse");
  long per_unit_fine = 2 * per_unit;
  double delta_fine = 1.0 / static_cast<double>(per_unit_fine);

  std::size_t R = budget.replications;
  std::vector<std::vector<double>> d_coarse(R), d_fine(R);
  parallel_for(R, [&](std::uint64_t r) {
    PathSim path =
        simulate_V(-budget.l_pad, budget.c + budget.l_pad, delta_fine, seed, r);
    std::size_t i0 = static_cast<std::size_t>(std::lround(-path.x_lo / delta_fine));

    std::vector<double> hull(path.values.size());
    gcm_values_on_grid(path.xs, path.values, hull);
    for (std::size_t i = 0; i < hull.size(); ++i) hull[i] = path.values[i] - hull[i];
    d_fine[r].resize(blocks);
    for (long k = 0; k < blocks; ++k) {
      std::size_t lo = i0 + static_cast<std::size_t>(k) * per_unit_fine;
      d_fine[r][k] = trapezoid(hull, lo, lo + per_unit_fine, delta_fine);
    }

    // every-other subsample of the same Brownian path, aligned at x = 0
    std::size_t parity = i0 % 2;
    std::vector<double> xs2, v2;
    xs2.reserve(path.xs.size() / 2 + 1);
    for (std::size_t i = parity; i < path.xs.size(); i += 2) {
      xs2.push_back(path.xs[i]);
      v2.push_back(path.values[i]);
    }
    std::vector<double> hull2(v2.size());
    gcm_values_on_grid(xs2, v2, hull2);
    for (std::size_t i = 0; i < hull2.size(); ++i) hull2[i] = v2[i] - hull2[i];
    std::size_t j0 = (i0 - parity) / 2;
    double delta2 = 2.0 * delta_fine;
    d_coarse[r].resize(blocks);
    for (long k = 0; k < blocks; ++k) {
      std::size_t lo = j0 + static_cast<std::size_t>(k) * per_unit;
      d_coarse[r][k] = trapezoid(hull2, lo, lo + per_unit, delta2);
    }
  });

  ConstantsBudget coarse = budget;
  coarse.delta = 2.0 * delta_fine;
  ConstantsBudget fine = budget;
  fine.delta = delta_fine;
  return {estimate_from_blocks(d_coarse, coarse, seed),
          estimate_from_blocks(d_fine, fine, seed)};
}

std::vector<TailPoint> tail_check(const std::vector<double>& z_values,
                                  std::uint64_t replications, double delta,
                                  double window, std::uint64_t seed) {
  for (double z : z_values)
    if (!(z >= 0)) throw std::invalid_argument("tail_check: z values must be >= 0");
  if (!(delta > 0) || !(window > 0))
    throw std::invalid_argument("tail_check: delta and window must be > 0");
  long steps = std::lround(window / delta);
  double sd = std::sqrt(delta);
  std::vector<double> vmins(replications);
  parallel_for(replications, [&](std::uint64_t r) {
    // Only the minimum of V is needed; track it side by side, no hull.
    double vmin = 0.0;
    for (int side = 0; side < 2; ++side) {
      RngStream rng(seed, 2 * r + static_cast<std::uint64_t>(side));
      double w = 0.0;
      for (long i = 1; i <= steps; ++i) {
        w += sd * rng.gaussian();
        double x = static_cast<double>(i) * delta;
        double v = w + x * x;
        if (v < vmin) vmin = v;
      }
    }
    vmins[r] = vmin;
  });
  std::vector<std::uint64_t> hits(z_values.size(), 0);
  for (std::uint64_t r = 0; r < replications; ++r)
    for (std::size_t j = 0; j < z_values.size(); ++j)
      if (vmins[r] <= -z_values[j]) ++hits[j];
  std::vector<TailPoint> out(z_values.size());
  double R = static_cast<double>(replications);
  for (std::size_t j = 0; j < z_values.size(); ++j) {
    double p = static_cast<double>(hits[j]) / R;
    out[j].z = z_values[j];
    out[j].p_hat = p;
    out[j].se = std::sqrt(std::max(p * (1.0 - p), 1.0 / (R * R)) / R);
    out[j].airy_prediction =
        2.0 / std::sqrt(3.0) *
        std::exp(-8.0 * std::pow(z_values[j], 1.5) / std::sqrt(27.0));
    out[j].hits = hits[j];
  }
  return out;
}

namespace {

// Integrated excess of a x^2 + W(b x) over [0, c], hull over the full window.
double integrated_excess(double a_coef, double b_coef, double c, double pad,
                         double delta, std::uint64_t seed, std::uint64_t stream) {
  long m = std::lround(std::ceil(pad / delta));
  long p = std::lround(std::ceil((c + pad) / delta));
  std::size_t n = static_cast<std::size_t>(m + p + 1);
  std::vector<double> xs(n), v(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = (static_cast<double>(i) - static_cast<double>(m)) * delta;
  double sd = std::sqrt(b_coef * delta);
  std::size_t origin = static_cast<std::size_t>(m);
  v[origin] = 0.0;
  RngStream pos(seed, 2 * stream);
  double w = 0.0;
  for (std::size_t i = origin + 1; i < n; ++i) v[i] = (w += sd * pos.gaussian());
  RngStream neg(seed, 2 * stream + 1);
  w = 0.0;
  for (std::size_t i = origin; i-- > 0;) v[i] = (w += sd * neg.gaussian());
  for (std::size_t i = 0; i < n; ++i) v[i] += a_coef * xs[i] * xs[i];
  std::vector<double> hull(n);
  gcm_values_on_grid(xs, v, hull);
  for (std::size_t i = 0; i < n; ++i) hull[i] = v[i] - hull[i];
  std::size_t ic = origin + static_cast<std::size_t>(std::lround(c / delta));
  return trapezoid(hull, origin, ic, delta);
}

}  // namespace

ScalingReport scaling_check(double a_coef, double b_coef, double c,
                            std::uint64_t replications, double delta, double l_pad,
                            std::uint64_t seed) {
  if (!(a_coef > 0) || !(b_coef > 0))
    throw std::invalid_argument("scaling_check: coefficients must be > 0");
  if (replications < 40) throw std::invalid_argument("scaling_check: too few replications");
  double alpha = std::cbrt(b_coef) / std::pow(a_coef, 2.0 / 3.0);  // spatial scale
  double pad_scaled = l_pad * std::max(1.0, alpha);
  // grid step scaled along with the process so both paths are equally
  // resolved in canonical units and the discretization bias cancels in the
  // ratios
  double delta_scaled = delta * alpha;

  std::size_t R = replications;
  std::vector<double> y_scaled(R), y_std(R);
  parallel_for(R, [&](std::uint64_t r) {
    y_scaled[r] = integrated_excess(a_coef, b_coef, c, pad_scaled, delta_scaled, seed, r);
    y_std[r] = integrated_excess(1.0, 1.0, c, l_pad, delta, seed, R + r);
  });

  auto moment_se = [](const std::vector<double>& v, double& mean, double& se_mean,
                      double& var, double& se_var) {
    mean = sample_mean(v);
    var = sample_var(v);
    double m4 = 0.0;
    for (double x : v) m4 += std::pow(x - mean, 4.0);
    m4 /= static_cast<double>(v.size());
    se_mean = std::sqrt(var / static_cast<double>(v.size()));
    se_var = std::sqrt(std::max(m4 - var * var, 0.0) / static_cast<double>(v.size()));
  };
  double ms, ses, vs, sevs, m1, sem1, v1, sev1;
  moment_se(y_scaled, ms, ses, vs, sevs);
  moment_se(y_std, m1, sem1, v1, sev1);

  ScalingReport rep;
  rep.a_coef = a_coef;
  rep.b_coef = b_coef;
  rep.c = c;
  rep.replications = replications;
  rep.mean_ratio = ms / m1;
  rep.mean_ratio_se =
      rep.mean_ratio * std::sqrt(ses * ses / (ms * ms) + sem1 * sem1 / (m1 * m1));
  rep.mean_predicted = std::pow(b_coef, 2.0 / 3.0) / std::cbrt(a_coef);
  rep.var_ratio = vs / v1;
  rep.var_ratio_se =
      rep.var_ratio * std::sqrt(sevs * sevs / (vs * vs) + sev1 * sev1 / (v1 * v1));
  rep.var_predicted = std::pow(b_coef, 5.0 / 3.0) / std::pow(a_coef, 4.0 / 3.0);
  return rep;
}

}  // namespace gcmhaz
