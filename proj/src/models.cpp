#include "gcmhaz/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gcmhaz/quadrature.hpp"
#include "gcmhaz/rng.hpp"

namespace gcmhaz {

namespace {

std::vector<double> parse_params(const std::string& spec, std::size_t expected,
                                 std::string* family) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("make_model: expected '<family>:<params>' in '" + spec + "'");
  *family = spec.substr(0, colon);
  std::vector<double> params;
  std::stringstream ss(spec.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("make_model: bad parameter '" + tok + "'");
    params.push_back(v);
  }
  if (params.size() != expected)
    throw std::invalid_argument("make_model: '" + *family + "' needs " +
                                std::to_string(expected) + " parameters");
  return params;
}

// Largest t with F0(t) <= 1 - 1e-12, i.e. H0(t) <= -log(1e-12).
constexpr double kHmax = 27.631021115928547;  // -log(1e-12)

}  // namespace

std::string HazardModel::spec_string() const {
  std::ostringstream os;
  os << name << ':';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) os << ',';
    os << params[i];
  }
  return os.str();
}

HazardModel make_model(const std::string& spec) {
  std::string family = spec.substr(0, spec.find(':'));
  HazardModel m;
  if (family == "linhaz") {
    auto p = parse_params(spec, 2, &family);
    double alpha = p[0], beta = p[1];
    if (!(alpha > 0) || !(beta > 0))
      throw std::invalid_argument("make_model: linhaz needs alpha, beta > 0");
    m.name = "linhaz";
    m.params = p;
    m.h0 = [=](double t) { return alpha + beta * t; };
    m.dh0 = [=](double) { return beta; };
    m.H0 = [=](double t) { return alpha * t + 0.5 * beta * t * t; };
    m.inverse_F0 = [=](double u) {
      double s = -std::log1p(-u);
      return (-alpha + std::sqrt(alpha * alpha + 2.0 * beta * s)) / beta;
    };
    m.a_max = m.inverse_F0(-std::expm1(-kHmax));
  } else if (family == "gompertz") {
    auto p = parse_params(spec, 2, &family);
    double alpha = p[0], beta = p[1];
    if (!(alpha > 0) || !(beta > 0))
      throw std::invalid_argument("make_model: gompertz needs alpha, beta > 0");
    m.name = "gompertz";
    m.params = p;
    m.h0 = [=](double t) { return alpha * std::exp(beta * t); };
    m.dh0 = [=](double t) { return alpha * beta * std::exp(beta * t); };
    m.H0 = [=](double t) { return alpha / beta * std::expm1(beta * t); };
    m.inverse_F0 = [=](double u) {
      double s = -std::log1p(-u);
      return std::log1p(beta * s / alpha) / beta;
    };
    m.a_max = std::log1p(beta * kHmax / alpha) / beta;
  } else if (family == "exponential") {
    auto p = parse_params(spec, 1, &family);
    double lambda = p[0];
    if (!(lambda > 0)) throw std::invalid_argument("make_model: exponential needs lambda > 0");
    m.name = "exponential";
    m.params = p;
    m.h0 = [=](double) { return lambda; };
    m.dh0 = [](double) { return 0.0; };
    m.H0 = [=](double t) { return lambda * t; };
    m.inverse_F0 = [=](double u) { return -std::log1p(-u) / lambda; };
    m.a_max = kHmax / lambda;
    m.constant_hazard = true;
  } else if (family == "weibull") {
    auto p = parse_params(spec, 2, &family);
    double k = p[0], lambda = p[1];
    if (!(k > 0) || !(lambda > 0))
      throw std::invalid_argument("make_model: weibull needs k, lambda > 0");
    m.name = "weibull";
    m.params = p;
    m.h0 = [=](double t) { return k / lambda * std::pow(t / lambda, k - 1.0); };
    m.dh0 = [=](double t) {
      return k * (k - 1.0) / (lambda * lambda) * std::pow(t / lambda, k - 2.0);
    };
    m.H0 = [=](double t) { return std::pow(t / lambda, k); };
    m.inverse_F0 = [=](double u) { return lambda * std::pow(-std::log1p(-u), 1.0 / k); };
    m.a_max = lambda * std::pow(kHmax, 1.0 / k);
    m.hazard_vanishes_at_zero = k > 1.0;
  } else {
    throw std::invalid_argument("make_model: unknown family '" + family + "'");
  }
  auto H0 = m.H0;
  auto h0 = m.h0;
  m.F0 = [H0](double t) { return -std::expm1(-H0(t)); };
  m.f0 = [H0, h0](double t) { return h0(t) * std::exp(-H0(t)); };
  return m;
}

AsymptoticConstants asymptotic_constants(const HazardModel& model, double a,
                                         const CanonicalConstants& canonical,
                                         double a_start) {
  if (a < a_start || a_start < 0)
    throw std::invalid_argument("asymptotic_constants: need 0 <= a_start <= a");
  if (a == a_start) return AsymptoticConstants{};
  if (model.constant_hazard)
    throw std::invalid_argument(
        "asymptotic_constants: constant hazard has h0' = 0; the n^{5/6} "
        "normal limit does not apply");
  if (model.hazard_vanishes_at_zero && a_start <= 0.0)
    throw std::invalid_argument(
        "asymptotic_constants: hazard vanishes at 0 (weibull k > 1); pass "
        "a_start > 0 to integrate on [a_start, a]");
  // Probe positivity on a grid before integrating.
  for (int i = 1; i <= 64; ++i) {
    double t = a_start + (a - a_start) * i / 64.0;
    if (!(model.h0(t) > 0) || !(model.dh0(t) > 0))
      throw std::invalid_argument("asymptotic_constants: h0 or h0' not positive on (a_start, a]");
  }
  if (model.F0(a) >= 1.0 - 1e-12)
    throw std::invalid_argument("asymptotic_constants: F0(a) too close to 1");

  const double tol = 1e-10;
  auto base = [&](double t) {
    return std::cbrt(2.0 * model.h0(t) * model.f0(t) / model.dh0(t));
  };
  auto mean_T = integrate([&](double t) { return base(t) * model.h0(t); }, a_start, a, tol);
  auto mean_U = integrate([&](double t) { return base(t) * model.f0(t); }, a_start, a, tol);
  auto var_T = integrate(
      [&](double t) {
        double h = model.h0(t);
        return h * h * std::cbrt(h * model.f0(t)) / std::pow(model.dh0(t), 4.0 / 3.0) * h;
      },
      a_start, a, tol);
  auto var_U = integrate(
      [&](double t) {
        double b = base(t);
        return b * b * b * b * model.f0(t);
      },
      a_start, a, tol);

  AsymptoticConstants out;
  out.mean_T_integral = mean_T.value;
  out.mean_U_integral = mean_U.value;
  out.var_T = std::pow(2.0, 4.0 / 3.0) * canonical.sigma2 * var_T.value;
  out.var_U = canonical.sigma2 * var_U.value;
  out.quadrature_error_bound =
      mean_T.error_bound + mean_U.error_bound + var_T.error_bound + var_U.error_bound;
  return out;
}

SortedSample sample_from(const HazardModel& model, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream) {
  if (n == 0) throw std::invalid_argument("sample_from: n must be positive");
  RngStream rng(seed, stream);
  std::vector<double> draws(n);
  for (std::size_t i = 0; i < n; ++i) draws[i] = model.inverse_F0(rng.uniform());
  return SortedSample(std::move(draws), /*jitter_ties=*/true);
}

}  // namespace gcmhaz
