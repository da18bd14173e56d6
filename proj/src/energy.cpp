#include "ahm/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ahm/errors.hpp"
#include "ahm/quadrature.hpp"

namespace ahm {
namespace {

constexpr double kPi = std::numbers::pi;

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// x > 0
double log_sinh(double x) {
  if (x < 1.0) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

AdaptiveOptions tight() {
  AdaptiveOptions o;
  o.rel_tol = 1e-14;
  o.abs_tol = 1e-300;
  return o;
}

// int_a^b exp(phi(s) - phi(b)) ds for phi increasing towards b.
double scaled_integral(const std::function<double(double)>& phi, double a, double b,
                       double width) {
  const double top = phi(b);
  std::vector<double> cuts;
  for (double k : {1.0, 4.0, 16.0, 64.0}) cuts.push_back(b - k * width);
  return integrate_adaptive([&](double s) { return std::exp(phi(s) - top); }, a, b, tight(), cuts)
      .value;
}

void require_alpha(double alpha, const char* where) {
  if (!(alpha >= 1.0)) throw DomainError(std::string(where) + ": alpha must be >= 1");
}

}  // namespace

double rotation_energy(double alpha) { return std::pow(2.0, 2.0 * alpha + 1.0) * kPi; }

double alpha_energy(const MapEvaluator& u, double alpha, const QuadratureGrid& grid) {
  require_alpha(alpha, "alpha_energy");
  const double c = std::pow(2.0, alpha - 1.0);
  return c * integrate(grid, [&](const QuadratureNode& n) {
           return std::pow(1.0 + u.evaluate(n.point).energy_density, alpha);
         });
}

double e_alpha_lambda(const MapEvaluator& v, double alpha, double lambda,
                      const QuadratureGrid& grid) {
  require_alpha(alpha, "e_alpha_lambda");
  if (!(lambda >= 1.0)) throw DomainError("e_alpha_lambda: lambda must be >= 1");
  const double c = std::pow(2.0, alpha - 1.0);
  return c * integrate(grid, [&](const QuadratureNode& n) {
           const double x = chi(lambda, n.point);
           return std::pow(1.0 + x * v.evaluate(n.point).energy_density, alpha) / x;
         });
}

double d_energy_d_loglambda(const MapEvaluator& v, double alpha, double lambda,
                            const QuadratureGrid& grid) {
  require_alpha(alpha, "d_energy_d_loglambda");
  if (!(lambda >= 1.0)) throw DomainError("d_energy_d_loglambda: lambda must be >= 1");
  return integrate(grid, [&](const QuadratureNode& n) {
    const double x = chi(lambda, n.point);
    const double grad_sq = 2.0 * v.evaluate(n.point).energy_density;
    const double l2 = lambda * lambda * n.point.norm_sq();
    const double z = (l2 - 1.0) / (l2 + 1.0);
    return std::pow(2.0 + x * grad_sq, alpha - 1.0) * ((alpha - 1.0) * grad_sq - 2.0 / x) * z;
  });
}

DilationEnergyResult dilation_energy(double alpha, double lambda) {
  require_alpha(alpha, "dilation_energy");
  if (!(lambda > 0.0)) throw DomainError("dilation_energy: lambda must be positive");
  DilationEnergyResult res;
  res.alpha = alpha;
  res.lambda = lambda;
  res.beta = alpha - 1.0;
  res.tau = std::abs(std::log(lambda));
  res.sigma = res.beta * res.tau;
  const double floor = rotation_energy(alpha);
  const double tau = res.tau;
  const double beta = res.beta;
  if (tau == 0.0) {
    res.value = floor;
  } else if (tau < 1e-6) {
    res.value = floor * (1.0 + alpha * beta * tau * tau / 6.0);
  } else if ((alpha + 1.0) * tau <= 500.0) {
    const auto q = integrate_adaptive(
        [&](double t) { return std::pow(std::cosh(t), alpha) * std::cosh(beta * t); }, 0.0, tau,
        tight());
    res.value = floor * q.value / std::sinh(tau);
  } else {
    auto phi = [&](double t) { return alpha * log_cosh(t) + log_cosh(beta * t); };
    const double integral = scaled_integral(phi, 0.0, tau, 1.0 / (alpha + beta));
    res.value = floor * std::exp(phi(tau) - log_sinh(tau)) * integral;
  }
  res.G = res.value / floor;
  res.xi = res.value - floor;
  return res;
}

GrowthValues growth_function(double alpha, double sigma) {
  if (!(alpha > 1.0)) throw DomainError("growth_function: alpha must be > 1 (beta = 0)");
  if (!(sigma >= 0.0)) throw DomainError("growth_function: sigma must be >= 0");
  const double beta = alpha - 1.0;
  const double tau = sigma / beta;
  if (tau < 1e-6) return {1.0 + alpha * beta * tau * tau / 6.0, alpha * tau / 3.0};

  const double width = beta / (alpha + beta);
  auto phi_g = [&](double s) { return (1.0 + beta) * log_cosh(s / beta) + log_cosh(s); };
  const double ig = scaled_integral(phi_g, 0.0, sigma, width);
  const double G = std::exp(phi_g(sigma) - std::log(beta) - log_sinh(tau)) * ig;

  auto phi_d = [&](double s) {
    if (s <= 0.0) return -std::numeric_limits<double>::infinity();
    return log_sinh(s / beta) + (beta - 1.0) * log_cosh(s / beta) + log_sinh(alpha * s / beta);
  };
  const double id = scaled_integral(phi_d, 0.0, sigma, width);
  const double Gp =
      std::exp(log_cosh(tau) - std::log(beta) - 2.0 * log_sinh(tau) + phi_d(sigma)) * id;
  return {G, Gp};
}

double dilation_energy_log_derivative(double alpha, double lambda) {
  require_alpha(alpha, "dilation_energy_log_derivative");
  if (!(lambda >= 1.0)) throw DomainError("dilation_energy_log_derivative: lambda must be >= 1");
  if (alpha == 1.0) return 0.0;
  const double beta = alpha - 1.0;
  return beta * rotation_energy(alpha) * growth_function(alpha, beta * std::log(lambda)).G_prime;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::sigma_large: return "sigma_large";
    case Regime::sigma_mid: return "sigma_mid";
    case Regime::sigma_small: return "sigma_small";
  }
  return "unknown";
}

BoundCheck make_lower_bound(std::string name, double lhs, double rhs, Regime regime,
                            double constant, std::string note) {
  BoundCheck b;
  b.name = std::move(name);
  b.lhs = lhs;
  b.rhs = rhs;
  b.margin = lhs - rhs;
  b.passed = lhs >= rhs;
  b.regime = regime;
  b.constant = constant;
  b.note = std::move(note);
  return b;
}

BoundCheck make_upper_bound(std::string name, double lhs, double rhs, Regime regime,
                            double constant, std::string note) {
  BoundCheck b = make_lower_bound(std::move(name), lhs, rhs, regime, constant, std::move(note));
  b.upper = true;
  b.margin = rhs - lhs;
  b.passed = lhs <= rhs;
  return b;
}

double xi_large_constant() {
  const double e = std::numbers::e;
  return (e * e - e - 2.0) / (2.0 * e * e * e * e);
}

double xi_small_constant() {
  const double c = std::cosh(1.0);
  return 1.0 / (6.0 * c * c);
}

double growth_small_constant() {
  const double c = std::cosh(1.0);
  return 1.0 / (3.0 * c * c);
}

double growth_mid_constant() {
  static const double value = [] {
    const double s1 = std::sinh(1.0);
    auto h = [s1](double t) { return std::tanh(t) * (1.0 - std::cosh(t) / s1); };
    // h vanishes at 0 and at acosh(sinh 1) and is concave in between.
    double lo = 0.0, hi = std::acosh(s1);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    for (int i = 0; i < 200; ++i) {
      if (h(x1) < h(x2)) {
        lo = x1;
        x1 = x2;
        x2 = lo + g * (hi - lo);
      } else {
        hi = x2;
        x2 = x1;
        x1 = hi - g * (hi - lo);
      }
    }
    return h(0.5 * (lo + hi));
  }();
  return value;
}

std::vector<BoundCheck> check_xi_lower_bounds(double alpha, double lambda,
                                              const XiBoundOptions& options) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw DomainError("check_xi_lower_bounds: requires 1 < alpha <= 2");
  if (!(lambda >= 1.0)) throw DomainError("check_xi_lower_bounds: requires lambda >= 1");
  const double beta = alpha - 1.0;
  const double log_l = std::log(lambda);
  const double sigma = beta * log_l;
  const double floor = rotation_energy(alpha);
  const double xi = dilation_energy(alpha, lambda).xi;

  std::vector<BoundCheck> out;
  if (sigma >= 2.0) {
    const double c = floor * xi_large_constant();
    out.push_back(make_lower_bound("xi_sigma_large", xi, c * std::exp(2.0 * sigma),
                                   Regime::sigma_large, c,
                                   "xi >= 2^{2a+1} pi (e^2-e-2)/(2e^4) lambda^{2a-2}"));
  }
  if (beta <= sigma && sigma <= 2.0) {
    const bool composed = !options.middle_constant.has_value();
    const double c = composed ? floor * std::min(xi_small_constant(), growth_mid_constant())
                              : *options.middle_constant;
    const double measured = xi / (beta * log_l);
    std::string note = composed ? "composed C = 2^{2a+1} pi min(1/(6 cosh^2 1), C_theta)"
                                : "configured C";
    note += "; measured xi/((a-1) log l) = " + std::to_string(measured);
    out.push_back(make_lower_bound("xi_sigma_mid", xi, c * beta * log_l, Regime::sigma_mid, c,
                                   std::move(note)));
  }
  if (log_l <= 1.0) {
    const double c = floor * xi_small_constant();
    out.push_back(make_lower_bound("xi_sigma_small", xi, c * beta * log_l * log_l,
                                   Regime::sigma_small, c,
                                   "xi >= 2^{2a+1} pi/(6 cosh^2 1) (a-1) (log lambda)^2"));
  }
  return out;
}

BoundCheck check_growth(double alpha, double lambda) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("check_growth: requires 1 < alpha <= 2");
  if (!(lambda >= 1.0)) throw DomainError("check_growth: requires lambda >= 1");
  const double beta = alpha - 1.0;
  const double log_l = std::log(lambda);
  const double sigma = beta * log_l;
  if (sigma > 2.0) throw DomainError("check_growth: (alpha - 1) log lambda must be <= 2");
  const double floor = rotation_energy(alpha);
  const double lhs = beta * floor * growth_function(alpha, sigma).G_prime;
  if (log_l <= 1.0) {
    // beta * floor * sigma / (3 beta cosh^2 1)
    const double c = floor * growth_small_constant();
    return make_lower_bound("growth_sigma_small", lhs, c * sigma, Regime::sigma_small, c,
                            "dE/dlog l >= 2^{2a+1} pi sigma / (3 cosh^2 1)");
  }
  const double c = floor * growth_mid_constant();
  return make_lower_bound("growth_sigma_mid", lhs, c * beta, Regime::sigma_mid, c,
                          "dE/dlog l >= (a-1) 2^{2a+1} pi C_theta");
}

BoundCheck eaclose_gap(const MapEvaluator& v, double alpha, double lambda,
                       const QuadratureGrid& grid) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw DomainError("eaclose_gap: requires 1 <= alpha <= 2");
  if (!(lambda >= 1.0)) throw DomainError("eaclose_gap: requires lambda >= 1");
  const double ev = e_alpha_lambda(v, alpha, lambda, grid);
  const double eid = e_alpha_lambda(*identity_map(), alpha, lambda, grid);
  const double l1 = integrate(grid, [&](const QuadratureNode& n) {
    return std::abs(2.0 * v.evaluate(n.point).energy_density - 2.0);
  });
  const double c = alpha * std::pow(2.0, alpha - 2.0) * std::pow(1.0 + lambda * lambda, alpha - 1.0);
  return make_lower_bound("eaclose_gap", ev - eid, -c * l1, Regime::sigma_small, c,
                          "E_{a,l}(v) - E_{a,l}(Id) >= -a 2^{a-2} (1+l^2)^{a-1} || |grad v|^2 - 2 ||_1");
}

RadialELTerms radial_el_terms(const RadialProfile& profile, double alpha, double lambda) {
  const int n = profile.cells();
  const double h = profile.step();
  const double beta = alpha - 1.0;
  RadialELTerms out;
  for (int i = 1; i < n; ++i) {
    const double r = profile.node(i);
    const double f = profile[i];
    const double fp = (profile[i + 1] - profile[i - 1]) / (2.0 * h);
    const double fpp = (profile[i + 1] - 2.0 * f + profile[i - 1]) / (h * h);
    const double sr = std::sin(r), cr = std::cos(r);
    const double sf = std::sin(f), cf = std::cos(f);
    const double grad_sq = fp * fp + sf * sf / (sr * sr);
    const double d_grad_sq =
        2.0 * fp * fpp + 2.0 * sf * cf * fp / (sr * sr) - 2.0 * sf * sf * cr / (sr * sr * sr);
    // chi in the stereographic chart, |zeta| = cot(r/2)
    const double rho = 1.0 / std::tan(0.5 * r);
    const double x = chi_radial(lambda, rho);
    const double s_half = std::sin(0.5 * r);
    const double d_log_chi = grad_log_chi(lambda, rho) * (-0.5 / (s_half * s_half));
    const double denom = 2.0 + x * grad_sq;
    out.r.push_back(r);
    out.f1.push_back(beta * x * d_grad_sq * fp / denom);
    out.f2.push_back(beta * x * grad_sq * d_log_chi * fp / denom);
  }
  return out;
}

}  // namespace ahm
