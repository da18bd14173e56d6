#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ahm/map_model.hpp"
#include "ahm/radial_profile.hpp"

namespace ahm {

/// 2^{2 alpha + 1} pi: the alpha-energy of a rotation and the floor for
/// degree-one maps.
double rotation_energy(double alpha);

/// E_alpha(u) = 2^{alpha - 1} int (1 + e(u))^alpha dA.
double alpha_energy(const MapEvaluator& u, double alpha, const QuadratureGrid& grid);

/// E_{alpha,lambda}(v) = 1/2 int (2 + chi_lambda |grad v|^2)^alpha / chi_lambda dA.
double e_alpha_lambda(const MapEvaluator& v, double alpha, double lambda,
                      const QuadratureGrid& grid);

/// d/d(log lambda) of E_{alpha,lambda}(v) at fixed v:
/// int (2 + chi |grad v|^2)^{alpha-1} ((alpha-1)|grad v|^2 - 2/chi) z(lambda zeta) dA.
double d_energy_d_loglambda(const MapEvaluator& v, double alpha, double lambda,
                            const QuadratureGrid& grid);

struct DilationEnergyResult {
  double alpha = 1.0;
  double lambda = 1.0;
  double tau = 0.0;    // |log lambda|
  double sigma = 0.0;  // (alpha - 1) tau
  double beta = 0.0;   // alpha - 1
  double value = 0.0;  // E_alpha(m_lambda)
  double G = 1.0;      // value / 2^{2 alpha + 1} pi
  double xi = 0.0;     // value - 2^{2 alpha + 1} pi
};

/// E_alpha(m_lambda) = 2^{2a+1} pi / sinh(tau) int_0^tau cosh(t)^a cosh((a-1) t) dt,
/// tau = |log lambda|, by adaptive quadrature. Exactly 2^{2a+1} pi at lambda = 1;
/// for tau < 1e-6 the expansion 2^{2a+1} pi (1 + a (a - 1) tau^2 / 6) is used.
/// The integrand is handled in log space when (alpha + 1) tau > 500.
DilationEnergyResult dilation_energy(double alpha, double lambda);

/// d/d(log lambda) E_alpha(m_lambda) = (alpha - 1) 2^{2a+1} pi G'((alpha - 1) log lambda),
/// for lambda >= 1; zero for alpha = 1.
double dilation_energy_log_derivative(double alpha, double lambda);

struct GrowthValues {
  double G = 1.0;
  double G_prime = 0.0;
};

/// G(sigma) and G'(sigma), each from its own integral representation:
///   G  = (beta sinh(sigma/beta))^{-1} int_0^sigma cosh(s/beta)^{1+beta} cosh(s) ds
///   G' = cosh(sigma/beta) / (beta sinh^2(sigma/beta))
///        * int_0^sigma sinh(s/beta) cosh(s/beta)^{beta-1} sinh(alpha s/beta) ds
/// with beta = alpha - 1. Throws DomainError for alpha <= 1 or sigma < 0.
GrowthValues growth_function(double alpha, double sigma);

enum class Regime { sigma_large, sigma_mid, sigma_small };
std::string to_string(Regime regime);

/// One inequality lhs >= rhs (or lhs <= rhs for upper bounds).
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs - rhs for lower bounds, rhs - lhs for upper bounds; >= 0 when passed
  double margin = 0.0;
  bool passed = false;
  Regime regime = Regime::sigma_small;
  bool upper = false;
  /// constant used on the right-hand side
  double constant = 0.0;
  std::string note;
};

BoundCheck make_lower_bound(std::string name, double lhs, double rhs, Regime regime,
                            double constant = 0.0, std::string note = {});
BoundCheck make_upper_bound(std::string name, double lhs, double rhs, Regime regime,
                            double constant = 0.0, std::string note = {});

/// (e^2 - e - 2) / (2 e^4): factor of 2^{2a+1} pi lambda^{2a-2} for sigma >= 2.
double xi_large_constant();
/// 1 / (6 cosh^2 1): factor of 2^{2a+1} pi (alpha - 1) (log lambda)^2 for log lambda <= 1.
double xi_small_constant();
/// 1 / (3 cosh^2 1): G'(sigma) >= sigma / (3 beta cosh^2 1) for sigma <= beta.
double growth_small_constant();
/// max over theta in (0, 1) of tanh(theta) (1 - cosh(theta) / sinh(1)):
/// lower bound for G'(sigma) when beta <= sigma.
double growth_mid_constant();

struct XiBoundOptions {
  /// Constant C in xi >= C (alpha - 1) log lambda on the middle regime.
  /// Defaults to 2^{2a+1} pi min(xi_small_constant(), growth_mid_constant()).
  std::optional<double> middle_constant;
};

/// Lower bounds for xi(alpha, lambda) = E_alpha(m_lambda) - 2^{2a+1} pi on
/// every regime containing (alpha, lambda); other regimes are omitted.
/// Requires 1 < alpha <= 2 and lambda >= 1 (DomainError otherwise).
std::vector<BoundCheck> check_xi_lower_bounds(double alpha, double lambda,
                                              const XiBoundOptions& options = {});

/// Lower bound on d/d(log lambda) E_alpha(m_lambda) for 0 <= (alpha-1) log lambda <= 2.
/// Throws DomainError outside that range or for alpha outside (1, 2].
BoundCheck check_growth(double alpha, double lambda);

/// E_{a,l}(v) - E_{a,l}(Id) >= -a 2^{a-2} (1 + l^2)^{a-1} || |grad v|^2 - 2 ||_{L1},
/// both sides by quadrature on `grid`. Requires 1 <= alpha <= 2, lambda >= 1.
BoundCheck eaclose_gap(const MapEvaluator& v, double alpha, double lambda,
                       const QuadratureGrid& grid);

/// Radial components of the Euler-Lagrange terms f1, f2 of E_{alpha,lambda} for
/// an equivariant map, at the interior nodes of the profile (central differences).
struct RadialELTerms {
  std::vector<double> r;
  std::vector<double> f1;
  std::vector<double> f2;
};
RadialELTerms radial_el_terms(const RadialProfile& profile, double alpha, double lambda);

}  // namespace ahm
