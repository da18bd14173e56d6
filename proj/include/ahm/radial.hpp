#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ahm/radial_profile.hpp"

namespace ahm {

/// I(f) = pi int_0^pi (2 + f'^2 + sin^2 f / sin^2 r)^alpha sin r dr for the
/// natural cubic spline through the profile, with a 5-point Gauss rule per cell.
double radial_energy(const RadialProfile& profile, double alpha);

/// dI/df_i at the interior nodes i = 1..N-1.
std::vector<double> radial_energy_gradient(const RadialProfile& profile, double alpha);

/// Left side of the equivariant alpha-harmonic map equation
///   f'' + cot(r) f' - cos f sin f / sin^2 r + (alpha - 1) f' d_r|grad u|^2 / (2 + |grad u|^2)
/// with |grad u|^2 = f'^2 + sin^2 f / sin^2 r, at the interior nodes by
/// five-point central differences. Ghost values beyond the poles come from the
/// odd reflections f(-r) = -f(r) and f(pi + r) = 2 n pi - f(pi - r).
struct RadialResidual {
  std::vector<double> r;
  std::vector<double> value;
  double sup = 0.0;
};
RadialResidual radial_residual(const RadialProfile& profile, double alpha);

/// (1/2) int_0^pi f' sin f dr, the degree of u_f.
double radial_degree(const RadialProfile& profile);

/// First r with f(r) = level on the spline, inside the first cell whose
/// endpoint samples bracket the level.
std::optional<double> first_crossing(const RadialProfile& profile, double level);

/// Piecewise-linear interpolant of the profile.
double interpolate_linear(const RadialProfile& profile, double r);

/// I restricted to [a, b] (same integrand and spline as radial_energy).
double partial_radial_energy(const RadialProfile& profile, double alpha, double a, double b);

enum class Descent { gradient, conjugate_gradient, newton };
std::string to_string(Descent method);

struct SolveOptions {
  Descent method = Descent::newton;
  int max_iters = 200000;
  /// converged when max_i |dI/df_i| / h <= grad_tol * max(1, I)
  double grad_tol = 1e-8;
  /// converged additionally requires residual_sup <= residual_tol
  double residual_tol = 1e-4;
  /// Values of alpha solved first, in order, each warm-starting the next.
  std::vector<double> continuation;
  bool keep_trace = true;
};

struct SolveResult {
  RadialProfile profile;
  double alpha = 1.0;
  double energy = 0.0;
  double residual_sup = 0.0;
  double grad_norm = 0.0;
  int degree_int = 0;
  std::optional<double> r1{};
  std::optional<double> r2{};
  int iterations = 0;
  bool converged = false;
  std::string status{};
  /// energy after every accepted iterate (first entry: initial profile)
  std::vector<double> energy_trace{};
};

/// Minimizes I over the interior samples with the endpoints pinned.
/// The default initial profile is f(r) = n r. Throws DomainError for
/// alpha <= 1 or N < RadialProfile::kMinCells.
SolveResult minimize_radial(double alpha, int n, int cells,
                            const std::optional<RadialProfile>& init = std::nullopt,
                            const SolveOptions& options = {});

struct AnnulusSplit {
  double r1 = 0.0;
  double r2 = 0.0;
  double disc_energy = 0.0;     // [0, r1]
  double annulus_energy = 0.0;  // [r1, r2]
  double cap_energy = 0.0;      // [r2, pi]
  /// pi 2^alpha (cos a - cos b): the area part on each piece
  double disc_area_floor = 0.0;
  double annulus_area_floor = 0.0;
  double cap_area_floor = 0.0;
  /// pi (2A + 4)^alpha A^{1 - alpha}, A = cos a - cos b: the degree-one floor
  /// of a piece whose image covers the sphere once
  double disc_degree_floor = 0.0;
  double annulus_degree_floor = 0.0;
  double cap_degree_floor = 0.0;
};

/// Splits a converged n = 3 solution at its first crossings of pi and 2 pi.
/// Throws DomainError when n != 3, the result is not converged, or a
/// crossing is missing.
AnnulusSplit annulus_split(const SolveResult& result);

/// c in f = a r + c r^3 + O(r^5) for a regular solution with f'(0) = a.
double series_cubic_coefficient(double alpha, double slope);

struct ShotOptions {
  double start = 1e-6;
  /// distance from pi where integration stops; 0 selects min(1e-3, h / 2)
  double end_gap = 0.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-13;
  /// bracket search covers [slope0 / spread, slope0 * spread]
  double spread = 8.0;
  int scan_points = 64;
};

/// Integrates the initial-value problem from the series start f ~ a r + c r^3
/// up to pi - end_gap, sampling at the nodes of an N-cell grid.
/// Throws ShotFailedError with the last radius reached if the solution blows up.
struct Shot {
  std::vector<double> r;
  std::vector<double> f;
  std::vector<double> df;
};
Shot integrate_shot(double alpha, double slope0, int cells, const ShotOptions& options = {});

/// Adjusts the initial slope, starting from slope0, so that the shot reaches
/// f(pi) = n pi regularly, and returns it as an N-cell profile.
/// Throws DomainError for slope0 <= 0 and ShotFailedError when no admissible
/// slope is bracketed.
RadialProfile shoot_radial(double alpha, int n, double slope0, int cells,
                           const ShotOptions& options = {});

}  // namespace ahm
