#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ahm/mobius.hpp"
#include "ahm/quadrature.hpp"
#include "ahm/radial_profile.hpp"

namespace ahm {

/// Pointwise data of a map u: S^2 -> S^2 at one domain point.
/// energy_density is e(u) = |grad u|^2 / 2 and jacobian is J(u), both with
/// respect to the round metric; |J| <= e holds pointwise.
struct MapSample {
  SpherePoint position;
  double energy_density = 0.0;
  double jacobian = 0.0;
};

/// Closed-form pointwise description of a map S^2 -> S^2.
class MapEvaluator {
 public:
  virtual ~MapEvaluator() = default;
  virtual MapSample evaluate(const StereoPoint& zeta) const = 0;
  virtual std::string describe() const = 0;
};

using MapHandle = std::shared_ptr<const MapEvaluator>;

MapHandle identity_map();
/// Constant map onto `value`.
MapHandle constant_map(SpherePoint value = {0.0, 0.0, -1.0});
/// zeta -> conj(zeta); orientation reversing, degree -1.
MapHandle conjugation_map();
MapHandle mobius_map(const MobiusElement& m);
/// u o M, using e(u o M)(zeta) = (1 + |zeta|^2)^2 / |M (zeta,1)|^4 * e(u)(M zeta).
MapHandle pullback(MapHandle u, const MobiusElement& m);

/// f and f' at polar angle r.
using RadialFunction = std::function<std::pair<double, double>(double)>;
/// Equivariant map with a closed-form profile.
MapHandle radial_map(RadialFunction profile, std::string name = "radial");
/// Equivariant map u_f with f interpolated by a natural cubic spline.
MapHandle radial_map(const RadialProfile& profile);

/// Polar angle from the north pole of the point with stereographic
/// coordinate zeta: 2 atan(1 / |zeta|).
double polar_angle(const StereoPoint& zeta);

struct QuadratureNode {
  StereoPoint point;
  double weight = 0.0;
};

/// Product rule on S^2: Gauss-Legendre in the height z = cos(polar angle),
/// which is the area-form variable (dA = dz dphi), times a uniform
/// (midpoint) rule in the azimuth.
struct QuadratureGrid {
  std::vector<QuadratureNode> nodes;
  int n_radial = 0;
  int n_angular = 0;
  std::string rule;
};

/// Throws DomainError for n_radial < 4 or n_angular < 4.
QuadratureGrid make_grid(int n_radial, int n_angular);

/// Compensated sum of weight * f(node) in node order.
double integrate(const QuadratureGrid& grid,
                 const std::function<double(const QuadratureNode&)>& f);

/// int_{S^2} e(u) dA.
double dirichlet_integral(const MapEvaluator& u, const QuadratureGrid& grid);

struct DegreeResult {
  double value = 0.0;
  int rounded = 0;
  /// false when |value - rounded| > 0.01
  bool near_integer = true;
};

/// (1 / 4 pi) int J(u) dA.
DegreeResult degree(const MapEvaluator& u, const QuadratureGrid& grid);

struct EnergyReport {
  double alpha = 1.0;
  double e_alpha = 0.0;
  /// int (1 + e(u)) dA
  double e_dirichlet_plus_area = 0.0;
  double degree = 0.0;
  int degree_int = 0;
  bool degree_near_integer = true;
  /// 2^{2 alpha + 1} pi
  double floor_2_2a1_pi = 0.0;
  /// degree_int != 1, or e_alpha >= floor - 1e-8
  bool passes_floor = true;
};

/// Throws DomainError for alpha < 1.
EnergyReport energy_report(const MapEvaluator& u, double alpha, const QuadratureGrid& grid);

}  // namespace ahm
