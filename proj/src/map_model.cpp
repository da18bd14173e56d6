#include "ahm/map_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ahm/energy.hpp"
#include "ahm/errors.hpp"

namespace ahm {
namespace {

class IdentityMap final : public MapEvaluator {
 public:
  MapSample evaluate(const StereoPoint& zeta) const override {
    return {stereo_to_sphere(zeta), 1.0, 1.0};
  }
  std::string describe() const override { return "identity"; }
};

class ConstantMap final : public MapEvaluator {
 public:
  explicit ConstantMap(SpherePoint value) : value_(value) {}
  MapSample evaluate(const StereoPoint&) const override { return {value_, 0.0, 0.0}; }
  std::string describe() const override { return "constant"; }

 private:
  SpherePoint value_;
};

class ConjugationMap final : public MapEvaluator {
 public:
  MapSample evaluate(const StereoPoint& zeta) const override {
    StereoPoint image = zeta;
    image.im = -image.im;
    return {stereo_to_sphere(image), 1.0, -1.0};
  }
  std::string describe() const override { return "conjugation"; }
};

std::string describe_matrix(const MobiusElement& m) {
  std::ostringstream out;
  out.precision(6);
  out << "[" << m.a << ", " << m.b << "; " << m.c << ", " << m.d << "]";
  return out.str();
}

class MoebiusMap final : public MapEvaluator {
 public:
  explicit MoebiusMap(MobiusElement m) : m_(m) {}
  MapSample evaluate(const StereoPoint& zeta) const override {
    const double e = spherical_stretch_sq(m_, zeta);
    return {stereo_to_sphere(mobius_apply(m_, zeta)), e, e};
  }
  std::string describe() const override { return "mobius " + describe_matrix(m_); }

 private:
  MobiusElement m_;
};

class PullbackMap final : public MapEvaluator {
 public:
  PullbackMap(MapHandle inner, MobiusElement m) : inner_(std::move(inner)), m_(m) {}
  MapSample evaluate(const StereoPoint& zeta) const override {
    MapSample s = inner_->evaluate(mobius_apply(m_, zeta));
    const double stretch = spherical_stretch_sq(m_, zeta);
    s.energy_density *= stretch;
    s.jacobian *= stretch;
    return s;
  }
  std::string describe() const override {
    return "pullback(" + inner_->describe() + ", " + describe_matrix(m_) + ")";
  }

 private:
  MapHandle inner_;
  MobiusElement m_;
};

class RadialMap final : public MapEvaluator {
 public:
  RadialMap(RadialFunction profile, std::string name)
      : profile_(std::move(profile)), name_(std::move(name)) {}

  MapSample evaluate(const StereoPoint& zeta) const override {
    const double r = polar_angle(zeta);
    const double azimuth = zeta.at_infinity ? 0.0 : std::atan2(zeta.im, zeta.re);
    const auto [f, df] = profile_(r);
    const double sin_r = std::sin(r);
    double q;  // sin f / sin r
    if (sin_r > 1e-8) {
      q = std::sin(f) / sin_r;
    } else {
      q = df * std::cos(f) / std::cos(r);
    }
    const double sf = std::sin(f);
    return {{sf * std::cos(azimuth), sf * std::sin(azimuth), std::cos(f)},
            0.5 * (df * df + q * q),
            df * q};
  }
  std::string describe() const override { return name_; }

 private:
  RadialFunction profile_;
  std::string name_;
};

}  // namespace

MapHandle identity_map() { return std::make_shared<IdentityMap>(); }
MapHandle constant_map(SpherePoint value) { return std::make_shared<ConstantMap>(value); }
MapHandle conjugation_map() { return std::make_shared<ConjugationMap>(); }
MapHandle mobius_map(const MobiusElement& m) { return std::make_shared<MoebiusMap>(m); }

MapHandle pullback(MapHandle u, const MobiusElement& m) {
  return std::make_shared<PullbackMap>(std::move(u), m);
}

MapHandle radial_map(RadialFunction profile, std::string name) {
  return std::make_shared<RadialMap>(std::move(profile), std::move(name));
}

MapHandle radial_map(const RadialProfile& profile) {
  auto spline = std::make_shared<ProfileSpline>(profile);
  const int n = profile.winding();
  return radial_map(
      [spline](double r) { return std::pair{spline->value(r), spline->derivative(r)}; },
      "radial n=" + std::to_string(n) + " N=" + std::to_string(profile.cells()));
}

double polar_angle(const StereoPoint& zeta) {
  if (zeta.at_infinity) return 0.0;
  return 2.0 * std::atan2(1.0, std::sqrt(zeta.norm_sq()));
}

QuadratureGrid make_grid(int n_radial, int n_angular) {
  if (n_radial < 4 || n_angular < 4)
    throw DomainError("make_grid: n_radial and n_angular must be >= 4");
  const GaussRule& rule = gauss_legendre(n_radial);
  QuadratureGrid grid;
  grid.n_radial = n_radial;
  grid.n_angular = n_angular;
  grid.rule = "gauss-legendre(z) x midpoint(phi)";
  grid.nodes.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  const double dphi = 2.0 * std::numbers::pi / n_angular;
  for (int i = 0; i < n_radial; ++i) {
    const double z = rule.nodes[i];
    const double modulus = std::sqrt((1.0 + z) / (1.0 - z));
    for (int j = 0; j < n_angular; ++j) {
      const double phi = (j + 0.5) * dphi;
      grid.nodes.push_back(
          {{modulus * std::cos(phi), modulus * std::sin(phi), false}, rule.weights[i] * dphi});
    }
  }
  return grid;
}

double integrate(const QuadratureGrid& grid,
                 const std::function<double(const QuadratureNode&)>& f) {
  CompensatedSum sum;
  for (const QuadratureNode& node : grid.nodes) sum.add(node.weight * f(node));
  return sum.value();
}

double dirichlet_integral(const MapEvaluator& u, const QuadratureGrid& grid) {
  return integrate(grid, [&u](const QuadratureNode& n) { return u.evaluate(n.point).energy_density; });
}

DegreeResult degree(const MapEvaluator& u, const QuadratureGrid& grid) {
  const double total =
      integrate(grid, [&u](const QuadratureNode& n) { return u.evaluate(n.point).jacobian; });
  DegreeResult result;
  result.value = total / (4.0 * std::numbers::pi);
  result.rounded = static_cast<int>(std::lround(result.value));
  result.near_integer = std::abs(result.value - result.rounded) <= 0.01;
  return result;
}

EnergyReport energy_report(const MapEvaluator& u, double alpha, const QuadratureGrid& grid) {
  if (!(alpha >= 1.0)) throw DomainError("energy_report: alpha must be >= 1");
  EnergyReport report;
  report.alpha = alpha;
  report.e_alpha = alpha_energy(u, alpha, grid);
  report.e_dirichlet_plus_area = integrate(
      grid, [&u](const QuadratureNode& n) { return 1.0 + u.evaluate(n.point).energy_density; });
  const DegreeResult deg = degree(u, grid);
  report.degree = deg.value;
  report.degree_int = deg.rounded;
  report.degree_near_integer = deg.near_integer;
  report.floor_2_2a1_pi = std::pow(2.0, 2.0 * alpha + 1.0) * std::numbers::pi;
  report.passes_floor = report.degree_int != 1 || report.e_alpha >= report.floor_2_2a1_pi - 1e-8;
  return report;
}

}  // namespace ahm
