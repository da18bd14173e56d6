#include "ahm/mobius.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ahm/errors.hpp"
#include "ahm/quadrature.hpp"

namespace ahm {

SpherePoint stereo_to_sphere(const StereoPoint& p) {
  if (p.at_infinity) return {0.0, 0.0, 1.0};
  const double n2 = p.norm_sq();
  const double s = 2.0 / (1.0 + n2);
  return {s * p.re, s * p.im, (n2 - 1.0) / (n2 + 1.0)};
}

StereoPoint sphere_to_stereo(const SpherePoint& q) {
  if (q.z <= 0.0) {
    const double den = 1.0 - q.z;
    return {q.x / den, q.y / den, false};
  }
  // Upper hemisphere: zeta = (1 + z) / (x - i y) avoids the cancellation in 1 - z.
  const Complex w{q.x, -q.y};
  if (w == Complex{0.0, 0.0}) return StereoPoint::infinity();
  return StereoPoint::from((1.0 + q.z) / w);
}

double height(const StereoPoint& p) {
  if (p.at_infinity) return 1.0;
  const double n2 = p.norm_sq();
  return (n2 - 1.0) / (n2 + 1.0);
}

MobiusElement MobiusElement::dilation(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("dilation: lambda must be positive");
  const double s = std::sqrt(lambda);
  return {Complex{s}, Complex{0.0}, Complex{0.0}, Complex{1.0 / s}};
}

MobiusElement MobiusElement::normalized(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  const double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  if (!(std::abs(det) > 1e-14 * scale) || scale == 0.0)
    throw DegenerateMatrixError("MobiusElement::normalized: singular matrix");
  const Complex root = std::sqrt(det);
  return {a / root, b / root, c / root, d / root};
}

double MobiusElement::distance(const MobiusElement& o) const {
  return std::sqrt(std::norm(a - o.a) + std::norm(b - o.b) + std::norm(c - o.c) +
                   std::norm(d - o.d));
}

MobiusElement operator*(const MobiusElement& l, const MobiusElement& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
          l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

StereoPoint mobius_apply(const MobiusElement& m, const StereoPoint& p) {
  if (p.at_infinity) {
    if (m.c == Complex{0.0, 0.0}) return StereoPoint::infinity();
    return StereoPoint::from(m.a / m.c);
  }
  const Complex zeta = p.value();
  const Complex den = m.c * zeta + m.d;
  if (den == Complex{0.0, 0.0}) return StereoPoint::infinity();
  return StereoPoint::from((m.a * zeta + m.b) / den);
}

double lifted_norm_sq(const MobiusElement& m, const StereoPoint& p) {
  if (p.at_infinity) return std::norm(m.a) + std::norm(m.c);
  const Complex zeta = p.value();
  return std::norm(m.a * zeta + m.b) + std::norm(m.c * zeta + m.d);
}

double spherical_stretch_sq(const MobiusElement& m, const StereoPoint& p) {
  if (p.at_infinity) {
    const double l = std::norm(m.a) + std::norm(m.c);
    return 1.0 / (l * l);
  }
  const Complex zeta = p.value();
  const double n2 = p.norm_sq();
  if (n2 > 1e150) {
    // (1 + |z|^2)^2 / |M (z,1)|^4 with both sides divided by |z|^4
    const Complex w = 1.0 / zeta;
    const double l = std::norm(m.a + m.b * w) + std::norm(m.c + m.d * w);
    const double t = 1.0 + std::norm(w);
    return t * t / (l * l);
  }
  const double l = std::norm(m.a * zeta + m.b) + std::norm(m.c * zeta + m.d);
  const double t = 1.0 + n2;
  return t * t / (l * l);
}

MobiusElement MobiusSVD::reconstruct() const {
  const double s = std::sqrt(lambda);
  const MobiusElement d{Complex{s}, Complex{0.0}, Complex{0.0}, Complex{1.0 / s}};
  return U * d * V.adjoint();
}

MobiusSVD mobius_svd(const MobiusElement& m) {
  if (std::abs(m.determinant() - 1.0) > 1e-8)
    throw DegenerateMatrixError("mobius_svd: |ad - bc - 1| exceeds 1e-8");

  // M M^* = [[p, q], [conj(q), s]]
  const double p = std::norm(m.a) + std::norm(m.b);
  const double s = std::norm(m.c) + std::norm(m.d);
  const Complex q = m.a * std::conj(m.c) + m.b * std::conj(m.d);
  const double trace = p + s;
  const double gap = std::sqrt((p - s) * (p - s) + 4.0 * std::norm(q));
  if (gap <= 1e-14 * trace) return {m, MobiusElement::identity(), 1.0};

  const double lambda = 0.5 * (trace + gap);
  // Eigenvector of lambda; take the better conditioned of the two candidates.
  std::array<Complex, 2> u;
  const std::array<Complex, 2> c1{q, Complex{lambda - p}};
  const std::array<Complex, 2> c2{Complex{lambda - s}, std::conj(q)};
  const double n1 = std::norm(c1[0]) + std::norm(c1[1]);
  const double n2 = std::norm(c2[0]) + std::norm(c2[1]);
  u = n1 >= n2 ? c1 : c2;
  const double un = std::sqrt(std::max(n1, n2));
  u[0] /= un;
  u[1] /= un;

  // Columns (u0, u1) and (-conj(u1), conj(u0)) give det U = 1.
  const MobiusElement U{u[0], -std::conj(u[1]), u[1], std::conj(u[0])};
  // First column of V = M^* u / sqrt(lambda); the second follows from SU(2).
  const double inv_root = 1.0 / std::sqrt(lambda);
  const Complex v0 = (std::conj(m.a) * u[0] + std::conj(m.c) * u[1]) * inv_root;
  const Complex v1 = (std::conj(m.b) * u[0] + std::conj(m.d) * u[1]) * inv_root;
  const double vn = std::sqrt(std::norm(v0) + std::norm(v1));
  const MobiusElement V{v0 / vn, -std::conj(v1 / vn), v1 / vn, std::conj(v0 / vn)};
  return {U, V, lambda};
}

double chi_radial(double lambda, double r) {
  const double ratio = (1.0 + lambda * lambda * r * r) / (lambda * (1.0 + r * r));
  return ratio * ratio;
}

double chi(double lambda, const StereoPoint& p) {
  if (p.at_infinity) return lambda * lambda;
  const double n2 = p.norm_sq();
  const double ratio = (1.0 + lambda * lambda * n2) / (lambda * (1.0 + n2));
  return ratio * ratio;
}

double grad_log_chi(double lambda, double r) {
  return 4.0 * r * (lambda * lambda - 1.0) /
         ((1.0 + r * r) * (1.0 + lambda * lambda * r * r));
}

double norm_grad_log_chi_L2(double lambda) {
  if (!(lambda >= 1.0)) throw DomainError("norm_grad_log_chi_L2: lambda must be >= 1");
  if (lambda == 1.0) return 0.0;
  // r = tan(theta / 2), dr = (1 + r^2) / 2 dtheta
  auto integrand = [lambda](double theta) {
    const double r = std::tan(0.5 * theta);
    if (!std::isfinite(r)) return 0.0;
    const double g = grad_log_chi(lambda, r);
    return g * g * r / (2.0 * (1.0 + r * r));
  };
  const std::array<double, 2> cuts{2.0 * std::atan(1.0 / lambda), 0.5 * std::numbers::pi};
  AdaptiveOptions opts;
  opts.rel_tol = 1e-11;
  AdaptiveResult res = integrate_adaptive(integrand, 0.0, std::numbers::pi, opts, cuts);
  if (!(res.error_estimate <= 1e-9 * std::abs(res.value)))
    throw QuadratureError("norm_grad_log_chi_L2: relative error above 1e-9");
  return std::sqrt(8.0 * std::numbers::pi * res.value);
}

double norm_grad_log_chi_bound(double lambda) {
  if (!(lambda >= 1.0)) throw DomainError("norm_grad_log_chi_bound: lambda must be >= 1");
  return 4.0 * std::sqrt(8.0 * std::numbers::pi) * ((lambda + 1.0) / lambda) *
         ((lambda - 1.0) / lambda) * std::sqrt(0.375 + std::log(lambda));
}

double norm_grad_log_chi_scaling_constant() {
  return 4.0 * std::sqrt(8.0 * std::numbers::pi) * 2.0 * std::numbers::sqrt2;
}

}  // namespace ahm
