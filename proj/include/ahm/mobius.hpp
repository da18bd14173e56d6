#pragma once

#include <complex>

namespace ahm {

using Complex = std::complex<double>;

/// Point of the unit sphere in R^3.
struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = -1.0;
};

/// Point of the Riemann sphere in the chart projecting from the north pole.
/// When `at_infinity` is set the coordinates are ignored.
struct StereoPoint {
  double re = 0.0;
  double im = 0.0;
  bool at_infinity = false;

  static constexpr StereoPoint infinity() { return {0.0, 0.0, true}; }
  static StereoPoint from(Complex zeta) { return {zeta.real(), zeta.imag(), false}; }
  Complex value() const { return {re, im}; }
  /// |zeta|^2; only meaningful for finite points.
  double norm_sq() const { return re * re + im * im; }
};

SpherePoint stereo_to_sphere(const StereoPoint& p);
StereoPoint sphere_to_stereo(const SpherePoint& q);

/// z-coordinate of the sphere point with stereographic coordinate zeta,
/// (|zeta|^2 - 1) / (|zeta|^2 + 1); equals 1 at infinity.
double height(const StereoPoint& p);

/// Element of SL(2,C) acting by fractional linear transformations.
struct MobiusElement {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MobiusElement identity() { return {}; }
  /// diag(lambda^{1/2}, lambda^{-1/2}), i.e. zeta -> lambda * zeta.
  static MobiusElement dilation(double lambda);
  /// Rescales (a, b, c, d) by a square root of the determinant.
  /// Throws DegenerateMatrixError for a (numerically) singular matrix.
  static MobiusElement normalized(Complex a, Complex b, Complex c, Complex d);

  Complex determinant() const { return a * d - b * c; }
  MobiusElement inverse() const { return {d, -b, -c, a}; }
  MobiusElement adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  /// Frobenius norm of the difference.
  double distance(const MobiusElement& other) const;
};

MobiusElement operator*(const MobiusElement& l, const MobiusElement& r);

/// M zeta = (a zeta + b) / (c zeta + d), with the poles sent to infinity and
/// infinity sent to a / c.
StereoPoint mobius_apply(const MobiusElement& m, const StereoPoint& p);

/// |a zeta + b|^2 + |c zeta + d|^2, the squared length of M (zeta, 1)^T.
/// This equals |c zeta + d|^2 (1 + |M zeta|^2) and is finite at the poles.
double lifted_norm_sq(const MobiusElement& m, const StereoPoint& p);

/// Conformal factor |d(M zeta)/d zeta| measured in the spherical metric,
/// squared: (1 + |zeta|^2)^2 / (|a zeta + b|^2 + |c zeta + d|^2)^2.
/// At infinity the limit 1 / (|a|^2 + |c|^2)^2 is returned.
double spherical_stretch_sq(const MobiusElement& m, const StereoPoint& p);

/// M = U diag(lambda^{1/2}, lambda^{-1/2}) V^* with U, V in SU(2), lambda >= 1.
struct MobiusSVD {
  MobiusElement U;
  MobiusElement V;
  double lambda = 1.0;

  MobiusElement reconstruct() const;
};

/// Singular value decomposition with lambda the larger eigenvalue of M M^*.
/// When M M^* = I the decomposition is U = M, V = I.
/// Throws DegenerateMatrixError when |ad - bc - 1| > 1e-8.
MobiusSVD mobius_svd(const MobiusElement& m);

/// chi_lambda(zeta) = (1 + lambda^2 |zeta|^2)^2 / (lambda^2 (1 + |zeta|^2)^2);
/// lambda^2 at infinity.
double chi(double lambda, const StereoPoint& p);
/// chi_lambda as a function of r = |zeta|.
double chi_radial(double lambda, double r);

/// d/dr log chi_lambda(r) = 4 r (lambda^2 - 1) / ((1 + r^2)(1 + lambda^2 r^2)).
double grad_log_chi(double lambda, double r);

/// L2 norm of the gradient of log chi_lambda, evaluated as
/// sqrt(8 pi int_0^inf (d/dr log chi)^2 r / (1 + r^2)^2 dr) after the
/// substitution r = tan(theta / 2). Throws QuadratureError if the adaptive
/// rule does not reach 1e-9 relative accuracy.
double norm_grad_log_chi_L2(double lambda);

/// Explicit upper bound for norm_grad_log_chi_L2:
/// 4 (8 pi)^{1/2} ((lambda + 1)/lambda) ((lambda - 1)/lambda) (3/8 + log lambda)^{1/2}.
double norm_grad_log_chi_bound(double lambda);

/// Constant C with norm <= C log(lambda) for lambda <= e and
/// norm <= C (log lambda)^{1/2} for lambda >= e: 4 (8 pi)^{1/2} * 2 * sqrt(2).
double norm_grad_log_chi_scaling_constant();

}  // namespace ahm
