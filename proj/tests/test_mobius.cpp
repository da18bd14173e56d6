#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ahm/errors.hpp"
#include "ahm/mobius.hpp"

using namespace ahm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

MobiusElement random_element(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  auto z = [&] { return Complex(g(rng), g(rng)); };
  return MobiusElement::normalized(z(), z(), z(), z());
}

double matrix_distance_up_to_sign(const MobiusElement& x, const MobiusElement& y) {
  const MobiusElement neg{-y.a, -y.b, -y.c, -y.d};
  return std::min(x.distance(y), x.distance(neg));
}

}  // namespace

TEST_CASE("stereographic projection fixed points") {
  const SpherePoint s = stereo_to_sphere(StereoPoint::from(0.0));
  CHECK(s.x == 0.0);
  CHECK(s.y == 0.0);
  CHECK(s.z == -1.0);
  const SpherePoint e = stereo_to_sphere(StereoPoint::from(1.0));
  CHECK(e.x == Approx(1.0));
  CHECK(std::abs(e.z) < 1e-15);
  const SpherePoint n = stereo_to_sphere(StereoPoint::infinity());
  CHECK(n.z == 1.0);

  CHECK(sphere_to_stereo({0, 0, -1}).norm_sq() == 0.0);
  CHECK(sphere_to_stereo({0, 0, 1}).at_infinity);
  const StereoPoint one = sphere_to_stereo({1, 0, 0});
  CHECK(one.re == Approx(1.0));
  CHECK(one.im == Approx(0.0));
}

TEST_CASE("stereographic round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lr(std::log(1e-3), std::log(1e3)), ang(0, 2 * kPi);
  for (int k = 0; k < 1000; ++k) {
    const Complex z = std::polar(std::exp(lr(rng)), ang(rng));
    const StereoPoint back = sphere_to_stereo(stereo_to_sphere(StereoPoint::from(z)));
    REQUIRE_FALSE(back.at_infinity);
    CHECK(std::abs(back.value() - z) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("height") {
  CHECK(height(StereoPoint::from(0.0)) == -1.0);
  CHECK(height(StereoPoint::infinity()) == 1.0);
  CHECK(height(StereoPoint::from(Complex(0.0, 1.0))) == Approx(0.0));
}

TEST_CASE("mobius action") {
  const StereoPoint p = StereoPoint::from(Complex(0.3, -2.0));
  const StereoPoint q = mobius_apply(MobiusElement::identity(), p);
  CHECK(q.re == p.re);
  CHECK(q.im == p.im);

  const StereoPoint d = mobius_apply(MobiusElement::dilation(4.0), p);
  CHECK(d.re == Approx(1.2));
  CHECK(d.im == Approx(-8.0));

  SUBCASE("poles and infinity") {
    const MobiusElement m = MobiusElement::normalized(1.0, 2.0, 1.0, 3.0);
    CHECK(mobius_apply(m, StereoPoint::from(-3.0)).at_infinity);
    const StereoPoint inf = mobius_apply(m, StereoPoint::infinity());
    CHECK(inf.value().real() == Approx(1.0));
    CHECK(mobius_apply(MobiusElement::dilation(2.0), StereoPoint::infinity()).at_infinity);
  }

  SUBCASE("group law") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int k = 0; k < 200; ++k) {
      const MobiusElement a = random_element(rng), b = random_element(rng);
      const StereoPoint z = StereoPoint::from(Complex(g(rng), g(rng)));
      const StereoPoint lhs = mobius_apply(a, mobius_apply(b, z));
      const StereoPoint rhs = mobius_apply(a * b, z);
      REQUIRE(lhs.at_infinity == rhs.at_infinity);
      const double scale = std::max(1.0, std::abs(rhs.value()));
      CHECK(std::abs(lhs.value() - rhs.value()) <= 1e-10 * scale * scale);
    }
  }
}

TEST_CASE("normalization") {
  const MobiusElement m = MobiusElement::normalized(2.0, 1.0, 0.0, 3.0);
  CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
  CHECK_THROWS_AS(MobiusElement::normalized(1.0, 2.0, 2.0, 4.0), DegenerateMatrixError);
}

TEST_CASE("singular value decomposition") {
  SUBCASE("unitary input") {
    const double t = 0.7;
    const MobiusElement rot{Complex(std::cos(t), 0), Complex(std::sin(t), 0),
                            Complex(-std::sin(t), 0), Complex(std::cos(t), 0)};
    const MobiusSVD s = mobius_svd(rot);
    CHECK(s.lambda == Approx(1.0));
    CHECK(matrix_distance_up_to_sign(s.reconstruct(), rot) < 1e-10);
  }
  SUBCASE("diagonal input") {
    const MobiusElement m{2.0, 0.0, 0.0, 0.5};
    const MobiusSVD s = mobius_svd(m);
    CHECK(s.lambda == Approx(4.0));
    CHECK(matrix_distance_up_to_sign(s.U, MobiusElement::identity()) < 1e-12);
    CHECK(matrix_distance_up_to_sign(s.V, MobiusElement::identity()) < 1e-12);
  }
  SUBCASE("random inputs") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 500; ++k) {
      const MobiusElement m = random_element(rng);
      const MobiusSVD s = mobius_svd(m);
      CHECK(s.lambda >= 1.0);
      CHECK(matrix_distance_up_to_sign(s.reconstruct(), m) < 1e-10);
      CHECK(matrix_distance_up_to_sign(s.U * s.U.adjoint(), MobiusElement::identity()) < 1e-10);
      CHECK(matrix_distance_up_to_sign(s.V * s.V.adjoint(), MobiusElement::identity()) < 1e-10);
      // lambda + 1/lambda is the trace of M M^*
      const MobiusElement mm = m * m.adjoint();
      CHECK(s.lambda + 1.0 / s.lambda == Approx((mm.a + mm.d).real()).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(mobius_svd(MobiusElement{2.0, 0.0, 0.0, 1.0}), DegenerateMatrixError);
}

TEST_CASE("conformal factor") {
  const MobiusElement m = MobiusElement::normalized(Complex(1, 2), 0.5, Complex(0, -1), 2.0);
  const StereoPoint z = StereoPoint::from(Complex(0.4, 0.9));
  const double lifted = lifted_norm_sq(m, z);
  const Complex w = (m.c * z.value() + m.d);
  const StereoPoint mz = mobius_apply(m, z);
  CHECK(lifted == Approx(std::norm(w) * (1.0 + mz.norm_sq())));
  const double expected = std::pow(1.0 + z.norm_sq(), 2) / (lifted * lifted);
  CHECK(spherical_stretch_sq(m, z) == Approx(expected));
  CHECK(spherical_stretch_sq(m, StereoPoint::infinity()) ==
        Approx(1.0 / std::pow(std::norm(m.a) + std::norm(m.c), 2)));
}

TEST_CASE("chi") {
  CHECK(chi(1.0, StereoPoint::from(Complex(3.0, -1.0))) == Approx(1.0));
  CHECK(chi(3.0, StereoPoint::from(0.0)) == Approx(1.0 / 9.0));
  CHECK(chi(5.0, StereoPoint::infinity()) == Approx(25.0));
  double sup = 0.0;
  for (int k = 0; k <= 4000; ++k) sup = std::max(sup, chi_radial(5.0, std::pow(10.0, -3.0 + 9.0 * k / 4000)));
  CHECK(sup <= 25.0 * (1 + 1e-12));
  CHECK(sup == Approx(25.0).epsilon(1e-6));
}

TEST_CASE("gradient of log chi") {
  CHECK(grad_log_chi(1.0, 0.8) == 0.0);
  CHECK(grad_log_chi(4.0, 0.0) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lam(1.0, 20.0), rad(0.01, 5.0);
  for (int k = 0; k < 100; ++k) {
    const double l = lam(rng), r = rad(rng), h = 1e-5 * r;
    const double fd = (std::log(chi_radial(l, r + h)) - std::log(chi_radial(l, r - h))) / (2 * h);
    CHECK(std::abs(grad_log_chi(l, r) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("L2 norm of the gradient of log chi") {
  CHECK(norm_grad_log_chi_L2(1.0) == 0.0);
  const double e = std::numbers::e;
  // regression values from an independent 50-digit quadrature
  CHECK(norm_grad_log_chi_L2(10.0) == Approx(19.973008756044330617).epsilon(1e-10));
  CHECK(norm_grad_log_chi_L2(e) == Approx(8.0574542027911748736).epsilon(1e-10));
  CHECK(norm_grad_log_chi_L2(2.0) == Approx(5.2949725330165955057).epsilon(1e-10));
  CHECK(norm_grad_log_chi_L2(std::exp(10.0)) == Approx(58.750005749560507967).epsilon(1e-10));

  const double explicit_e =
      4 * std::sqrt(8 * kPi) * ((e + 1) / e) * ((e - 1) / e) * std::sqrt(11.0 / 8.0);
  CHECK(norm_grad_log_chi_L2(e) <= explicit_e);
  CHECK(norm_grad_log_chi_bound(e) == Approx(explicit_e));
  for (double l : {1.01, 1.5, 2.0, 5.0, 30.0, 1e3, 1e6})
    CHECK(norm_grad_log_chi_L2(l) <= norm_grad_log_chi_bound(l));

  const double c = norm_grad_log_chi_scaling_constant();
  for (double l : {1.01, 1.3, 2.0, e}) CHECK(norm_grad_log_chi_L2(l) <= c * std::log(l));
  for (double l : {e, 10.0, 1e4, 1e8}) CHECK(norm_grad_log_chi_L2(l) <= c * std::sqrt(std::log(l)));
}
