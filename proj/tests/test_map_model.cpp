#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ahm/errors.hpp"
#include "ahm/map_model.hpp"

using namespace ahm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

const QuadratureGrid& grid() {
  static const QuadratureGrid g = make_grid(256, 256);
  return g;
}

MobiusElement random_element(std::mt19937_64& rng, double max_lambda) {
  std::normal_distribution<double> g;
  for (;;) {
    auto z = [&] { return Complex(g(rng), g(rng)); };
    const MobiusElement m = MobiusElement::normalized(z(), z(), z(), z());
    if (mobius_svd(m).lambda <= max_lambda) return m;
  }
}

}  // namespace

TEST_CASE("sphere grid") {
  const QuadratureGrid& g = grid();
  CHECK(g.nodes.size() == 256u * 256u);
  CHECK(integrate(g, [](const QuadratureNode&) { return 1.0; }) == Approx(4 * kPi).epsilon(1e-12));
  CHECK(std::abs(integrate(g, [](const QuadratureNode& q) { return height(q.point); })) < 1e-9);
  // z^2 integrates to 4 pi / 3
  CHECK(integrate(g, [](const QuadratureNode& q) { return std::pow(height(q.point), 2); }) ==
        Approx(4 * kPi / 3).epsilon(1e-12));
  CHECK(dirichlet_integral(*identity_map(), g) == Approx(4 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(make_grid(3, 16), DomainError);
}

TEST_CASE("pointwise data") {
  const StereoPoint z = StereoPoint::from(Complex(0.6, -0.2));
  CHECK(identity_map()->evaluate(z).energy_density == Approx(1.0));
  CHECK(identity_map()->evaluate(z).jacobian == Approx(1.0));
  CHECK(constant_map()->evaluate(z).energy_density == 0.0);
  CHECK(conjugation_map()->evaluate(z).jacobian == Approx(-1.0));

  const double lambda = 3.5;
  const MapSample s = mobius_map(MobiusElement::dilation(lambda))->evaluate(z);
  const double r2 = z.norm_sq();
  CHECK(s.energy_density ==
        Approx(lambda * lambda * std::pow(1 + r2, 2) / std::pow(1 + lambda * lambda * r2, 2)));
  CHECK(s.energy_density * chi(lambda, z) == Approx(1.0));
}

TEST_CASE("|J| <= e") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  const MapHandle maps[] = {pullback(conjugation_map(), random_element(rng, 6.0)),
                            mobius_map(random_element(rng, 6.0)),
                            radial_map([](double r) { return std::pair{3 * r, 3.0}; }, "3r")};
  for (const MapHandle& u : maps)
    for (int k = 0; k < 200; ++k) {
      const MapSample s = u->evaluate(StereoPoint::from(Complex(g(rng), g(rng))));
      CHECK(std::abs(s.jacobian) <= s.energy_density * (1 + 1e-12) + 1e-14);
    }
}

TEST_CASE("pullback") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const MapHandle u = radial_map([](double r) { return std::pair{r + 0.3 * std::sin(r), 1 + 0.3 * std::cos(r)}; }, "bump");
  const MapHandle same = pullback(u, MobiusElement::identity());
  for (int k = 0; k < 50; ++k) {
    const StereoPoint z = StereoPoint::from(Complex(g(rng), g(rng)));
    CHECK(same->evaluate(z).energy_density == Approx(u->evaluate(z).energy_density));
  }
  const double lambda = 2.7;
  const MapHandle ul = pullback(u, MobiusElement::dilation(lambda));
  for (int k = 0; k < 200; ++k) {
    const StereoPoint z = StereoPoint::from(Complex(g(rng), g(rng)));
    const StereoPoint lz = StereoPoint::from(lambda * z.value());
    const double lhs = ul->evaluate(z).energy_density * chi(lambda, z);
    const double rhs = u->evaluate(lz).energy_density;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
  }
}

TEST_CASE("degree") {
  CHECK(degree(*identity_map(), grid()).rounded == 1);
  CHECK(degree(*constant_map(), grid()).rounded == 0);
  const DegreeResult c = degree(*conjugation_map(), grid());
  CHECK(c.rounded == -1);
  CHECK(c.near_integer);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const MobiusElement m = random_element(rng, 10.0);
    CHECK(degree(*mobius_map(m), grid()).rounded == 1);
    CHECK(degree(*pullback(conjugation_map(), m), grid()).rounded == -1);
  }
  const MapHandle three = radial_map([](double r) { return std::pair{3 * r, 3.0}; }, "3r");
  CHECK(degree(*three, grid()).rounded == 1);
  const MapHandle two = radial_map([](double r) { return std::pair{2 * r, 2.0}; }, "2r");
  CHECK(degree(*two, grid()).rounded == 0);
}

TEST_CASE("energy report") {
  const EnergyReport id = energy_report(*identity_map(), 1.5, grid());
  CHECK(id.e_alpha == Approx(16 * kPi).epsilon(1e-12));
  CHECK(id.degree_int == 1);
  CHECK(id.passes_floor);
  CHECK(id.e_dirichlet_plus_area == Approx(8 * kPi).epsilon(1e-12));

  for (double alpha : {1.0, 1.3, 2.0}) {
    const EnergyReport c = energy_report(*constant_map(), alpha, grid());
    CHECK(c.e_alpha == Approx(std::pow(2.0, alpha - 1) * 4 * kPi).epsilon(1e-12));
    CHECK(c.degree_int == 0);
    CHECK(c.passes_floor);
  }

  std::mt19937_64 rng(13);
  for (int k = 0; k < 10; ++k) {
    const MobiusElement m = random_element(rng, 8.0);
    const EnergyReport r = energy_report(*pullback(identity_map(), m), 1.2, grid());
    CHECK(r.e_alpha >= std::pow(2.0, 3.4) * kPi - 1e-8);
    CHECK(r.passes_floor);
  }
  CHECK_THROWS_AS(energy_report(*identity_map(), 0.9, grid()), DomainError);
}

TEST_CASE("radial map from a profile") {
  const RadialProfile p = RadialProfile::from_function(1, 400, [](double r) { return r; });
  const MapHandle u = radial_map(p);
  const StereoPoint z = StereoPoint::from(Complex(0.3, 0.4));
  CHECK(u->evaluate(z).energy_density == Approx(1.0).epsilon(1e-10));
  CHECK(polar_angle(StereoPoint::from(1.0)) == Approx(kPi / 2));
  CHECK(polar_angle(StereoPoint::infinity()) == 0.0);
}
