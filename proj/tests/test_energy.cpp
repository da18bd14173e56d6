#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ahm/energy.hpp"
#include "ahm/errors.hpp"
#include "ahm/radial.hpp"

using namespace ahm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const double kE = std::numbers::e;

const QuadratureGrid& grid() {
  static const QuadratureGrid g = make_grid(256, 256);
  return g;
}

double floor_of(double alpha) { return std::pow(2.0, 2 * alpha + 1) * kPi; }

}  // namespace

TEST_CASE("alpha energy of rotations and dilations") {
  CHECK(rotation_energy(1.5) == Approx(16 * kPi));
  CHECK(alpha_energy(*identity_map(), 2.0, grid()) == Approx(32 * kPi).epsilon(1e-12));
  const MapHandle m7 = mobius_map(MobiusElement::dilation(7.0));
  CHECK(std::abs(alpha_energy(*m7, 1.0, grid()) - 8 * kPi) < 1e-9);
  const MapHandle m5 = mobius_map(MobiusElement::dilation(5.0));
  CHECK(alpha_energy(*m5, 1.2, grid()) == Approx(dilation_energy(1.2, 5.0).value).epsilon(1e-8));
}

TEST_CASE("dilation energy") {
  CHECK(dilation_energy(1.5, 1.0).value == Approx(16 * kPi).epsilon(1e-15));
  CHECK(dilation_energy(1.5, 1.0).xi == 0.0);
  for (double l : {2.0, 10.0, 100.0}) {
    CHECK(dilation_energy(1.0, l).value == Approx(8 * kPi).epsilon(1e-12));
    CHECK(std::abs(dilation_energy(1.0, l).xi) < 1e-10);
  }

  // regression values from an independent 40-digit quadrature
  struct Case {
    double alpha, lambda, value, xi;
  };
  const Case cases[] = {
      {1.2, 5.0, 37.16345733281924346, 4.0006064621173174967},
      {1.1, 2.0, 29.130725339656709353, 0.26078683366178150304},
      {1.5, 10.0, 114.15354952164490367, 63.888067064208211855},
      {2.0, 10.0, 921.61762085710174444, 821.0866559422283608},
      {1.5, std::exp(8.0), 26505.94253903352679, 26455.677056576090098},
  };
  for (const Case& c : cases) {
    const DilationEnergyResult d = dilation_energy(c.alpha, c.lambda);
    CHECK(d.value == Approx(c.value).epsilon(1e-12));
    CHECK(d.xi == Approx(c.xi).epsilon(1e-10));
    CHECK(d.G == Approx(c.value / floor_of(c.alpha)).epsilon(1e-12));
  }

  SUBCASE("symmetry and monotonicity") {
    for (double alpha : {1.05, 1.5, 2.0})
      for (double l : {1.5, 4.0, 30.0}) {
        CHECK(dilation_energy(alpha, 1.0 / l).value == Approx(dilation_energy(alpha, l).value).epsilon(1e-13));
        CHECK(dilation_energy(alpha, l * 1.1).value > dilation_energy(alpha, l).value);
      }
  }
  SUBCASE("small log lambda connects to the expansion") {
    const double alpha = 1.4;
    const double a = dilation_energy(alpha, std::exp(0.9e-6)).value;
    const double b = dilation_energy(alpha, std::exp(1.1e-6)).value;
    const double series = floor_of(alpha) * (1 + alpha * (alpha - 1) * 1e-12 / 6);
    CHECK(a <= series);
    CHECK(b >= series);
  }
  SUBCASE("large log lambda stays finite") {
    const DilationEnergyResult d = dilation_energy(2.0, std::exp(300.0));
    CHECK(std::isfinite(d.value));
    CHECK(d.value > 0);
  }
  CHECK_THROWS_AS(dilation_energy(0.5, 2.0), DomainError);
  CHECK_THROWS_AS(dilation_energy(1.5, 0.0), DomainError);
}

TEST_CASE("growth function") {
  CHECK(growth_function(1.3, 0.0).G == Approx(1.0));
  CHECK(growth_function(1.3, 0.0).G_prime == 0.0);
  struct Case {
    double alpha, sigma, G, Gp;
  };
  const Case cases[] = {
      {1.3, 0.15, 1.0166984225502868267, 0.22849688202608566012},
      {1.5, 1.0, 1.8410005843918284934, 2.3900090070413837619},
      {1.05, 2.0, 24.45493935041845679, 47.943942371912068043},
      {2.0, 0.5, 1.0905134391358739631, 0.39173373121460048563},
  };
  for (const Case& c : cases) {
    const GrowthValues g = growth_function(c.alpha, c.sigma);
    CHECK(g.G == Approx(c.G).epsilon(1e-11));
    CHECK(g.G_prime == Approx(c.Gp).epsilon(1e-11));
  }
  for (int k = 1; k <= 40; ++k) CHECK(growth_function(1.4, 0.1 * k).G_prime > 0.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> alpha(1.05, 2.0), sigma(0.05, 3.0);
  for (int k = 0; k < 40; ++k) {
    const double a = alpha(rng), s = sigma(rng), h = 1e-4;
    const double fd = (growth_function(a, s + h).G - growth_function(a, s - h).G) / (2 * h);
    CHECK(growth_function(a, s).G_prime == Approx(fd).epsilon(1e-6));
    // G agrees with the dilation energy at lambda = exp(sigma / (alpha - 1))
    CHECK(growth_function(a, s).G == Approx(dilation_energy(a, std::exp(s / (a - 1))).G).epsilon(1e-10));
  }
  CHECK_THROWS_AS(growth_function(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(growth_function(1.5, -0.1), DomainError);
}

TEST_CASE("log derivative of the dilation energy") {
  CHECK(dilation_energy_log_derivative(1.5, 1.0) == 0.0);
  CHECK(dilation_energy_log_derivative(1.0, 5.0) == 0.0);
  for (double a : {1.1, 1.5, 2.0})
    for (double t : {0.3, 1.0, 2.5}) {
      const double h = 1e-4;
      const double fd = (dilation_energy(a, std::exp(t + h)).value - dilation_energy(a, std::exp(t - h)).value) / (2 * h);
      CHECK(dilation_energy_log_derivative(a, std::exp(t)) == Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("relative energy") {
  const MapHandle id = identity_map();
  CHECK(e_alpha_lambda(*id, 1.4, 1.0, grid()) == Approx(alpha_energy(*id, 1.4, grid())).epsilon(1e-14));
  for (double l : {2.0, 6.0})
    CHECK(e_alpha_lambda(*id, 1.3, l, grid()) == Approx(dilation_energy(1.3, l).value).epsilon(1e-10));

  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 5; ++k) {
    const MobiusElement m = MobiusElement::normalized(Complex(1 + 0.3 * g(rng), 0.3 * g(rng)),
                                                      Complex(0.3 * g(rng), 0.3 * g(rng)),
                                                      Complex(0.3 * g(rng), 0.3 * g(rng)),
                                                      Complex(1 + 0.3 * g(rng), 0.3 * g(rng)));
    const MapHandle u = mobius_map(m);
    const double l = 1.5 + k;
    const MapHandle ul = pullback(u, MobiusElement::dilation(l));
    const double e = alpha_energy(*u, 1.25, grid());
    CHECK(std::abs(e - e_alpha_lambda(*ul, 1.25, l, grid())) <= 1e-8 * e);
  }
}

TEST_CASE("derivative in log lambda at fixed map") {
  const MapHandle id = identity_map();
  CHECK(std::abs(d_energy_d_loglambda(*id, 1.5, 1.0, grid())) < 1e-10);
  for (double l : {2.0, 5.0}) {
    const double a = 1.3;
    const double expected = (a - 1) * floor_of(a) * growth_function(a, (a - 1) * std::log(l)).G_prime;
    CHECK(std::abs(d_energy_d_loglambda(*id, a, l, grid()) - expected) < 1e-7);
  }
  const MapHandle bump = radial_map([](double r) { return std::pair{r + 0.2 * std::sin(r), 1 + 0.2 * std::cos(r)}; }, "bump");
  const double a = 1.6, l = 2.0, h = 1e-4;
  const double fd = (e_alpha_lambda(*bump, a, l * std::exp(h), grid()) -
                     e_alpha_lambda(*bump, a, l * std::exp(-h), grid())) / (2 * h);
  CHECK(d_energy_d_loglambda(*bump, a, l, grid()) == Approx(fd).epsilon(1e-6));
}

TEST_CASE("xi lower bounds") {
  const double l8 = std::exp(8.0);
  const std::vector<BoundCheck> large = check_xi_lower_bounds(1.5, l8);
  REQUIRE_FALSE(large.empty());
  bool saw_large = false;
  for (const BoundCheck& b : large) {
    CHECK(b.passed);
    if (b.regime == Regime::sigma_large) {
      saw_large = true;
      CHECK(b.rhs == Approx(16 * kPi * (kE * kE - kE - 2) / (2 * std::pow(kE, 4)) * l8).epsilon(1e-12));
    }
  }
  CHECK(saw_large);

  bool saw_small = false;
  for (const BoundCheck& b : check_xi_lower_bounds(1.5, std::exp(0.5))) {
    CHECK(b.passed);
    if (b.regime == Regime::sigma_small) {
      saw_small = true;
      CHECK(b.rhs == Approx(16 * kPi / (6 * std::pow(std::cosh(1.0), 2)) * 0.5 * 0.25).epsilon(1e-12));
    }
  }
  CHECK(saw_small);

  for (const BoundCheck& b : check_xi_lower_bounds(1.01, 1.0)) {
    CHECK(b.passed);
    CHECK(b.lhs == 0.0);
    CHECK(b.rhs == 0.0);
    CHECK(b.margin == 0.0);
  }
  CHECK(xi_large_constant() == Approx((kE * kE - kE - 2) / (2 * std::pow(kE, 4))));
  CHECK(xi_small_constant() == Approx(1 / (6 * std::pow(std::cosh(1.0), 2))));
  CHECK(growth_small_constant() == Approx(1 / (3 * std::pow(std::cosh(1.0), 2))));
  CHECK(growth_mid_constant() > 0.0);
  CHECK_THROWS_AS(check_xi_lower_bounds(2.5, 3.0), DomainError);
  CHECK_THROWS_AS(check_xi_lower_bounds(1.5, 0.5), DomainError);
}

TEST_CASE("growth lower bound") {
  const BoundCheck zero = check_growth(1.5, 1.0);
  CHECK(zero.passed);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.margin == 0.0);

  const double a = 1.3, l = std::exp(0.5);
  const BoundCheck b = check_growth(a, l);
  CHECK(b.passed);
  const double beta = a - 1, sigma = 0.15;
  CHECK(b.rhs == Approx((a - 1) * floor_of(a) * sigma / (3 * beta * std::pow(std::cosh(1.0), 2))).epsilon(1e-12));
  CHECK_THROWS_AS(check_growth(1.5, std::exp(5.0)), DomainError);
}

TEST_CASE("closeness gap") {
  const QuadratureGrid& g = grid();
  const BoundCheck id = eaclose_gap(*identity_map(), 1.5, 3.0, g);
  CHECK(id.passed);
  CHECK(std::abs(id.lhs) < 1e-12);
  CHECK(std::abs(id.rhs) < 1e-12);
  for (double mu : {1.5, 3.0})
    for (double l : {1.0, 2.0, 8.0}) {
      const MapHandle v = pullback(identity_map(), MobiusElement::dilation(mu));
      CHECK(eaclose_gap(*v, 1.4, l, g).passed);
    }
  const SolveResult s = minimize_radial(1.2, 3, 1000);
  CHECK(eaclose_gap(*radial_map(s.profile), 1.2, 2.0, g).passed);
}

TEST_CASE("radial Euler-Lagrange terms") {
  const RadialProfile p = RadialProfile::from_function(3, 400, [](double r) { return 3 * r + 0.1 * std::sin(2 * r); });
  for (double v : radial_el_terms(p, 1.0, 4.0).f1) CHECK(v == 0.0);
  for (double v : radial_el_terms(p, 1.0, 4.0).f2) CHECK(v == 0.0);
  for (double v : radial_el_terms(p, 1.5, 1.0).f2) CHECK(v == 0.0);
  const RadialProfile line = RadialProfile::from_function(1, 400, [](double r) { return r; });
  for (double v : radial_el_terms(line, 1.5, 1.0).f1) CHECK(std::abs(v) < 1e-8);
}
