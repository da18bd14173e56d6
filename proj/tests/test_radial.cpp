#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ahm/energy.hpp"
#include "ahm/errors.hpp"
#include "ahm/radial.hpp"

using namespace ahm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double floor_of(double alpha) { return std::pow(2.0, 2 * alpha + 1) * kPi; }

const SolveResult& n3_solution() {
  static const SolveResult s = minimize_radial(1.2, 3, 4000);
  return s;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("profile invariants") {
  const RadialProfile p(2, std::vector<double>(201, 1.0));
  CHECK(p[0] == 0.0);
  CHECK(p[200] == Approx(2 * kPi));
  CHECK(p.node(200) == Approx(kPi));
  CHECK_THROWS_AS(RadialProfile(1, std::vector<double>(50, 0.0)), DomainError);

  const RadialProfile q = RadialProfile::from_function(1, 200, [](double r) { return r + 0.1 * std::sin(r); });
  const ProfileSpline s(q);
  CHECK(s.value(0.3) == Approx(0.3 + 0.1 * std::sin(0.3)).epsilon(1e-9));
  CHECK(s.derivative(1.1) == Approx(1 + 0.1 * std::cos(1.1)).epsilon(1e-6));
}

TEST_CASE("radial energy") {
  for (double a : {1.0, 1.3, 2.0}) {
    const RadialProfile line = RadialProfile::from_function(1, 500, [](double r) { return r; });
    CHECK(radial_energy(line, a) == Approx(floor_of(a)).epsilon(1e-12));
  }
  const RadialProfile three = RadialProfile::from_function(3, 1000, [](double r) { return 3 * r; });
  const double e3 = radial_energy(three, 1.2);
  CHECK(std::isfinite(e3));
  CHECK(e3 >= std::pow(2.0, 3 * 1.2 + 1) * kPi);

  SUBCASE("reflection r -> pi - r, f -> n pi - f") {
    const auto f = [](double r) { return 3 * r + 0.4 * std::sin(r) * (1 + std::cos(r)); };
    const RadialProfile p = RadialProfile::from_function(3, 600, f);
    const RadialProfile q = RadialProfile::from_function(3, 600, [&](double r) { return 3 * kPi - f(kPi - r); });
    CHECK(radial_energy(q, 1.4) == Approx(radial_energy(p, 1.4)).epsilon(1e-13));
  }
  SUBCASE("pieces add up") {
    const double a = 1.7;
    const double whole = radial_energy(three, a);
    const double sum = partial_radial_energy(three, a, 0, 0.9) + partial_radial_energy(three, a, 0.9, 2.2) +
                       partial_radial_energy(three, a, 2.2, kPi);
    CHECK(sum == Approx(whole).epsilon(1e-12));
  }
}

TEST_CASE("energy gradient against finite differences") {
  const double a = 1.35;
  const RadialProfile p = RadialProfile::from_function(3, 120, [](double r) { return 3 * r + 0.3 * std::sin(2 * r); });
  const std::vector<double> g = radial_energy_gradient(p, a);
  REQUIRE(g.size() == 119u);
  const std::vector<double> base(p.values().begin(), p.values().end());
  for (int i : {1, 2, 7, 40, 60, 100, 118, 119}) {
    const double h = 1e-6;
    std::vector<double> up = base, dn = base;
    up[i] += h;
    dn[i] -= h;
    const double fd = (radial_energy(RadialProfile(3, up), a) - radial_energy(RadialProfile(3, dn), a)) / (2 * h);
    // central differences of I ~ 100 carry rounding noise of about 1e-8
    CHECK(std::abs(g[i - 1] - fd) <= 1e-6 * std::abs(fd) + 1e-7);
  }
}

TEST_CASE("residual") {
  for (double a : {1.2, 2.0}) {
    const RadialProfile line = RadialProfile::from_function(1, 500, [](double r) { return r; });
    CHECK(radial_residual(line, a).sup < 1e-9);
  }
  // at alpha = 1 the residual is the harmonic-map operator; f = r + eps sin r is not harmonic
  const RadialProfile bump = RadialProfile::from_function(1, 800, [](double r) { return r + 0.1 * std::sin(r); });
  const RadialResidual res = radial_residual(bump, 1.0);
  const double r = res.r[399];
  const double f = r + 0.1 * std::sin(r), fp = 1 + 0.1 * std::cos(r), fpp = -0.1 * std::sin(r);
  const double exact = fpp + std::cos(r) / std::sin(r) * fp - std::cos(f) * std::sin(f) / std::pow(std::sin(r), 2);
  CHECK(res.value[399] == Approx(exact).epsilon(1e-8));
}

TEST_CASE("degree and crossings") {
  const RadialProfile line = RadialProfile::from_function(1, 400, [](double r) { return r; });
  CHECK(radial_degree(line) == Approx(1.0).epsilon(1e-14));
  const RadialProfile two = RadialProfile::from_function(2, 400, [](double r) { return 2 * r; });
  CHECK(std::abs(radial_degree(two)) < 1e-14);
  const RadialProfile three = RadialProfile::from_function(3, 400, [](double r) { return 3 * r; });
  CHECK(*first_crossing(three, kPi) == Approx(kPi / 3).epsilon(1e-12));
  CHECK_FALSE(first_crossing(line, 2 * kPi).has_value());
  CHECK(interpolate_linear(three, 1.0) == Approx(3.0));
}

TEST_CASE("degree one minimizer is the rotation") {
  const RadialProfile init = RadialProfile::from_function(1, 2000, [](double r) { return r + 0.3 * std::sin(r); });
  const SolveResult s = minimize_radial(1.5, 1, 2000, init);
  CHECK(s.converged);
  CHECK(std::abs(s.energy - 16 * kPi) / s.energy <= 1e-6);
  CHECK(s.degree_int == 1);
  const RadialProfile line = RadialProfile::from_function(1, 2000, [](double r) { return r; });
  CHECK(sup_distance(s.profile.values(), line.values()) < 1e-6);
  CHECK(s.energy_trace.front() >= s.energy_trace.back());
}

TEST_CASE("n = 3 minimizer") {
  const SolveResult& s = n3_solution();
  CHECK(s.converged);
  CHECK(s.degree_int == 1);
  CHECK(s.residual_sup <= 1e-4);
  CHECK(s.energy > std::pow(2.0, 3 * 1.2 + 1) * kPi);
  CHECK(s.energy >= rotation_energy(1.2));
  // regression values for N = 4000
  CHECK(s.energy == Approx(106.55824666567).epsilon(1e-10));
  REQUIRE(s.r1);
  REQUIRE(s.r2);
  CHECK(*s.r1 == Approx(0.681143821461).epsilon(1e-9));
  CHECK(*s.r2 == Approx(2.460448832129).epsilon(1e-9));
  CHECK(*s.r1 + *s.r2 == Approx(kPi).epsilon(1e-10));

  for (std::size_t i = 1; i < s.energy_trace.size(); ++i) CHECK(s.energy_trace[i] <= s.energy_trace[i - 1]);

  const AnnulusSplit split = annulus_split(s);
  CHECK(split.disc_energy + split.annulus_energy + split.cap_energy == Approx(s.energy).epsilon(1e-12));
  const ProfileSpline spline(s.profile);
  CHECK(std::abs(spline.value(split.r1) - kPi) < 1e-8);
  CHECK(std::abs(spline.value(split.r2) - 2 * kPi) < 1e-8);
  CHECK(split.disc_energy >= split.disc_area_floor);
  CHECK(split.annulus_energy >= split.annulus_area_floor);
  CHECK(split.cap_energy >= split.cap_area_floor);
  CHECK(split.disc_energy >= split.disc_degree_floor);
  CHECK(split.cap_energy >= split.cap_degree_floor);
}

TEST_CASE("n = 2 minimizer has degree zero") {
  const SolveResult s = minimize_radial(1.2, 2, 1000);
  CHECK(s.converged);
  CHECK(s.degree_int == 0);
}

TEST_CASE("first-order descent methods decrease the energy") {
  const RadialProfile init = RadialProfile::from_function(1, 200, [](double r) { return r + 0.2 * std::sin(r); });
  for (Descent m : {Descent::gradient, Descent::conjugate_gradient}) {
    SolveOptions o;
    o.method = m;
    o.max_iters = 5000;
    const SolveResult s = minimize_radial(1.5, 1, 200, init, o);
    REQUIRE(s.energy_trace.size() > 1);
    for (std::size_t i = 1; i < s.energy_trace.size(); ++i) CHECK(s.energy_trace[i] <= s.energy_trace[i - 1]);
    CHECK(s.energy < radial_energy(init, 1.5));
    CHECK(s.energy == Approx(16 * kPi).epsilon(m == Descent::gradient ? 1e-3 : 1e-8));
  }
  CHECK(to_string(Descent::newton) == "newton");
}

TEST_CASE("continuation") {
  SolveOptions o;
  o.continuation = {1.5, 1.3};
  const SolveResult s = minimize_radial(1.2, 3, 1000, std::nullopt, o);
  CHECK(s.converged);
  CHECK(s.energy == Approx(minimize_radial(1.2, 3, 1000).energy).epsilon(1e-9));
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(minimize_radial(1.0, 3, 1000), DomainError);
  CHECK_THROWS_AS(minimize_radial(1.2, 3, 50), DomainError);
  CHECK_THROWS_AS(annulus_split(minimize_radial(1.2, 1, 200)), DomainError);
}

TEST_CASE("shooting") {
  const RadialProfile one = shoot_radial(1.7, 1, 1.0, 500);
  const RadialProfile line = RadialProfile::from_function(1, 500, [](double r) { return r; });
  CHECK(sup_distance(one.values(), line.values()) < 1e-8);

  const SolveResult& s = n3_solution();
  const double slope = s.profile[1] / s.profile.node(1);
  const RadialProfile shot = shoot_radial(1.2, 3, slope, 4000);
  CHECK(sup_distance(shot.values(), s.profile.values()) < 1e-3);
  CHECK(radial_energy(shot, 1.2) == Approx(s.energy).epsilon(1e-8));

  CHECK(series_cubic_coefficient(1.4, 1.0) == Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(shoot_radial(1.2, 3, 0.0, 400), DomainError);
  CHECK_THROWS_AS(integrate_shot(1.2, -1.0, 400), DomainError);
}
