#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ahm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed by Newton iteration on P_n.
/// Rules are cached, so repeated calls with the same n are cheap.
const GaussRule& gauss_legendre(int n);

/// Neumaier-compensated accumulator. Summation order is the call order.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_panels = 20000;
};

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

/// Adaptive Gauss-Legendre panel quadrature of f over [a, b].
///
/// Each panel is integrated with a 10- and a 21-point rule; the difference
/// is the panel error estimate and the worst panel is bisected until
/// sum(err) <= max(abs_tol, rel_tol * |value|). `breakpoints` seeds the
/// initial partition (values outside (a, b) are ignored).
///
/// Throws QuadratureError when max_panels is exhausted.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  const AdaptiveOptions& options = {},
                                  std::span<const double> breakpoints = {});

}  // namespace ahm
