#include "ahm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "ahm/errors.hpp"

namespace ahm {
namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // weight from the derivative at the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel integrate_panel(const std::function<double(double)>& f, double a,
                      double b) {
  const GaussRule& lo = gauss_legendre(10);
  const GaussRule& hi = gauss_legendre(21);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  CompensatedSum qlo, qhi;
  for (std::size_t i = 0; i < lo.nodes.size(); ++i)
    qlo.add(lo.weights[i] * f(mid + half * lo.nodes[i]));
  for (std::size_t i = 0; i < hi.nodes.size(); ++i)
    qhi.add(hi.weights[i] * f(mid + half * hi.nodes[i]));
  const double vhi = half * qhi.value();
  const double vlo = half * qlo.value();
  return {a, b, vhi, std::abs(vhi - vlo)};
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_gauss_legendre(n));
  return *slot;
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  const AdaptiveOptions& options,
                                  std::span<const double> breakpoints) {
  if (a == b) return {};
  if (b < a) {
    AdaptiveResult r = integrate_adaptive(f, b, a, options, breakpoints);
    r.value = -r.value;
    return r;
  }
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> queue;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    queue.push(integrate_panel(f, cuts[i], cuts[i + 1]));

  auto totals = [&queue]() {
    // Re-sum from a sorted copy so the result does not depend on heap layout.
    auto copy = queue;
    std::vector<Panel> panels;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    CompensatedSum value, error;
    for (const Panel& p : panels) {
      value.add(p.value);
      error.add(p.error);
    }
    return std::pair{value.value(), error.value()};
  };

  // Running sums drive the loop; the final answer is re-summed in order.
  CompensatedSum run_value, run_error;
  {
    auto [v, e] = totals();
    run_value.add(v);
    run_error.add(e);
  }
  while (true) {
    const double value = run_value.value();
    const double error = run_error.value();
    const double target = std::max(options.abs_tol, options.rel_tol * std::abs(value));
    if (error <= target) break;
    if (static_cast<int>(queue.size()) >= options.max_panels)
      throw QuadratureError("integrate_adaptive: no convergence on [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "] after " + std::to_string(queue.size()) +
                            " panels (error estimate " + std::to_string(error) +
                            ")");
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // panel cannot be split further in floating point
      queue.push({worst.a, worst.b, worst.value, 0.0});
      run_error.add(-worst.error);
      continue;
    }
    const Panel left = integrate_panel(f, worst.a, mid);
    const Panel right = integrate_panel(f, mid, worst.b);
    run_value.add(left.value + right.value - worst.value);
    run_error.add(left.error + right.error - worst.error);
    queue.push(left);
    queue.push(right);
  }
  auto [value, error] = totals();
  return {value, error, static_cast<int>(queue.size())};
}

}  // namespace ahm
