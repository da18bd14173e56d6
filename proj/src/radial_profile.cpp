#include "ahm/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ahm/errors.hpp"

namespace ahm {

RadialProfile::RadialProfile(int winding, std::vector<double> values)
    : winding_(winding), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) - 1 < kMinCells)
    throw DomainError("RadialProfile: need at least " + std::to_string(kMinCells) +
                      " cells, got " + std::to_string(static_cast<int>(values_.size()) - 1));
  values_.front() = 0.0;
  values_.back() = winding_ * std::numbers::pi;
}

RadialProfile RadialProfile::from_function(int winding, int cells,
                                           const std::function<double(double)>& f) {
  if (cells < kMinCells)
    throw DomainError("RadialProfile: need at least " + std::to_string(kMinCells) + " cells");
  std::vector<double> v(cells + 1);
  const double h = std::numbers::pi / cells;
  for (int i = 0; i <= cells; ++i) v[i] = f(i * h);
  return RadialProfile(winding, std::move(v));
}

double RadialProfile::step() const noexcept { return std::numbers::pi / cells(); }

double RadialProfile::node(int i) const noexcept {
  return i == cells() ? std::numbers::pi : i * step();
}

void RadialProfile::set_interior(std::span<const double> interior) {
  if (static_cast<int>(interior.size()) != cells() - 1)
    throw DomainError("RadialProfile::set_interior: size mismatch");
  std::copy(interior.begin(), interior.end(), values_.begin() + 1);
}

ProfileSpline::ProfileSpline(const RadialProfile& profile)
    : step_(profile.step()), f_(profile.values().begin(), profile.values().end()) {
  const int n = static_cast<int>(f_.size()) - 1;
  m_.assign(n + 1, 0.0);
  // Uniform natural spline: m[i-1] + 4 m[i] + m[i+1] = 6 (f[i-1] - 2 f[i] + f[i+1]) / h^2
  std::vector<double> c(n + 1, 0.0), d(n + 1, 0.0);
  const double scale = 6.0 / (step_ * step_);
  for (int i = 1; i < n; ++i) {
    const double rhs = scale * (f_[i - 1] - 2.0 * f_[i] + f_[i + 1]);
    const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
    c[i] = 1.0 / denom;
    d[i] = (rhs - (i > 1 ? d[i - 1] : 0.0)) / denom;
  }
  for (int i = n - 1; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
}

int ProfileSpline::locate(double r) const {
  const int n = static_cast<int>(f_.size()) - 1;
  return std::clamp(static_cast<int>(std::floor(r / step_)), 0, n - 1);
}

double ProfileSpline::value(double r) const {
  const int i = locate(r);
  const double t = (r - i * step_) / step_;
  const double u = 1.0 - t;
  const double h2 = step_ * step_;
  return u * f_[i] + t * f_[i + 1] +
         h2 / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
}

double ProfileSpline::derivative(double r) const {
  const int i = locate(r);
  const double t = (r - i * step_) / step_;
  const double u = 1.0 - t;
  return (f_[i + 1] - f_[i]) / step_ +
         step_ / 6.0 * (-(3.0 * u * u - 1.0) * m_[i] + (3.0 * t * t - 1.0) * m_[i + 1]);
}

}  // namespace ahm
