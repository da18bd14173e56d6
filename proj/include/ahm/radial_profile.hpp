#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ahm {

/// Samples of a radial function f on the uniform grid r_i = i pi / N,
/// i = 0..N, with f(0) = 0 and f(pi) = n pi held exactly. The profile
/// describes the map (r, t) -> (sin f cos t, sin f sin t, cos f), where r is
/// the polar angle measured from the north pole.
class RadialProfile {
 public:
  static constexpr int kMinCells = 100;

  /// `values` holds all N + 1 samples; the endpoints are overwritten with
  /// 0 and n pi. Throws DomainError for N < kMinCells.
  RadialProfile(int winding, std::vector<double> values);

  /// Samples f on N cells.
  static RadialProfile from_function(int winding, int cells,
                                     const std::function<double(double)>& f);

  int winding() const noexcept { return winding_; }
  int cells() const noexcept { return static_cast<int>(values_.size()) - 1; }
  double step() const noexcept;
  double node(int i) const noexcept;
  std::span<const double> values() const noexcept { return values_; }
  double operator[](int i) const noexcept { return values_[i]; }

  /// Replaces the interior samples (size N - 1); endpoints stay pinned.
  void set_interior(std::span<const double> interior);

 private:
  int winding_;
  std::vector<double> values_;
};

/// Natural cubic spline through the samples of a RadialProfile. f'' vanishes
/// at both poles, which matches the odd reflection of smooth equivariant
/// profiles there.
class ProfileSpline {
 public:
  explicit ProfileSpline(const RadialProfile& profile);

  double value(double r) const;
  double derivative(double r) const;

 private:
  int locate(double r) const;

  double step_;
  std::vector<double> f_;
  std::vector<double> m_;  // second derivatives at the nodes
};

}  // namespace ahm
