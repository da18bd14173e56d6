#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "ahm/errors.hpp"
#include "ahm/radial.hpp"

namespace ahm {
namespace {

constexpr double kPi = std::numbers::pi;
using State = std::array<double, 2>;

struct BlowUp {
  double r;
  double f;
};

struct Trace {
  std::vector<double> r, f, df;
  bool ok = true;
  double last_r = 0.0;
  double last_f = 0.0;
};

// f'' solved from the equation, whose (alpha - 1) term also contains f''.
double second_derivative(double alpha, double r, double f, double fp) {
  const double sr = std::sin(r), cr = std::cos(r);
  const double sf = std::sin(f), cf = std::cos(f);
  const double inv_s2 = 1.0 / (sr * sr);
  const double grad_sq = fp * fp + sf * sf * inv_s2;
  const double beta = alpha - 1.0;
  const double rest = 2.0 * sf * cf * fp * inv_s2 - 2.0 * sf * sf * cr * inv_s2 / sr;
  const double denom = 2.0 + grad_sq;
  const double rhs = -cr / sr * fp + sf * cf * inv_s2 - beta * fp * rest / denom;
  return rhs / (1.0 + 2.0 * beta * fp * fp / denom);
}

Trace run_shot(double alpha, double slope, const std::vector<double>& times,
               const ShotOptions& options) {
  namespace odeint = boost::numeric::odeint;
  const double r0 = times.front();
  const double c = series_cubic_coefficient(alpha, slope);
  State x{slope * r0 + c * r0 * r0 * r0, slope + 3.0 * c * r0 * r0};
  Trace trace;
  trace.last_r = r0;
  trace.last_f = x[0];
  auto system = [alpha](const State& s, State& ds, double r) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || std::abs(s[0]) > 1e4) throw BlowUp{r, s[0]};
    ds[0] = s[1];
    ds[1] = second_derivative(alpha, r, s[0], s[1]);
  };
  auto observer = [&trace](const State& s, double r) {
    trace.r.push_back(r);
    trace.f.push_back(s[0]);
    trace.df.push_back(s[1]);
    trace.last_r = r;
    trace.last_f = s[0];
  };
  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_dopri5<State>());
  try {
    odeint::integrate_times(stepper, system, x, times.begin(), times.end(), 1e-7, observer,
                            odeint::max_step_checker(1000000));
  } catch (const BlowUp& b) {
    trace.ok = false;
    trace.last_r = std::max(trace.last_r, b.r);
    trace.last_f = b.f;
  } catch (const odeint::step_adjustment_error&) {
    trace.ok = false;
  } catch (const odeint::no_progress_error&) {
    trace.ok = false;
  }
  return trace;
}

std::vector<double> shot_times(int cells, const ShotOptions& options, double gap) {
  const double h = kPi / cells;
  std::vector<double> times{options.start};
  for (int i = 1; i < cells; ++i) {
    const double r = i * h;
    if (r > options.start && r < kPi - gap) times.push_back(r);
  }
  const double check = kPi - 10.0 * gap;
  if (check > options.start) times.push_back(check);
  times.push_back(kPi - gap);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

double end_gap(int cells, const ShotOptions& options) {
  return options.end_gap > 0.0 ? options.end_gap : std::min(1e-3, 0.5 * kPi / cells);
}

double value_at(const Trace& t, double r) {
  for (std::size_t i = 0; i < t.r.size(); ++i)
    if (t.r[i] == r) return t.f[i];
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double series_cubic_coefficient(double alpha, double slope) {
  const double a = slope;
  const double a2 = a * a;
  return a * (a2 * a2 * alpha - 3.0 * a2 * a2 - a2 * alpha + a2 + 2.0) / (24.0 * (a2 * alpha + 1.0));
}

Shot integrate_shot(double alpha, double slope0, int cells, const ShotOptions& options) {
  if (!(alpha >= 1.0)) throw DomainError("integrate_shot: alpha must be >= 1");
  if (!(slope0 > 0.0)) throw DomainError("integrate_shot: slope0 must be > 0");
  if (cells < 1) throw DomainError("integrate_shot: cells must be >= 1");
  const Trace t = run_shot(alpha, slope0, shot_times(cells, options, end_gap(cells, options)), options);
  if (!t.ok) throw ShotFailedError("integrate_shot: solution blew up", t.last_r);
  return {t.r, t.f, t.df};
}

RadialProfile shoot_radial(double alpha, int n, double slope0, int cells,
                           const ShotOptions& options) {
  if (!(alpha >= 1.0)) throw DomainError("shoot_radial: alpha must be >= 1");
  if (!(slope0 > 0.0)) throw DomainError("shoot_radial: slope0 must be > 0");
  if (cells < RadialProfile::kMinCells) throw DomainError("shoot_radial: too few cells");
  const double gap = end_gap(cells, options);
  const std::vector<double> times = shot_times(cells, options, gap);
  const double target = n * kPi;
  double furthest = 0.0;

  auto miss = [&](double slope, Trace* keep) {
    Trace t = run_shot(alpha, slope, times, options);
    furthest = std::max(furthest, t.last_r);
    double m;
    if (t.ok)
      m = t.f.back() + gap * t.df.back() - target;  // linear extrapolation to pi
    else
      m = t.last_f > target ? 1e6 : -1e6;
    if (keep) *keep = std::move(t);
    return m;
  };

  // log-spaced scan for sign changes of the miss distance
  const int m = std::max(options.scan_points, 2);
  std::vector<double> slopes(m), misses(m);
  const double lo = std::log(slope0 / options.spread), hi = std::log(slope0 * options.spread);
  for (int i = 0; i < m; ++i) {
    slopes[i] = std::exp(lo + (hi - lo) * i / (m - 1));
    if (i == m / 2) slopes[i] = slope0;
  }
  std::sort(slopes.begin(), slopes.end());
  for (int i = 0; i < m; ++i) misses[i] = miss(slopes[i], nullptr);

  std::optional<Trace> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < m; ++i) {
    double a = slopes[i], b = slopes[i + 1];
    double ma = misses[i], mb = misses[i + 1];
    if (ma == 0.0) b = a, mb = ma;
    else if ((ma < 0.0) == (mb < 0.0)) continue;
    for (int k = 0; k < 200 && b - a > 4e-16 * b; ++k) {
      const double mid = 0.5 * (a + b);
      const double mm = miss(mid, nullptr);
      if (mm == 0.0) { a = b = mid; break; }
      if ((mm < 0.0) == (ma < 0.0)) { a = mid; ma = mm; } else { b = mid; mb = mm; }
    }
    const double root = std::abs(ma) <= std::abs(mb) ? a : b;
    Trace t;
    miss(root, &t);
    if (!t.ok) continue;
    // regular arrival: f - n pi vanishes linearly at pi
    const double near = t.f.back() - target;
    const double far = value_at(t, kPi - 10.0 * gap) - target;
    if (!(std::abs(far - 10.0 * near) <= 1e-2 * kPi)) continue;
    const double distance = std::abs(std::log(root / slope0));
    if (distance < best_distance) {
      best_distance = distance;
      best = std::move(t);
    }
  }
  if (!best) throw ShotFailedError("shoot_radial: no admissible initial slope bracketed", furthest);

  std::vector<double> values(cells + 1, 0.0);
  const double h = kPi / cells;
  std::size_t k = 0;
  for (int i = 1; i < cells; ++i) {
    const double r = i * h;
    while (k < best->r.size() && best->r[k] < r) ++k;
    values[i] = best->f[k];
  }
  return RadialProfile(n, std::move(values));
}

}  // namespace ahm
