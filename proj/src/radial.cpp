#include "ahm/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "ahm/errors.hpp"
#include "ahm/quadrature.hpp"

namespace ahm {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kCellPoints = 5;

// Quadrature point inside a cell together with the cubic-spline shape values:
// on cell i with t = (r - r_i) / h the natural spline is
//   f = (1 - t) f_i + t f_{i+1} + h^2 / 6 (a0 M_i + a1 M_{i+1})
//   f' = (f_{i+1} - f_i) / h + h / 6 (b0 M_i + b1 M_{i+1})
// where M are the second derivatives at the nodes.
struct CellPoint {
  double t;
  double weight;  // Gauss weight on [0, 1]
  double a0, a1, b0, b1;
};

CellPoint make_point(double t, double weight) {
  const double u = 1.0 - t;
  return {t, weight, u * u * u - u, t * t * t - t, 1.0 - 3.0 * u * u, 3.0 * t * t - 1.0};
}

const std::array<CellPoint, kCellPoints>& rule() {
  static const std::array<CellPoint, kCellPoints> pts = [] {
    const GaussRule& g = gauss_legendre(kCellPoints);
    std::array<CellPoint, kCellPoints> out{};
    for (int q = 0; q < kCellPoints; ++q)
      out[q] = make_point(0.5 * (g.nodes[q] + 1.0), 0.5 * g.weights[q]);
    return out;
  }();
  return pts;
}

// Solves tridiag(1, 4, 1) x = rhs on entries 1..N-1 in place; entries 0 and N are zeroed.
void solve_moment_system(std::vector<double>& x) {
  const int n = static_cast<int>(x.size()) - 1;
  x.front() = 0.0;
  x.back() = 0.0;
  if (n < 2) return;
  std::vector<double> c(n, 0.0);
  double denom = 4.0;
  c[1] = 1.0 / denom;
  x[1] /= denom;
  for (int i = 2; i < n; ++i) {
    denom = 4.0 - c[i - 1];
    c[i] = 1.0 / denom;
    x[i] = (x[i] - x[i - 1]) / denom;
  }
  for (int i = n - 2; i >= 1; --i) x[i] -= c[i] * x[i + 1];
}

// Second derivatives of the natural cubic spline through f (uniform step h).
std::vector<double> spline_moments(std::span<const double> f, double h) {
  const int n = static_cast<int>(f.size()) - 1;
  std::vector<double> m(n + 1, 0.0);
  const double k = 6.0 / (h * h);
  for (int i = 1; i < n; ++i) m[i] = k * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
  solve_moment_system(m);
  return m;
}

struct PointValue {
  double r, f, df;
};

PointValue point_value(std::span<const double> f, std::span<const double> m, double h, int i,
                       const CellPoint& q) {
  const double r = (i + q.t) * h;
  const double fv = f[i] * (1.0 - q.t) + f[i + 1] * q.t + h * h / 6.0 * (q.a0 * m[i] + q.a1 * m[i + 1]);
  const double dv = (f[i + 1] - f[i]) / h + h / 6.0 * (q.b0 * m[i] + q.b1 * m[i + 1]);
  return {r, fv, dv};
}

// Energy, gradient and the data for Hessian-vector products, over all N + 1 nodes.
struct Evaluation {
  double energy = 0.0;
  std::vector<double> grad;
  // second derivatives of the integrand in (f, f') at every quadrature point
  std::vector<double> hff, hfd, hdd;
  // tridiagonal part of the Hessian through the nodal (piecewise-linear) dependence,
  // used as preconditioner
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples nodes i and i + 1
};

// Maps sensitivities with respect to (f, f') at the quadrature points back to the nodes.
std::vector<double> pull_back(const std::vector<double>& uf, const std::vector<double>& ud,
                              int n, double h) {
  std::vector<double> gy(n + 1, 0.0), gm(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < kCellPoints; ++k) {
      const CellPoint& q = rule()[k];
      const std::size_t idx = static_cast<std::size_t>(i) * kCellPoints + k;
      gy[i] += uf[idx] * (1.0 - q.t) - ud[idx] / h;
      gy[i + 1] += uf[idx] * q.t + ud[idx] / h;
      gm[i] += uf[idx] * h * h / 6.0 * q.a0 + ud[idx] * h / 6.0 * q.b0;
      gm[i + 1] += uf[idx] * h * h / 6.0 * q.a1 + ud[idx] * h / 6.0 * q.b1;
    }
  }
  solve_moment_system(gm);
  const double k = 6.0 / (h * h);
  for (int j = 1; j < n; ++j) gy[j] += k * (gm[j - 1] - 2.0 * gm[j] + gm[j + 1]);
  return gy;
}

Evaluation evaluate(std::span<const double> f, double alpha, double h, bool with_grad,
                    bool with_hessian) {
  const int n = static_cast<int>(f.size()) - 1;
  const std::vector<double> m = spline_moments(f, h);
  const std::size_t points = static_cast<std::size_t>(n) * kCellPoints;
  Evaluation ev;
  std::vector<double> uf, ud;
  if (with_grad) {
    uf.assign(points, 0.0);
    ud.assign(points, 0.0);
  }
  if (with_hessian) {
    ev.hff.assign(points, 0.0);
    ev.hfd.assign(points, 0.0);
    ev.hdd.assign(points, 0.0);
    ev.diag.assign(n + 1, 0.0);
    ev.off.assign(n, 0.0);
  }
  CompensatedSum energy;
  for (int i = 0; i < n; ++i) {
    double cell = 0.0;
    for (int k = 0; k < kCellPoints; ++k) {
      const CellPoint& q = rule()[k];
      const PointValue v = point_value(f, m, h, i, q);
      const double s = std::sin(v.r);
      const double inv_s2 = 1.0 / (s * s);
      const double sf = std::sin(v.f);
      const double F = 2.0 + v.df * v.df + sf * sf * inv_s2;
      const double w = kPi * h * q.weight * s;
      const double Fa1 = std::pow(F, alpha - 1.0);
      cell += w * Fa1 * F;
      if (!with_grad) continue;
      const std::size_t idx = static_cast<std::size_t>(i) * kCellPoints + k;
      const double Ff = std::sin(2.0 * v.f) * inv_s2;  // dF/df
      const double Fd = 2.0 * v.df;                    // dF/df'
      const double g1 = w * alpha * Fa1;
      uf[idx] = g1 * Ff;
      ud[idx] = g1 * Fd;
      if (!with_hessian) continue;
      const double g2 = w * alpha * (alpha - 1.0) * Fa1 / F;
      const double hff = g2 * Ff * Ff + g1 * 2.0 * std::cos(2.0 * v.f) * inv_s2;
      const double hfd = g2 * Ff * Fd;
      const double hdd = g2 * Fd * Fd + 2.0 * g1;
      ev.hff[idx] = hff;
      ev.hfd[idx] = hfd;
      ev.hdd[idx] = hdd;
      const double l0 = 1.0 - q.t, l1 = q.t, d0 = -1.0 / h, d1 = 1.0 / h;
      ev.diag[i] += hff * l0 * l0 + 2.0 * hfd * l0 * d0 + hdd * d0 * d0;
      ev.diag[i + 1] += hff * l1 * l1 + 2.0 * hfd * l1 * d1 + hdd * d1 * d1;
      ev.off[i] += hff * l0 * l1 + hfd * (l0 * d1 + l1 * d0) + hdd * d0 * d1;
    }
    energy.add(cell);
  }
  ev.energy = energy.value();
  if (with_grad) ev.grad = pull_back(uf, ud, n, h);
  return ev;
}

// Hessian of the discrete energy applied to v (endpoint entries of v ignored).
std::vector<double> hessian_times(const Evaluation& ev, std::vector<double> v, double h) {
  const int n = static_cast<int>(v.size()) - 1;
  v.front() = 0.0;
  v.back() = 0.0;
  const std::vector<double> dm = spline_moments(v, h);
  const std::size_t points = static_cast<std::size_t>(n) * kCellPoints;
  std::vector<double> uf(points), ud(points);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < kCellPoints; ++k) {
      const CellPoint& q = rule()[k];
      const PointValue dv = point_value(v, dm, h, i, q);
      const std::size_t idx = static_cast<std::size_t>(i) * kCellPoints + k;
      uf[idx] = ev.hff[idx] * dv.f + ev.hfd[idx] * dv.df;
      ud[idx] = ev.hfd[idx] * dv.f + ev.hdd[idx] * dv.df;
    }
  }
  return pull_back(uf, ud, n, h);
}

double max_abs_interior(const std::vector<double>& g) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) m = std::max(m, std::abs(g[i]));
  return m;
}

double dot_interior(const std::vector<double>& a, const std::vector<double>& b) {
  CompensatedSum s;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

// LDL^T factors of (T + shift I) on the interior nodes for the tridiagonal T
// in `ev`; false if not positive definite.
struct TridiagonalFactor {
  std::vector<double> d, l;
};

bool factor_tridiagonal(const Evaluation& ev, double shift, TridiagonalFactor& fac) {
  const int n = static_cast<int>(ev.diag.size()) - 1;
  fac.d.assign(n + 1, 0.0);
  fac.l.assign(n + 1, 0.0);
  for (int i = 1; i < n; ++i) {
    double di = ev.diag[i] + shift;
    if (i > 1) {
      fac.l[i] = ev.off[i - 1] / fac.d[i - 1];
      di -= fac.l[i] * ev.off[i - 1];
    }
    if (!(di > 0.0) || !std::isfinite(di)) return false;
    fac.d[i] = di;
  }
  return true;
}

std::vector<double> solve_factored(const TridiagonalFactor& fac, const std::vector<double>& rhs) {
  const int n = static_cast<int>(rhs.size()) - 1;
  std::vector<double> y(n + 1, 0.0), x(n + 1, 0.0);
  for (int i = 1; i < n; ++i) y[i] = rhs[i] - (i > 1 ? fac.l[i] * y[i - 1] : 0.0);
  for (int i = n - 1; i >= 1; --i) x[i] = y[i] / fac.d[i] - (i < n - 1 ? fac.l[i + 1] * x[i + 1] : 0.0);
  return x;
}

class Minimizer {
 public:
  Minimizer(double alpha, RadialProfile profile, const SolveOptions& options)
      : alpha_(alpha), h_(profile.step()), f_(profile.values().begin(), profile.values().end()),
        profile_(std::move(profile)), options_(options) {}

  SolveResult run() {
    Evaluation ev = evaluate(f_, alpha_, h_, true, options_.method == Descent::newton);
    if (options_.keep_trace) trace_.push_back(ev.energy);
    std::vector<double> direction, prev_grad;
    double step = 1.0;
    int iter = 0;
    std::string status = "max_iters reached";
    bool grad_ok = false;
    for (; iter < options_.max_iters; ++iter) {
      const double gnorm = max_abs_interior(ev.grad) / h_;
      if (gnorm <= options_.grad_tol * std::max(1.0, ev.energy)) {
        grad_ok = true;
        status = "gradient tolerance reached";
        break;
      }
      bool accepted = false;
      switch (options_.method) {
        case Descent::newton: accepted = newton_step(ev); break;
        case Descent::gradient: accepted = gradient_step(ev, step); break;
        case Descent::conjugate_gradient:
          accepted = cg_step(ev, step, direction, prev_grad);
          break;
      }
      if (!accepted) {
        status = "line search failed";
        break;
      }
      if (options_.keep_trace) trace_.push_back(ev.energy);
    }
    profile_.set_interior(std::span<const double>(f_).subspan(1, f_.size() - 2));

    SolveResult result{.profile = profile_};
    result.alpha = alpha_;
    result.energy = ev.energy;
    result.grad_norm = max_abs_interior(ev.grad) / h_;
    result.residual_sup = radial_residual(profile_, alpha_).sup;
    result.degree_int = static_cast<int>(std::lround(radial_degree(profile_)));
    if (profile_.winding() >= 2) result.r1 = first_crossing(profile_, kPi);
    if (profile_.winding() >= 3) result.r2 = first_crossing(profile_, 2.0 * kPi);
    result.iterations = iter;
    const bool residual_ok = result.residual_sup <= options_.residual_tol;
    result.converged = grad_ok && residual_ok;
    if (grad_ok && !residual_ok) status = "gradient tolerance reached; residual above tolerance";
    result.status = status;
    result.energy_trace = std::move(trace_);
    return result;
  }

 private:
  double energy_at(const std::vector<double>& f) const {
    return evaluate(f, alpha_, h_, false, false).energy;
  }

  // Backtracking along `dir` from step t; updates f_ and ev on success.
  bool line_search(Evaluation& ev, const std::vector<double>& dir, double& t, bool with_hessian) {
    const double slope = dot_interior(ev.grad, dir);
    if (!(slope < 0.0)) return false;
    std::vector<double> trial(f_.size());
    for (int k = 0; k < 60; ++k) {
      for (std::size_t i = 0; i < f_.size(); ++i) trial[i] = f_[i] + t * dir[i];
      trial.front() = f_.front();
      trial.back() = f_.back();
      const double e = energy_at(trial);
      if (std::isfinite(e) && e <= ev.energy + 1e-4 * t * slope) {
        f_ = std::move(trial);
        ev = evaluate(f_, alpha_, h_, true, with_hessian);
        return true;
      }
      t *= 0.5;
    }
    return false;
  }

  bool newton_step(Evaluation& ev) {
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < f_.size(); ++i) scale = std::max(scale, std::abs(ev.diag[i]));
    double shift = 0.0;
    TridiagonalFactor fac;
    while (!factor_tridiagonal(ev, shift, fac)) {
      shift = shift == 0.0 ? 1e-10 * scale : 4.0 * shift;
      if (shift > 1e6 * scale) return false;
    }
    std::vector<double> dir = newton_direction(ev, fac);
    double t = 1.0;
    if (line_search(ev, dir, t, true)) return true;
    std::vector<double> rhs(f_.size(), 0.0);
    for (std::size_t i = 1; i + 1 < f_.size(); ++i) rhs[i] = -ev.grad[i];
    dir = solve_factored(fac, rhs);
    t = 1.0;
    return line_search(ev, dir, t, true);
  }

  // Preconditioned conjugate gradients on H p = -g, stopped at negative curvature.
  std::vector<double> newton_direction(const Evaluation& ev, const TridiagonalFactor& fac) const {
    const std::size_t size = f_.size();
    std::vector<double> x(size, 0.0), r(size, 0.0);
    for (std::size_t i = 1; i + 1 < size; ++i) r[i] = -ev.grad[i];
    std::vector<double> z = solve_factored(fac, r);
    std::vector<double> p = z;
    double rz = dot_interior(r, z);
    const double r0 = std::sqrt(dot_interior(r, r));
    for (int k = 0; k < 500; ++k) {
      const std::vector<double> hp = hessian_times(ev, p, h_);
      const double curvature = dot_interior(p, hp);
      if (!(curvature > 0.0)) return k == 0 ? p : x;
      const double step = rz / curvature;
      for (std::size_t i = 1; i + 1 < size; ++i) {
        x[i] += step * p[i];
        r[i] -= step * hp[i];
      }
      if (std::sqrt(dot_interior(r, r)) <= 1e-10 * r0) break;
      z = solve_factored(fac, r);
      const double rz_next = dot_interior(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 1; i + 1 < size; ++i) p[i] = z[i] + beta * p[i];
    }
    return x;
  }

  bool gradient_step(Evaluation& ev, double& step) {
    std::vector<double> dir(f_.size(), 0.0);
    for (std::size_t i = 1; i + 1 < f_.size(); ++i) dir[i] = -ev.grad[i] / h_;
    double t = step * 2.0;
    if (!line_search(ev, dir, t, false)) return false;
    step = t;
    return true;
  }

  bool cg_step(Evaluation& ev, double& step, std::vector<double>& dir,
               std::vector<double>& prev_grad) {
    std::vector<double> g(f_.size(), 0.0);
    for (std::size_t i = 1; i + 1 < f_.size(); ++i) g[i] = ev.grad[i] / h_;
    if (dir.empty()) {
      dir.assign(f_.size(), 0.0);
      for (std::size_t i = 1; i + 1 < f_.size(); ++i) dir[i] = -g[i];
    } else {
      // Polak-Ribiere+, restarting when the result is not a descent direction
      const double denom = dot_interior(prev_grad, prev_grad);
      double beta = 0.0;
      if (denom > 0.0) {
        CompensatedSum num;
        for (std::size_t i = 1; i + 1 < f_.size(); ++i) num.add(g[i] * (g[i] - prev_grad[i]));
        beta = std::max(0.0, num.value() / denom);
      }
      for (std::size_t i = 1; i + 1 < f_.size(); ++i) dir[i] = -g[i] + beta * dir[i];
      if (!(dot_interior(dir, g) < 0.0))
        for (std::size_t i = 1; i + 1 < f_.size(); ++i) dir[i] = -g[i];
    }
    prev_grad = g;
    double t = step * 2.0;
    if (!line_search(ev, dir, t, false)) {
      // restart once along the steepest-descent direction
      for (std::size_t i = 1; i + 1 < f_.size(); ++i) dir[i] = -g[i];
      t = step;
      if (!line_search(ev, dir, t, false)) return false;
    }
    step = t;
    return true;
  }

  double alpha_;
  double h_;
  std::vector<double> f_;
  RadialProfile profile_;
  SolveOptions options_;
  std::vector<double> trace_;
};

// Energy of one whole cell; same arithmetic as evaluate().
double cell_energy(std::span<const double> f, std::span<const double> m, double alpha, double h,
                   int i) {
  double cell = 0.0;
  for (const CellPoint& q : rule()) {
    const PointValue v = point_value(f, m, h, i, q);
    const double s = std::sin(v.r);
    const double sf = std::sin(v.f);
    const double F = 2.0 + v.df * v.df + sf * sf / (s * s);
    cell += kPi * h * q.weight * s * std::pow(F, alpha - 1.0) * F;
  }
  return cell;
}

// Gauss rule on the part [a, b] of one cell.
double segment_energy(std::span<const double> f, std::span<const double> m, double alpha,
                      double h, int cell, double a, double b) {
  const GaussRule& g = gauss_legendre(10);
  CompensatedSum sum;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double r = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[k];
    const PointValue v = point_value(f, m, h, cell, make_point(r / h - cell, 0.0));
    const double s = std::sin(r);
    const double sf = std::sin(v.f);
    const double F = 2.0 + v.df * v.df + sf * sf / (s * s);
    sum.add(0.5 * (b - a) * g.weights[k] * std::pow(F, alpha) * s);
  }
  return kPi * sum.value();
}

}  // namespace

double radial_energy(const RadialProfile& profile, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("radial_energy: alpha must be >= 1");
  return evaluate(profile.values(), alpha, profile.step(), false, false).energy;
}

std::vector<double> radial_energy_gradient(const RadialProfile& profile, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("radial_energy_gradient: alpha must be >= 1");
  Evaluation ev = evaluate(profile.values(), alpha, profile.step(), true, false);
  return {ev.grad.begin() + 1, ev.grad.end() - 1};
}

RadialResidual radial_residual(const RadialProfile& profile, double alpha) {
  const int n = profile.cells();
  const double h = profile.step();
  const double beta = alpha - 1.0;
  RadialResidual out;
  out.r.reserve(n - 1);
  out.value.reserve(n - 1);
  // Regular profiles are odd about r = 0 and f - n pi is odd about r = pi,
  // which supplies the ghost values of the five-point stencils.
  const double top = 2.0 * profile.winding() * kPi;
  auto at = [&](int i) {
    if (i < 0) return -profile[-i];
    if (i > n) return top - profile[2 * n - i];
    return profile[i];
  };
  for (int i = 1; i < n; ++i) {
    const double r = profile.node(i);
    const double f = profile[i];
    const double fm2 = at(i - 2), fm1 = at(i - 1), fp1 = at(i + 1), fp2 = at(i + 2);
    const double fp = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
    const double fpp = (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f) / (12.0 * h * h);
    const double sr = std::sin(r), cr = std::cos(r);
    const double sf = std::sin(f), cf = std::cos(f);
    const double grad_sq = fp * fp + sf * sf / (sr * sr);
    const double d_grad_sq =
        2.0 * fp * fpp + 2.0 * sf * cf * fp / (sr * sr) - 2.0 * sf * sf * cr / (sr * sr * sr);
    const double value =
        fpp + cr / sr * fp - cf * sf / (sr * sr) + beta * fp * d_grad_sq / (2.0 + grad_sq);
    out.r.push_back(r);
    out.value.push_back(value);
    out.sup = std::max(out.sup, std::abs(value));
  }
  return out;
}

double radial_degree(const RadialProfile& profile) {
  // int_cell f' sin f dr = cos f_i - cos f_{i+1} for any interpolant.
  CompensatedSum sum;
  for (int i = 0; i < profile.cells(); ++i)
    sum.add(std::cos(profile[i]) - std::cos(profile[i + 1]));
  return 0.5 * sum.value();
}

std::optional<double> first_crossing(const RadialProfile& profile, double level) {
  const ProfileSpline spline(profile);
  for (int i = 0; i < profile.cells(); ++i) {
    double a = profile.node(i), b = profile.node(i + 1);
    double fa = profile[i] - level;
    const double fb = profile[i + 1] - level;
    if (fa == 0.0) return a;
    if ((fa < 0.0) == (fb < 0.0) && fb != 0.0) continue;
    for (int k = 0; k < 200 && b - a > 1e-16; ++k) {
      const double mid = 0.5 * (a + b);
      const double fm = spline.value(mid) - level;
      if (fm == 0.0) return mid;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  }
  return std::nullopt;
}

double interpolate_linear(const RadialProfile& profile, double r) {
  const double h = profile.step();
  const int i = std::clamp(static_cast<int>(std::floor(r / h)), 0, profile.cells() - 1);
  const double t = (r - i * h) / h;
  return profile[i] * (1.0 - t) + profile[i + 1] * t;
}

double partial_radial_energy(const RadialProfile& profile, double alpha, double a, double b) {
  if (!(alpha >= 1.0)) throw DomainError("partial_radial_energy: alpha must be >= 1");
  a = std::clamp(a, 0.0, kPi);
  b = std::clamp(b, 0.0, kPi);
  if (b <= a) return 0.0;
  const double h = profile.step();
  const int n = profile.cells();
  const auto f = profile.values();
  const std::vector<double> m = spline_moments(f, h);
  const int first = std::clamp(static_cast<int>(std::floor(a / h)), 0, n - 1);
  const int last = std::clamp(static_cast<int>(std::ceil(b / h)) - 1, 0, n - 1);
  CompensatedSum sum;
  for (int i = first; i <= last; ++i) {
    const double lo = std::max(a, i * h);
    const double hi = std::min(b, i == n - 1 ? kPi : (i + 1) * h);
    if (hi <= lo) continue;
    if (lo == i * h && hi == (i == n - 1 ? kPi : (i + 1) * h)) {
      sum.add(cell_energy(f, m, alpha, h, i));
    } else {
      sum.add(segment_energy(f, m, alpha, h, i, lo, hi));
    }
  }
  return sum.value();
}

std::string to_string(Descent method) {
  switch (method) {
    case Descent::gradient: return "gradient";
    case Descent::conjugate_gradient: return "conjugate_gradient";
    case Descent::newton: return "newton";
  }
  return "unknown";
}

SolveResult minimize_radial(double alpha, int n, int cells,
                            const std::optional<RadialProfile>& init,
                            const SolveOptions& options) {
  if (!(alpha > 1.0)) throw DomainError("minimize_radial: alpha must be > 1");
  if (cells < RadialProfile::kMinCells)
    throw DomainError("minimize_radial: N must be >= " + std::to_string(RadialProfile::kMinCells));
  if (init && (init->cells() != cells || init->winding() != n))
    throw DomainError("minimize_radial: initial profile does not match n and N");

  RadialProfile start =
      init ? *init : RadialProfile::from_function(n, cells, [n](double r) { return n * r; });
  int warm_iterations = 0;
  if (!options.continuation.empty()) {
    SolveOptions stage = options;
    stage.continuation.clear();
    for (double a : options.continuation) {
      SolveResult warm = minimize_radial(a, n, cells, start, stage);
      warm_iterations += warm.iterations;
      start = warm.profile;
    }
  }
  SolveResult result = Minimizer(alpha, std::move(start), options).run();
  result.iterations += warm_iterations;
  return result;
}

AnnulusSplit annulus_split(const SolveResult& result) {
  if (result.profile.winding() != 3) throw DomainError("annulus_split: requires n = 3");
  if (!result.converged) throw DomainError("annulus_split: result is not converged");
  if (!result.r1 || !result.r2) throw DomainError("annulus_split: crossings unavailable");
  const RadialProfile& p = result.profile;
  const double alpha = result.alpha;
  AnnulusSplit s;
  s.r1 = *result.r1;
  s.r2 = *result.r2;
  s.disc_energy = partial_radial_energy(p, alpha, 0.0, s.r1);
  s.annulus_energy = partial_radial_energy(p, alpha, s.r1, s.r2);
  s.cap_energy = partial_radial_energy(p, alpha, s.r2, kPi);
  auto area_floor = [alpha](double a, double b) {
    return kPi * std::pow(2.0, alpha) * (std::cos(a) - std::cos(b));
  };
  auto degree_floor = [alpha](double a, double b) {
    const double area = std::cos(a) - std::cos(b);
    return kPi * std::pow(2.0 * area + 4.0, alpha) * std::pow(area, 1.0 - alpha);
  };
  s.disc_area_floor = area_floor(0.0, s.r1);
  s.annulus_area_floor = area_floor(s.r1, s.r2);
  s.cap_area_floor = area_floor(s.r2, kPi);
  s.disc_degree_floor = degree_floor(0.0, s.r1);
  s.annulus_degree_floor = degree_floor(s.r1, s.r2);
  s.cap_degree_floor = degree_floor(s.r2, kPi);
  return s;
}

}  // namespace ahm
