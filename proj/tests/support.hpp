#pragma once

// Reference computations the tests compare the library against. Nothing here
// calls the solvers; everything is written from the defining formulas.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "semilag/field.hpp"
#include "semilag/problem.hpp"

namespace semilag::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Classic one-step ODE methods on y' = y from y = 1.
inline double euler_growth(double tau) { return 1.0 + tau; }

inline double heun_growth(double tau) {
  const double k1 = 1.0;
  const double k2 = 1.0 + tau * k1;
  return 1.0 + 0.5 * tau * (k1 + k2);
}

inline double kutta3_growth(double tau) {
  const double k1 = 1.0;
  const double k2 = 1.0 + 0.5 * tau * k1;
  const double k3 = 1.0 - tau * k1 + 2.0 * tau * k2;
  return 1.0 + tau / 6.0 * (k1 + 4.0 * k2 + k3);
}

inline double rk4_growth(double tau) {
  const double k1 = 1.0;
  const double k2 = 1.0 + 0.5 * tau * k1;
  const double k3 = 1.0 + 0.5 * tau * k2;
  const double k4 = 1.0 + tau * k3;
  return 1.0 + tau / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// max_c |y_t + omega y_x - f| at (t, x) by central differences of the
/// exact solution.
inline double pde_residual(const ProblemSpec& p, double t, double x, double step) {
  const std::size_t n = p.components();
  std::vector<double> y(n), tp(n), tm(n), xp(n), xm(n), f(n);
  const auto& exact = *p.exact;
  exact(t, x, y);
  exact(t + step, x, tp);
  exact(t - step, x, tm);
  exact(t, x + step, xp);
  exact(t, x - step, xm);
  const double w = p.omega(t, x, y);
  p.rhs(t, x, y, f);
  double worst = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double yt = (tp[c] - tm[c]) / (2.0 * step);
    const double yx = (xp[c] - xm[c]) / (2.0 * step);
    worst = std::max(worst, std::abs(yt + w * yx - f[c]));
  }
  return worst;
}

/// max over u, v equations of |q_t + u q_x + v q_y - rhs|.
inline double pde_residual(const ProblemSpec2D& p, double t, double x, double y, double step) {
  double q[2], tp[2], tm[2], xp[2], xm[2], yp[2], ym[2], f[2];
  const auto& exact = *p.exact;
  exact(t, x, y, q);
  exact(t + step, x, y, tp);
  exact(t - step, x, y, tm);
  exact(t, x + step, y, xp);
  exact(t, x - step, y, xm);
  exact(t, x, y + step, yp);
  exact(t, x, y - step, ym);
  p.rhs(t, x, y, q, f);
  double worst = 0.0;
  for (int c = 0; c < 2; ++c) {
    const double dt = (tp[c] - tm[c]) / (2.0 * step);
    const double dx = (xp[c] - xm[c]) / (2.0 * step);
    const double dy = (yp[c] - ym[c]) / (2.0 * step);
    worst = std::max(worst, std::abs(dt + q[0] * dx + q[1] * dy - f[c]));
  }
  return worst;
}

/// Largest infinity-norm of the Jacobian df/dy of a two-component right-hand
/// side, sampled on a dense grid over |y_c| <= range (and x in [0, 1]).
inline double sampled_lipschitz(const ProblemSpec& p, double t, double range, int samples) {
  const double e = 1e-6;
  double best = 0.0;
  double y[2], f_plus[2], f_minus[2];
  for (int ix = 0; ix < 5; ++ix) {
    const double x = ix / 5.0;
    for (int i = 0; i <= samples; ++i) {
      for (int j = 0; j <= samples; ++j) {
        const double u = -range + 2.0 * range * i / samples;
        const double v = -range + 2.0 * range * j / samples;
        double jac[2][2];
        for (int col = 0; col < 2; ++col) {
          y[0] = u;
          y[1] = v;
          y[col] += e;
          p.rhs(t, x, y, f_plus);
          y[col] -= 2.0 * e;
          p.rhs(t, x, y, f_minus);
          for (int row = 0; row < 2; ++row) {
            jac[row][col] = (f_plus[row] - f_minus[row]) / (2.0 * e);
          }
        }
        for (int row = 0; row < 2; ++row) {
          best = std::max(best, std::abs(jac[row][0]) + std::abs(jac[row][1]));
        }
      }
    }
  }
  return best;
}

/// Least-squares slope of log(err) against log(step).
inline double loglog_slope(const std::vector<double>& step, const std::vector<double>& err) {
  const std::size_t n = step.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(step[i]);
    const double ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Largest |a - b| over all stored values.
inline double max_abs_diff(const StateField& a, const StateField& b) {
  double worst = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    worst = std::max(worst, std::abs(va[i] - vb[i]));
  }
  return worst;
}

} // namespace semilag::testing
