#include "semilag/departure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "semilag/errors.hpp"

namespace semilag {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::domain_error(fmt::format("{}: non-finite input", what));
  }
}

void require_positive_step(double tau, const char* what) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument(fmt::format("{}: step size must be positive", what));
  }
}

} // namespace

void check_departure(const Grid1D& grid, double x, std::size_t node) {
  const double period = grid.length();
  if (!std::isfinite(x) || x < grid.a() - period || x > grid.b() + period) {
    throw DivergenceError(
        fmt::format("departure iteration diverged at arrival node {} (iterate {}); "
                    "the step size is too large for the fixed-point contraction",
                    node, x),
        node);
  }
}

double departure_euler(const DepartureContext& ctx, double x_arrival, double x0, int iterations,
                       std::size_t node, DepartureCounters* counters) {
  require_positive_step(ctx.tau, "departure_euler");
  if (iterations < 1) {
    throw std::invalid_argument("departure_euler: need at least one iteration");
  }
  if (ctx.omega.kind() == OmegaSpec::Case::Constant) {
    const double x = x_arrival - ctx.tau * ctx.omega.constant_value();
    check_departure(ctx.grid, x, node);
    return x;
  }

  NodeValues y(ctx.field.components());
  double x = x0;
  for (int i = 0; i < iterations; ++i) {
    if (ctx.omega.kind() == OmegaSpec::Case::TXY) {
      interp1d(ctx.field, ctx.grid, x, ctx.order, y.span());
      if (counters) {
        ++counters->interpolations;
      }
    }
    const double speed = ctx.omega(ctx.t, x, y.span());
    x = x_arrival - ctx.tau * speed;
    if (counters) {
      ++counters->speed_evaluations;
      ++counters->iterations;
    }
    check_departure(ctx.grid, x, node);
  }
  return x;
}

double departure_trapezoid(double x_arrival, double omega_departure, double omega_arrival,
                           double tau) {
  require_positive_step(tau, "departure_trapezoid");
  require_finite(x_arrival, "departure_trapezoid");
  require_finite(omega_departure, "departure_trapezoid");
  require_finite(omega_arrival, "departure_trapezoid");
  return x_arrival - 0.5 * tau * (omega_departure + omega_arrival);
}

double departure_simpson(double x_arrival, double omega_departure, double omega_mid,
                         double omega_arrival, double tau) {
  require_positive_step(tau, "departure_simpson");
  require_finite(x_arrival, "departure_simpson");
  require_finite(omega_departure, "departure_simpson");
  require_finite(omega_mid, "departure_simpson");
  require_finite(omega_arrival, "departure_simpson");
  return x_arrival - tau / 6.0 * (omega_departure + 4.0 * omega_mid + omega_arrival);
}

std::pair<double, double> departure_euler_2d(double x_arrival, double y_arrival, double u_departure,
                                             double v_departure, double tau) {
  require_positive_step(tau, "departure_euler_2d");
  require_finite(x_arrival, "departure_euler_2d");
  require_finite(y_arrival, "departure_euler_2d");
  require_finite(u_departure, "departure_euler_2d");
  require_finite(v_departure, "departure_euler_2d");
  return {x_arrival - tau * u_departure, y_arrival - tau * v_departure};
}

} // namespace semilag
