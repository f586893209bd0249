#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "semilag/field.hpp"
#include "semilag/grid.hpp"
#include "semilag/interp.hpp"
#include "semilag/problem.hpp"

namespace semilag {

/// Default number of fixed-point passes per departure point.
inline constexpr int kDefaultDepartureIterations = 5;

/// Tallies for tests that need to observe how a departure point was found.
struct DepartureCounters {
  long interpolations = 0;
  long speed_evaluations = 0;
  long iterations = 0;
};

/// Per-arrival-node departure iterates carried between steps for warm
/// starting. Empty until the first step fills it; entries are unwrapped.
struct DepartureState {
  std::vector<double> points;
};

/// Everything the first-order departure iteration reads at level t_k.
struct DepartureContext {
  const OmegaSpec& omega;
  const StateField& field; // frozen level-k values
  const Grid1D& grid;
  InterpOrder order;
  double t;   // t_k
  double tau; // step size
};

/// Throws DivergenceError if x is non-finite or lies outside
/// [a - (b - a), b + (b - a)]; `node` names the arrival node.
void check_departure(const Grid1D& grid, double x, std::size_t node);

/// Left-endpoint rule: n passes of x <- xA - tau * omega(t_k, x, y(x)).
///
/// Constant speed returns xA - tau * c with no iteration; the (t, x) case
/// iterates without interpolating. The result is not wrapped.
double departure_euler(const DepartureContext& ctx, double x_arrival, double x0, int iterations,
                       std::size_t node = 0, DepartureCounters* counters = nullptr);

/// xA - (tau / 2) (omega_D + omega_A)
double departure_trapezoid(double x_arrival, double omega_departure, double omega_arrival,
                           double tau);

/// xA - (tau / 6) (omega_D + 4 omega_I + omega_A)
double departure_simpson(double x_arrival, double omega_departure, double omega_mid,
                         double omega_arrival, double tau);

/// (xA - tau * u_D, yA - tau * v_D)
std::pair<double, double> departure_euler_2d(double x_arrival, double y_arrival, double u_departure,
                                             double v_departure, double tau);

} // namespace semilag
