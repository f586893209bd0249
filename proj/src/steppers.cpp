#include "semilag/steppers.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "semilag/errors.hpp"
#include "semilag/parallel.hpp"

namespace semilag {

namespace {

constexpr double kSeamTolerance = 1e-10;

struct StepInput {
  const ProblemSpec& problem;
  const StateField& field;
  const Grid1D& grid;
  InterpOrder order;
  double t;
  double tau;
  int iterations;
};

NodeValues interpolate(const StepInput& in, double x) {
  NodeValues y(in.field.components());
  interp1d(in.field, in.grid, x, in.order, y.span());
  return y;
}

NodeValues rhs(const StepInput& in, double t, double x, const NodeValues& y) {
  NodeValues d(y.size());
  in.problem.rhs(t, x, y.span(), d.span());
  return d;
}

double speed(const StepInput& in, double t, double x, const NodeValues& y) {
  return in.problem.omega(t, x, y.span());
}

double speed(const StepInput& in, double t, double x) {
  return in.problem.omega(t, x, std::span<const double>{});
}

/// Result of one pass through the body of the per-node i-loop.
struct Pass {
  NodeValues arrival;
  double next_departure; // only meaningful when the pass refined
};

/// Runs the i-loop shared by the order 2-4 methods for one arrival node.
///
/// `body(xD, refine)` computes y_A from the departure point and, when
/// `refine` is set (i <= n-1), the next departure iterate. `departure_only`
/// performs the refinement alone for the (t, x) speed case, where neither the
/// speed at arrival nor the midpoint speed depends on y: the y_A of those
/// passes would be overwritten, so only the last pass evaluates the stages.
template <class Body, class DepartureOnly>
NodeValues iterate_node(const StepInput& in, double x_arrival, double& x_departure,
                        std::size_t node, Body body, DepartureOnly departure_only) {
  const int n = in.iterations;
  switch (in.problem.omega.kind()) {
  case OmegaSpec::Case::Constant:
    x_departure = x_arrival - in.tau * in.problem.omega.constant_value();
    check_departure(in.grid, x_departure, node);
    return body(x_departure, false).arrival;
  case OmegaSpec::Case::TX:
    for (int i = 1; i <= n - 1; ++i) {
      x_departure = departure_only(x_departure);
      check_departure(in.grid, x_departure, node);
    }
    return body(x_departure, false).arrival;
  case OmegaSpec::Case::TXY:
    break;
  }
  NodeValues arrival;
  for (int i = 1; i <= n; ++i) {
    const bool refine = i <= n - 1;
    Pass pass = body(x_departure, refine);
    arrival = pass.arrival;
    if (refine) {
      x_departure = pass.next_departure;
      check_departure(in.grid, x_departure, node);
    }
  }
  return arrival;
}

NodeValues slem_node(const StepInput& in, double x_arrival, double& x_departure,
                     std::size_t node) {
  const DepartureContext ctx{in.problem.omega, in.field, in.grid, in.order, in.t, in.tau};
  x_departure = departure_euler(ctx, x_arrival, x_departure, in.iterations, node);
  const NodeValues yd = interpolate(in, x_departure);
  const NodeValues f = rhs(in, in.t, x_departure, yd);
  return yd.plus(in.tau, f);
}

NodeValues mslem_node(const StepInput& in, double x_arrival, double& x_departure,
                      std::size_t node) {
  const double t = in.t;
  const double tau = in.tau;
  auto body = [&](double xd, bool refine) {
    const NodeValues yd = interpolate(in, xd);
    const double wd = speed(in, t, xd, yd);
    const NodeValues k1 = rhs(in, t, xd, yd);
    const NodeValues k2 = rhs(in, t + tau, x_arrival, yd.plus(tau, k1));
    NodeValues ya(yd.size());
    for (std::size_t c = 0; c < yd.size(); ++c) {
      ya[c] = yd[c] + 0.5 * tau * (k1[c] + k2[c]);
    }
    double next = xd;
    if (refine) {
      const double wa = speed(in, t + tau, x_arrival, ya);
      next = departure_trapezoid(x_arrival, wd, wa, tau);
    }
    return Pass{ya, next};
  };
  auto departure_only = [&](double xd) {
    return departure_trapezoid(x_arrival, speed(in, t, xd), speed(in, t + tau, x_arrival), tau);
  };
  return iterate_node(in, x_arrival, x_departure, node, body, departure_only);
}

/// Simpson refinement in the (t, x) case: the midpoint speed is taken at the
/// Euler-predicted midpoint position.
double simpson_departure_only(const StepInput& in, double x_arrival, double xd) {
  const double wd = speed(in, in.t, xd);
  const double wi = speed(in, in.t + 0.5 * in.tau, xd + 0.5 * in.tau * wd);
  const double wa = speed(in, in.t + in.tau, x_arrival);
  return departure_simpson(x_arrival, wd, wi, wa, in.tau);
}

NodeValues slrk3_node(const StepInput& in, double x_arrival, double& x_departure,
                      std::size_t node) {
  const double t = in.t;
  const double tau = in.tau;
  auto body = [&](double xd, bool refine) {
    const NodeValues yd = interpolate(in, xd);
    const double wd = speed(in, t, xd, yd);
    const double x_half = xd + 0.5 * tau * wd;
    const NodeValues k1 = rhs(in, t, xd, yd);
    const NodeValues k2 = rhs(in, t + 0.5 * tau, x_half, yd.plus(0.5 * tau, k1));
    const NodeValues k3 = rhs(in, t + tau, x_arrival, yd.plus(-tau, k1).plus(2.0 * tau, k2));
    NodeValues ya(yd.size());
    for (std::size_t c = 0; c < yd.size(); ++c) {
      ya[c] = yd[c] + tau / 6.0 * (k1[c] + 4.0 * k2[c] + k3[c]);
    }
    double next = xd;
    if (refine) {
      const double wa = speed(in, t + tau, x_arrival, ya);
      // Kutta-3 over the first half step to estimate y at the midpoint.
      const double x_quarter = xd + 0.25 * tau * wd;
      const NodeValues kt2 = rhs(in, t + 0.25 * tau, x_quarter, yd.plus(0.25 * tau, k1));
      const NodeValues kt3 =
          rhs(in, t + 0.5 * tau, x_half, yd.plus(-0.5 * tau, k1).plus(tau, kt2));
      NodeValues y_mid(yd.size());
      for (std::size_t c = 0; c < yd.size(); ++c) {
        y_mid[c] = yd[c] + tau / 12.0 * (k1[c] + 4.0 * kt2[c] + kt3[c]);
      }
      const double wi = speed(in, t + 0.5 * tau, x_half, y_mid);
      next = departure_simpson(x_arrival, wd, wi, wa, tau);
    }
    return Pass{ya, next};
  };
  auto departure_only = [&](double xd) { return simpson_departure_only(in, x_arrival, xd); };
  return iterate_node(in, x_arrival, x_departure, node, body, departure_only);
}

NodeValues slrk4_node(const StepInput& in, double x_arrival, double& x_departure,
                      std::size_t node) {
  const double t = in.t;
  const double tau = in.tau;
  auto body = [&](double xd, bool refine) {
    const NodeValues yd = interpolate(in, xd);
    const double wd = speed(in, t, xd, yd);
    const double x_half = xd + 0.5 * tau * wd;
    const NodeValues k1 = rhs(in, t, xd, yd);
    const NodeValues k2 = rhs(in, t + 0.5 * tau, x_half, yd.plus(0.5 * tau, k1));
    const NodeValues k3 = rhs(in, t + 0.5 * tau, x_half, yd.plus(0.5 * tau, k2));
    const NodeValues k4 = rhs(in, t + tau, x_arrival, yd.plus(tau, k3));
    NodeValues ya(yd.size());
    for (std::size_t c = 0; c < yd.size(); ++c) {
      ya[c] = yd[c] + tau / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    double next = xd;
    if (refine) {
      const double wa = speed(in, t + tau, x_arrival, ya);
      // Classic RK4 over the first half step to estimate y at the midpoint.
      // The last stage advances by tau/2 (the half-step size); a full tau
      // increment here drops the method to second order.
      const double x_quarter = xd + 0.25 * tau * wd;
      const NodeValues kt2 = rhs(in, t + 0.25 * tau, x_quarter, yd.plus(0.25 * tau, k1));
      const NodeValues kt3 = rhs(in, t + 0.25 * tau, x_quarter, yd.plus(0.25 * tau, kt2));
      const NodeValues kt4 =
          rhs(in, t + 0.5 * tau, x_half, yd.plus(0.5 * tau, kt3));
      NodeValues y_mid(yd.size());
      for (std::size_t c = 0; c < yd.size(); ++c) {
        y_mid[c] = yd[c] + tau / 12.0 * (k1[c] + 2.0 * kt2[c] + 2.0 * kt3[c] + kt4[c]);
      }
      const double wi = speed(in, t + 0.5 * tau, x_half, y_mid);
      next = departure_simpson(x_arrival, wd, wi, wa, tau);
    }
    return Pass{ya, next};
  };
  auto departure_only = [&](double xd) { return simpson_departure_only(in, x_arrival, xd); };
  return iterate_node(in, x_arrival, x_departure, node, body, departure_only);
}

using NodeKernel = NodeValues (*)(const StepInput&, double, double&, std::size_t);

void enforce_seam(StateField& field, std::size_t last) {
  for (std::size_t c = 0; c < field.components(); ++c) {
    const double first = field.at(c, 0);
    const double end = field.at(c, last);
    if (std::abs(first - end) > kSeamTolerance) {
      throw SolverError(fmt::format(
          "periodic seam broken in component {}: node 0 = {:.17g}, node {} = {:.17g}", c, first,
          last, end));
    }
    field.at(c, last) = first;
  }
}

StateField advance(const StateField& field, double t, const ProblemSpec& problem,
                   const Grid1D& grid, double tau, const MethodConfig& config,
                   DepartureState& departures, NodeKernel kernel) {
  config.validate();
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("step: tau must be positive");
  }
  const std::size_t nodes = grid.node_count();
  if (field.node_count() != nodes || field.components() != problem.components()) {
    throw std::invalid_argument(fmt::format(
        "step: field has {} components x {} nodes, expected {} x {}", field.components(),
        field.node_count(), problem.components(), nodes));
  }
  if (departures.points.size() != nodes) {
    departures.points.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      departures.points[i] = grid.node(static_cast<int>(i));
    }
  }

  const StepInput in{problem, field, grid, config.order, t, tau, config.iterations};
  StateField out(field.components(), nodes);
  parallel_for(nodes, [&](std::size_t i) {
    const double x_arrival = grid.node(static_cast<int>(i));
    double x_departure = departures.points[i];
    NodeValues ya;
    try {
      ya = kernel(in, x_arrival, x_departure, i);
    } catch (const std::domain_error& e) {
      throw SolverError(fmt::format("node {}: {}", i, e.what()));
    }
    for (std::size_t c = 0; c < ya.size(); ++c) {
      if (!std::isfinite(ya[c])) {
        throw SolverError(
            fmt::format("non-finite update at node {} (x = {}), component {}", i, x_arrival, c));
      }
      out.at(c, i) = ya[c];
    }
    departures.points[i] = x_departure;
  });
  enforce_seam(out, nodes - 1);
  return out;
}

} // namespace

StateField initial_field(const ProblemSpec& problem, const Grid1D& grid) {
  const std::size_t nodes = grid.node_count();
  StateField field(problem.components(), nodes);
  NodeValues y(problem.components());
  for (std::size_t i = 0; i < nodes; ++i) {
    problem.initial(grid.node(static_cast<int>(i)), y.span());
    for (std::size_t c = 0; c < y.size(); ++c) {
      field.at(c, i) = y[c];
    }
  }
  if (!field.all_finite()) {
    throw std::invalid_argument("initial_field: initial condition is not finite");
  }
  try {
    enforce_seam(field, nodes - 1);
  } catch (const SolverError& e) {
    throw std::invalid_argument(fmt::format("initial_field: {}", e.what()));
  }
  return field;
}

StateField step_slem(const StateField& field, double t, const ProblemSpec& problem,
                     const Grid1D& grid, double tau, const MethodConfig& config,
                     DepartureState& departures) {
  return advance(field, t, problem, grid, tau, config, departures, slem_node);
}

StateField step_mslem(const StateField& field, double t, const ProblemSpec& problem,
                      const Grid1D& grid, double tau, const MethodConfig& config,
                      DepartureState& departures) {
  return advance(field, t, problem, grid, tau, config, departures, mslem_node);
}

StateField step_slrk3(const StateField& field, double t, const ProblemSpec& problem,
                      const Grid1D& grid, double tau, const MethodConfig& config,
                      DepartureState& departures) {
  return advance(field, t, problem, grid, tau, config, departures, slrk3_node);
}

StateField step_slrk4(const StateField& field, double t, const ProblemSpec& problem,
                      const Grid1D& grid, double tau, const MethodConfig& config,
                      DepartureState& departures) {
  return advance(field, t, problem, grid, tau, config, departures, slrk4_node);
}

StateField step(const StateField& field, double t, const ProblemSpec& problem, const Grid1D& grid,
                double tau, const MethodConfig& config, DepartureState& departures) {
  switch (config.kind) {
  case MethodKind::SLEM: return step_slem(field, t, problem, grid, tau, config, departures);
  case MethodKind::MSLEM: return step_mslem(field, t, problem, grid, tau, config, departures);
  case MethodKind::SLRK3: return step_slrk3(field, t, problem, grid, tau, config, departures);
  case MethodKind::SLRK4: return step_slrk4(field, t, problem, grid, tau, config, departures);
  }
  throw std::logic_error("step: unknown method");
}

StateField solve(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                 const MethodConfig& config, const StateField& start, const Observer& observer) {
  config.validate();
  StateField field = start;
  DepartureState departures;
  if (observer) {
    observer(0, 0.0, field);
  }
  for (int k = 0; k < time.steps(); ++k) {
    try {
      field = step(field, time.time(k), problem, grid, time.step_size(), config, departures);
    } catch (const DivergenceError& e) {
      throw DivergenceError(fmt::format("step {}: {}", k + 1, e.what()), e.node(), k + 1);
    } catch (const SolverError& e) {
      throw SolverError(fmt::format("step {}: {}", k + 1, e.what()), k + 1);
    }
    if (observer) {
      observer(k + 1, time.time(k + 1), field);
    }
  }
  return field;
}

StateField solve(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                 const MethodConfig& config, const Observer& observer) {
  return solve(problem, grid, time, config, initial_field(problem, grid), observer);
}

} // namespace semilag
