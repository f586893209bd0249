#include "semilag/steppers2d.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "semilag/departure.hpp"
#include "semilag/errors.hpp"
#include "semilag/interp.hpp"
#include "semilag/parallel.hpp"

namespace semilag {

namespace {

constexpr double kSeamTolerance = 1e-10;

struct StepInput2D {
  const ProblemSpec2D& problem;
  const StateField& field;
  const Grid2D& grid;
  InterpOrder order;
  double t;
  double tau;
  int iterations;
};

struct Point {
  double x;
  double y;
};

NodeValues interpolate(const StepInput2D& in, Point p) {
  NodeValues uv(2);
  interp2d(in.field, in.grid, p.x, p.y, in.order, uv.span());
  return uv;
}

NodeValues rhs(const StepInput2D& in, double t, Point p, const NodeValues& uv) {
  NodeValues out(2);
  in.problem.rhs(t, p.x, p.y, uv.span(), out.span());
  return out;
}

void check(const StepInput2D& in, Point p, std::size_t node) {
  check_departure(in.grid.x_axis(), p.x, node);
  check_departure(in.grid.y_axis(), p.y, node);
}

/// p + s * (u, v)
Point advect(Point p, double s, const NodeValues& uv) { return {p.x + s * uv[0], p.y + s * uv[1]}; }

NodeValues euler_node(const StepInput2D& in, Point arrival, Point& dep, std::size_t node) {
  for (int i = 0; i < in.iterations; ++i) {
    const NodeValues uv = interpolate(in, dep);
    const auto [x, y] = departure_euler_2d(arrival.x, arrival.y, uv[0], uv[1], in.tau);
    dep = {x, y};
    check(in, dep, node);
  }
  const NodeValues ud = interpolate(in, dep);
  return ud.plus(in.tau, rhs(in, in.t, dep, ud));
}

struct Pass2D {
  NodeValues arrival;
  Point next;
};

template <class Body>
NodeValues iterate_node(const StepInput2D& in, Point& dep, std::size_t node, Body body) {
  const int n = in.iterations;
  NodeValues arrival;
  for (int i = 1; i <= n; ++i) {
    const bool refine = i <= n - 1;
    Pass2D pass = body(dep, refine);
    arrival = pass.arrival;
    if (refine) {
      dep = pass.next;
      check(in, dep, node);
    }
  }
  return arrival;
}

NodeValues rk2_node(const StepInput2D& in, Point arrival, Point& dep, std::size_t node) {
  const double t = in.t;
  const double tau = in.tau;
  return iterate_node(in, dep, node, [&](Point d, bool refine) {
    const NodeValues ud = interpolate(in, d);
    const NodeValues k1 = rhs(in, t, d, ud);
    const NodeValues k2 = rhs(in, t + tau, arrival, ud.plus(tau, k1));
    NodeValues ua(2);
    for (std::size_t c = 0; c < 2; ++c) {
      ua[c] = ud[c] + 0.5 * tau * (k1[c] + k2[c]);
    }
    Point next = d;
    if (refine) {
      next = {departure_trapezoid(arrival.x, ud[0], ua[0], tau),
              departure_trapezoid(arrival.y, ud[1], ua[1], tau)};
    }
    return Pass2D{ua, next};
  });
}

NodeValues rk3_node(const StepInput2D& in, Point arrival, Point& dep, std::size_t node) {
  const double t = in.t;
  const double tau = in.tau;
  return iterate_node(in, dep, node, [&](Point d, bool refine) {
    const NodeValues ud = interpolate(in, d);
    const Point half = advect(d, 0.5 * tau, ud);
    const NodeValues k1 = rhs(in, t, d, ud);
    const NodeValues k2 = rhs(in, t + 0.5 * tau, half, ud.plus(0.5 * tau, k1));
    const NodeValues k3 = rhs(in, t + tau, arrival, ud.plus(-tau, k1).plus(2.0 * tau, k2));
    NodeValues ua(2);
    for (std::size_t c = 0; c < 2; ++c) {
      ua[c] = ud[c] + tau / 6.0 * (k1[c] + 4.0 * k2[c] + k3[c]);
    }
    Point next = d;
    if (refine) {
      const Point quarter = advect(d, 0.25 * tau, ud);
      const NodeValues kt2 = rhs(in, t + 0.25 * tau, quarter, ud.plus(0.25 * tau, k1));
      const NodeValues kt3 = rhs(in, t + 0.5 * tau, half, ud.plus(-0.5 * tau, k1).plus(tau, kt2));
      NodeValues mid(2);
      for (std::size_t c = 0; c < 2; ++c) {
        mid[c] = ud[c] + tau / 12.0 * (k1[c] + 4.0 * kt2[c] + kt3[c]);
      }
      next = {departure_simpson(arrival.x, ud[0], mid[0], ua[0], tau),
              departure_simpson(arrival.y, ud[1], mid[1], ua[1], tau)};
    }
    return Pass2D{ua, next};
  });
}

NodeValues rk4_node(const StepInput2D& in, Point arrival, Point& dep, std::size_t node) {
  const double t = in.t;
  const double tau = in.tau;
  return iterate_node(in, dep, node, [&](Point d, bool refine) {
    const NodeValues ud = interpolate(in, d);
    const Point half = advect(d, 0.5 * tau, ud);
    const NodeValues k1 = rhs(in, t, d, ud);
    const NodeValues k2 = rhs(in, t + 0.5 * tau, half, ud.plus(0.5 * tau, k1));
    const NodeValues k3 = rhs(in, t + 0.5 * tau, half, ud.plus(0.5 * tau, k2));
    const NodeValues k4 = rhs(in, t + tau, arrival, ud.plus(tau, k3));
    NodeValues ua(2);
    for (std::size_t c = 0; c < 2; ++c) {
      ua[c] = ud[c] + tau / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    Point next = d;
    if (refine) {
      const Point quarter = advect(d, 0.25 * tau, ud);
      const NodeValues kt2 = rhs(in, t + 0.25 * tau, quarter, ud.plus(0.25 * tau, k1));
      const NodeValues kt3 = rhs(in, t + 0.25 * tau, quarter, ud.plus(0.25 * tau, kt2));
      const NodeValues kt4 = rhs(in, t + 0.5 * tau, half, ud.plus(0.5 * tau, kt3));
      NodeValues mid(2);
      for (std::size_t c = 0; c < 2; ++c) {
        mid[c] = ud[c] + tau / 12.0 * (k1[c] + 2.0 * kt2[c] + 2.0 * kt3[c] + kt4[c]);
      }
      next = {departure_simpson(arrival.x, ud[0], mid[0], ua[0], tau),
              departure_simpson(arrival.y, ud[1], mid[1], ua[1], tau)};
    }
    return Pass2D{ua, next};
  });
}

using NodeKernel2D = NodeValues (*)(const StepInput2D&, Point, Point&, std::size_t);

void enforce_seams(StateField& field, const Grid2D& grid) {
  const int mx = grid.x_axis().cells();
  const int my = grid.y_axis().cells();
  auto tie = [&](std::size_t c, std::size_t keep, std::size_t image) {
    const double a = field.at(c, keep);
    const double b = field.at(c, image);
    if (std::abs(a - b) > kSeamTolerance) {
      throw SolverError(fmt::format(
          "periodic seam broken in component {}: node {} = {:.17g}, node {} = {:.17g}", c, keep,
          a, image, b));
    }
    field.at(c, image) = a;
  };
  for (std::size_t c = 0; c < field.components(); ++c) {
    for (int j = 0; j <= my; ++j) {
      tie(c, grid.index(0, j), grid.index(mx, j));
    }
    for (int i = 0; i <= mx; ++i) {
      tie(c, grid.index(i, 0), grid.index(i, my));
    }
  }
}

Point node_point(const Grid2D& grid, std::size_t flat) {
  const std::size_t row = grid.x_axis().node_count();
  return {grid.x_axis().node(static_cast<int>(flat % row)),
          grid.y_axis().node(static_cast<int>(flat / row))};
}

StateField advance(const StateField& field, double t, const ProblemSpec2D& problem,
                   const Grid2D& grid, double tau, const MethodConfig& config,
                   Departure2D& departures, NodeKernel2D kernel) {
  config.validate();
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("step: tau must be positive");
  }
  const std::size_t nodes = grid.node_count();
  if (field.components() != 2 || field.node_count() != nodes) {
    throw std::invalid_argument(fmt::format(
        "step: 2D field must have 2 components x {} nodes, got {} x {}", nodes,
        field.components(), field.node_count()));
  }
  if (departures.x.size() != nodes || departures.y.size() != nodes) {
    departures.x.resize(nodes);
    departures.y.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      const Point p = node_point(grid, i);
      departures.x[i] = p.x;
      departures.y[i] = p.y;
    }
  }

  const StepInput2D in{problem, field, grid, config.order, t, tau, config.iterations};
  StateField out(2, nodes);
  parallel_for(nodes, [&](std::size_t i) {
    const Point arrival = node_point(grid, i);
    Point dep{departures.x[i], departures.y[i]};
    NodeValues ua;
    try {
      ua = kernel(in, arrival, dep, i);
    } catch (const std::domain_error& e) {
      throw SolverError(fmt::format("node {}: {}", i, e.what()));
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (!std::isfinite(ua[c])) {
        throw SolverError(fmt::format("non-finite update at node {} (x = {}, y = {}), component {}",
                                      i, arrival.x, arrival.y, c));
      }
      out.at(c, i) = ua[c];
    }
    departures.x[i] = dep.x;
    departures.y[i] = dep.y;
  });
  enforce_seams(out, grid);
  return out;
}

} // namespace

StateField initial_field(const ProblemSpec2D& problem, const Grid2D& grid) {
  const std::size_t nodes = grid.node_count();
  StateField field(2, nodes);
  NodeValues uv(2);
  for (std::size_t i = 0; i < nodes; ++i) {
    const Point p = node_point(grid, i);
    problem.initial(p.x, p.y, uv.span());
    field.at(0, i) = uv[0];
    field.at(1, i) = uv[1];
  }
  if (!field.all_finite()) {
    throw std::invalid_argument("initial_field: initial condition is not finite");
  }
  try {
    enforce_seams(field, grid);
  } catch (const SolverError& e) {
    throw std::invalid_argument(fmt::format("initial_field: {}", e.what()));
  }
  return field;
}

StateField step_slem_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                        const Grid2D& grid, double tau, const MethodConfig& config,
                        Departure2D& departures) {
  return advance(field, t, problem, grid, tau, config, departures, euler_node);
}

StateField step_rk2_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                       const Grid2D& grid, double tau, const MethodConfig& config,
                       Departure2D& departures) {
  return advance(field, t, problem, grid, tau, config, departures, rk2_node);
}

StateField step_rk3_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                       const Grid2D& grid, double tau, const MethodConfig& config,
                       Departure2D& departures) {
  return advance(field, t, problem, grid, tau, config, departures, rk3_node);
}

StateField step_rk4_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                       const Grid2D& grid, double tau, const MethodConfig& config,
                       Departure2D& departures) {
  return advance(field, t, problem, grid, tau, config, departures, rk4_node);
}

StateField step(const StateField& field, double t, const ProblemSpec2D& problem,
                const Grid2D& grid, double tau, const MethodConfig& config,
                Departure2D& departures) {
  switch (config.kind) {
  case MethodKind::SLEM: return step_slem_2d(field, t, problem, grid, tau, config, departures);
  case MethodKind::MSLEM: return step_rk2_2d(field, t, problem, grid, tau, config, departures);
  case MethodKind::SLRK3: return step_rk3_2d(field, t, problem, grid, tau, config, departures);
  case MethodKind::SLRK4: return step_rk4_2d(field, t, problem, grid, tau, config, departures);
  }
  throw std::logic_error("step: unknown method");
}

StateField solve(const ProblemSpec2D& problem, const Grid2D& grid, const TimeGrid& time,
                 const MethodConfig& config, const StateField& start, const Observer& observer) {
  config.validate();
  StateField field = start;
  Departure2D departures;
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

StateField solve(const ProblemSpec2D& problem, const Grid2D& grid, const TimeGrid& time,
                 const MethodConfig& config, const Observer& observer) {
  return solve(problem, grid, time, config, initial_field(problem, grid), observer);
}

} // namespace semilag
