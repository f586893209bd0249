#pragma once

#include <functional>

#include "semilag/departure.hpp"
#include "semilag/field.hpp"
#include "semilag/grid.hpp"
#include "semilag/method.hpp"
#include "semilag/problem.hpp"

namespace semilag {

/// Called with (level k, t_k, field at t_k) for k = 0 (the initial field)
/// and after every step.
using Observer = std::function<void(int step, double t, const StateField& field)>;

/// Samples y0 at every node; node M is set to node 0's value after checking
/// they agree to 1e-10.
StateField initial_field(const ProblemSpec& problem, const Grid1D& grid);

// One step t_k -> t_k + tau over every arrival node. Each reads only the
// frozen level-k field and updates `departures` with this step's departure
// points, which seed the next step. All of them throw SolverError on a
// non-finite update or a broken periodic seam, and DivergenceError when a
// departure iteration escapes.
StateField step_slem(const StateField& field, double t, const ProblemSpec& problem,
                     const Grid1D& grid, double tau, const MethodConfig& config,
                     DepartureState& departures);
StateField step_mslem(const StateField& field, double t, const ProblemSpec& problem,
                      const Grid1D& grid, double tau, const MethodConfig& config,
                      DepartureState& departures);
StateField step_slrk3(const StateField& field, double t, const ProblemSpec& problem,
                      const Grid1D& grid, double tau, const MethodConfig& config,
                      DepartureState& departures);
StateField step_slrk4(const StateField& field, double t, const ProblemSpec& problem,
                      const Grid1D& grid, double tau, const MethodConfig& config,
                      DepartureState& departures);

/// Dispatches on config.kind.
StateField step(const StateField& field, double t, const ProblemSpec& problem, const Grid1D& grid,
                double tau, const MethodConfig& config, DepartureState& departures);

/// Marches `start` through all levels of `time`. Errors are rethrown as
/// SolverError carrying the failing step index (1-based: the level being
/// computed).
StateField solve(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                 const MethodConfig& config, const StateField& start,
                 const Observer& observer = {});

/// As above, starting from initial_field(problem, grid).
StateField solve(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                 const MethodConfig& config, const Observer& observer = {});

} // namespace semilag
