#pragma once

#include <vector>

#include "semilag/field.hpp"
#include "semilag/grid.hpp"
#include "semilag/method.hpp"
#include "semilag/problem.hpp"
#include "semilag/steppers.hpp"

namespace semilag {

/// Departure pair per arrival node, carried between steps for warm starts.
struct Departure2D {
  std::vector<double> x;
  std::vector<double> y;
};

StateField initial_field(const ProblemSpec2D& problem, const Grid2D& grid);

// The 2D steps mirror the 1D methods with (u, v) as the advecting speeds in
// x and y. Both coordinates of the departure point are updated together in
// each fixed-point pass.
StateField step_slem_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                        const Grid2D& grid, double tau, const MethodConfig& config,
                        Departure2D& departures);
StateField step_rk2_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                       const Grid2D& grid, double tau, const MethodConfig& config,
                       Departure2D& departures);
StateField step_rk3_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                       const Grid2D& grid, double tau, const MethodConfig& config,
                       Departure2D& departures);
StateField step_rk4_2d(const StateField& field, double t, const ProblemSpec2D& problem,
                       const Grid2D& grid, double tau, const MethodConfig& config,
                       Departure2D& departures);

StateField step(const StateField& field, double t, const ProblemSpec2D& problem,
                const Grid2D& grid, double tau, const MethodConfig& config,
                Departure2D& departures);

StateField solve(const ProblemSpec2D& problem, const Grid2D& grid, const TimeGrid& time,
                 const MethodConfig& config, const StateField& start,
                 const Observer& observer = {});
StateField solve(const ProblemSpec2D& problem, const Grid2D& grid, const TimeGrid& time,
                 const MethodConfig& config, const Observer& observer = {});

} // namespace semilag
