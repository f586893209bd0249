#pragma once

#include <span>
#include <string>
#include <vector>

#include "semilag/field.hpp"
#include "semilag/grid.hpp"
#include "semilag/method.hpp"
#include "semilag/problem.hpp"

namespace semilag {

/// |exact(t, node) - numeric| per node and component.
/// Throws std::invalid_argument if the problem has no exact solution.
StateField residual_at(const StateField& numeric, const ProblemSpec& problem, double t,
                       const Grid1D& grid);
StateField residual_at(const StateField& numeric, const ProblemSpec2D& problem, double t,
                       const Grid2D& grid);

/// Componentwise maximum over nodes.
std::vector<double> max_residual(const StateField& residual);

/// Max residual per component at every time level 0..N.
struct ResidualSeries {
  std::string method;
  std::vector<std::string> component_names;
  std::vector<int> steps;
  std::vector<double> times;
  std::vector<std::vector<double>> max_residuals; // [level][component]

  void record(int step, double t, std::vector<double> per_component);
  std::size_t size() const { return times.size(); }
};

struct RunResult {
  StateField final_field;
  ResidualSeries residuals;
};

/// Solves and records the max residual at every level (problem needs an exact solution).
RunResult run_with_residuals(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                             const MethodConfig& config);
RunResult run_with_residuals(const ProblemSpec2D& problem, const Grid2D& grid,
                             const TimeGrid& time, const MethodConfig& config);

struct OrderSample {
  double tau;
  double residual; // max residual at the final time
};

/// Least-squares fit of log(residual) against log(tau).
struct OrderEstimate {
  double slope = 0.0;
  double intercept = 0.0; // natural log
  double r_squared = 0.0;
  std::vector<OrderSample> samples;

  /// Fits below this R^2 are reported as unreliable, not rejected.
  static constexpr double kReliableRSquared = 0.98;
  bool reliable() const { return r_squared >= kReliableRSquared; }
};

/// Needs >= 3 samples with strictly decreasing tau and positive residuals.
/// A zero residual throws std::domain_error (the run is exact to machine
/// precision; use a longer T or a coarser tau).
OrderEstimate estimate_order(std::span<const OrderSample> samples);

/// Runs from y0 and from y0 + delta (every node, every component) and returns
/// max|difference at T| / delta.
double stability_probe(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                       const MethodConfig& config, double delta);

} // namespace semilag
