#include "semilag/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "semilag/steppers.hpp"
#include "semilag/steppers2d.hpp"

namespace semilag {

StateField residual_at(const StateField& numeric, const ProblemSpec& problem, double t,
                       const Grid1D& grid) {
  if (!problem.exact) {
    throw std::invalid_argument(
        fmt::format("residual_at: problem '{}' has no exact solution", problem.name));
  }
  if (numeric.node_count() != grid.node_count() || numeric.components() != problem.components()) {
    throw std::invalid_argument("residual_at: field does not match grid/problem");
  }
  StateField res(numeric.components(), numeric.node_count());
  NodeValues y(numeric.components());
  for (std::size_t i = 0; i < numeric.node_count(); ++i) {
    (*problem.exact)(t, grid.node(static_cast<int>(i)), y.span());
    for (std::size_t c = 0; c < y.size(); ++c) {
      res.at(c, i) = std::abs(y[c] - numeric.at(c, i));
    }
  }
  return res;
}

StateField residual_at(const StateField& numeric, const ProblemSpec2D& problem, double t,
                       const Grid2D& grid) {
  if (!problem.exact) {
    throw std::invalid_argument(
        fmt::format("residual_at: problem '{}' has no exact solution", problem.name));
  }
  if (numeric.node_count() != grid.node_count() || numeric.components() != 2) {
    throw std::invalid_argument("residual_at: field does not match grid/problem");
  }
  StateField res(2, numeric.node_count());
  NodeValues uv(2);
  const std::size_t row = grid.x_axis().node_count();
  for (std::size_t n = 0; n < numeric.node_count(); ++n) {
    const double x = grid.x_axis().node(static_cast<int>(n % row));
    const double y = grid.y_axis().node(static_cast<int>(n / row));
    (*problem.exact)(t, x, y, uv.span());
    for (std::size_t c = 0; c < 2; ++c) {
      res.at(c, n) = std::abs(uv[c] - numeric.at(c, n));
    }
  }
  return res;
}

std::vector<double> max_residual(const StateField& residual) {
  std::vector<double> out(residual.components());
  for (std::size_t c = 0; c < residual.components(); ++c) {
    const auto values = residual.component(c);
    out[c] = *std::max_element(values.begin(), values.end());
  }
  return out;
}

void ResidualSeries::record(int step, double t, std::vector<double> per_component) {
  steps.push_back(step);
  times.push_back(t);
  max_residuals.push_back(std::move(per_component));
}

RunResult run_with_residuals(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                             const MethodConfig& config) {
  ResidualSeries series;
  series.method = std::string(method_name(config.kind));
  series.component_names = problem.component_names;
  StateField final_field = solve(problem, grid, time, config,
                                 [&](int k, double t, const StateField& field) {
                                   series.record(k, t,
                                                 max_residual(residual_at(field, problem, t, grid)));
                                 });
  return {std::move(final_field), std::move(series)};
}

RunResult run_with_residuals(const ProblemSpec2D& problem, const Grid2D& grid,
                             const TimeGrid& time, const MethodConfig& config) {
  ResidualSeries series;
  series.method = std::string(method_name(config.kind));
  series.component_names = {"u", "v"};
  StateField final_field = solve(problem, grid, time, config,
                                 [&](int k, double t, const StateField& field) {
                                   series.record(k, t,
                                                 max_residual(residual_at(field, problem, t, grid)));
                                 });
  return {std::move(final_field), std::move(series)};
}

OrderEstimate estimate_order(std::span<const OrderSample> samples) {
  if (samples.size() < 3) {
    throw std::invalid_argument(
        fmt::format("estimate_order: need at least 3 samples, got {}", samples.size()));
  }
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const auto& s = samples[j];
    if (!(s.tau > 0.0) || !std::isfinite(s.tau)) {
      throw std::invalid_argument("estimate_order: tau values must be positive and finite");
    }
    if (j > 0 && !(s.tau < samples[j - 1].tau)) {
      throw std::invalid_argument("estimate_order: tau values must be strictly decreasing");
    }
    if (s.residual == 0.0) {
      throw std::domain_error(fmt::format(
          "estimate_order: zero residual at tau = {} (exact to machine precision); "
          "use a longer final time or a coarser tau",
          s.tau));
    }
    if (!(s.residual > 0.0) || !std::isfinite(s.residual)) {
      throw std::invalid_argument("estimate_order: residuals must be positive and finite");
    }
  }

  const double n = static_cast<double>(samples.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : samples) {
    mean_x += std::log(s.tau);
    mean_y += std::log(s.residual);
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.tau) - mean_x;
    const double dy = std::log(s.residual) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  OrderEstimate est;
  est.slope = sxy / sxx;
  est.intercept = mean_y - est.slope * mean_x;
  double ss_res = 0.0;
  for (const auto& s : samples) {
    const double r = std::log(s.residual) - (est.intercept + est.slope * std::log(s.tau));
    ss_res += r * r;
  }
  est.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  est.samples.assign(samples.begin(), samples.end());
  return est;
}

double stability_probe(const ProblemSpec& problem, const Grid1D& grid, const TimeGrid& time,
                       const MethodConfig& config, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("stability_probe: delta must be positive");
  }
  const StateField base = initial_field(problem, grid);
  StateField perturbed = base;
  for (std::size_t c = 0; c < perturbed.components(); ++c) {
    for (double& v : perturbed.component(c)) {
      v += delta;
    }
  }
  const StateField a = solve(problem, grid, time, config, base);
  const StateField b = solve(problem, grid, time, config, perturbed);
  double diff = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    diff = std::max(diff, std::abs(va[i] - vb[i]));
  }
  return diff / delta;
}

} // namespace semilag
