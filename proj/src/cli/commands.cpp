#include "semilag/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <variant>

#include <fmt/format.h>

#include "semilag/cli/csv.hpp"
#include "semilag/problems.hpp"
#include "semilag/steppers.hpp"
#include "semilag/steppers2d.hpp"

namespace semilag::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  }
  return out;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError(fmt::format("[output] dir: cannot create '{}': {}", dir.string(),
                                  ec.message()));
  }
}

/// span / step as a whole number, or a ConfigError naming `what`.
int whole_count(double span, double step, std::string_view what) {
  const double q = span / step;
  const double r = std::round(q);
  if (r < 1.0 || std::abs(q - r) > 1e-9 * std::max(1.0, q)) {
    throw ConfigError(fmt::format("{}: {} / {} is not a whole number", what,
                                  format_value(span), format_value(step)));
  }
  return static_cast<int>(r);
}

void write_residuals(const ResidualSeries& series, const fs::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  std::vector<std::string> header{"step", "t"};
  for (const auto& name : series.component_names) {
    header.push_back("max_res_" + name);
  }
  csv.header(header);
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::vector<std::string> row{std::to_string(series.steps[k]), format_value(series.times[k])};
    for (double r : series.max_residuals[k]) {
      row.push_back(format_value(r));
    }
    csv.row(row);
  }
}

void write_final_field(const StateField& field, const ProblemSpec& problem, const Grid1D& grid,
                       double t, const fs::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  std::vector<std::string> header{"x"};
  for (const auto& name : problem.component_names) {
    header.push_back(name);
  }
  if (problem.exact) {
    for (const auto& name : problem.component_names) {
      header.push_back("exact_" + name);
    }
  }
  csv.header(header);
  NodeValues exact(problem.components());
  for (std::size_t i = 0; i < field.node_count(); ++i) {
    const double x = grid.node(static_cast<int>(i));
    std::vector<std::string> row{format_value(x)};
    for (std::size_t c = 0; c < field.components(); ++c) {
      row.push_back(format_value(field.at(c, i)));
    }
    if (problem.exact) {
      (*problem.exact)(t, x, exact.span());
      for (std::size_t c = 0; c < exact.size(); ++c) {
        row.push_back(format_value(exact[c]));
      }
    }
    csv.row(row);
  }
}

void write_final_field(const StateField& field, const ProblemSpec2D& problem, const Grid2D& grid,
                       double t, const fs::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  std::vector<std::string> header{"x", "y", "u", "v"};
  if (problem.exact) {
    header.insert(header.end(), {"exact_u", "exact_v"});
  }
  csv.header(header);
  NodeValues exact(2);
  for (int j = 0; j <= grid.y_axis().cells(); ++j) {
    for (int i = 0; i <= grid.x_axis().cells(); ++i) {
      const double x = grid.x_axis().node(i);
      const double y = grid.y_axis().node(j);
      const std::size_t n = grid.index(i, j);
      std::vector<std::string> row{format_value(x), format_value(y), format_value(field.at(0, n)),
                                   format_value(field.at(1, n))};
      if (problem.exact) {
        (*problem.exact)(t, x, y, exact.span());
        row.push_back(format_value(exact[0]));
        row.push_back(format_value(exact[1]));
      }
      csv.row(row);
    }
  }
}

void write_manifest(const fs::path& path, std::string_view command, const RunConfig& cfg,
                    const std::string& extra, double seconds) {
  auto out = open_output(path);
  out << "semilag_version = " << SEMILAG_VERSION << '\n';
  out << "command = " << command << '\n';
  out << describe(cfg);
  out << extra;
  out << fmt::format("wall_time_seconds = {:.6f}\n", seconds);
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

RunOutputs run(const RunConfig& cfg, std::ostream& log) {
  validate_for_run(cfg);
  const auto start = std::chrono::steady_clock::now();
  const AnyProblem problem = *make_problem(cfg.problem_id);
  const MethodConfig mc = cfg.method_config(*cfg.method);
  const TimeGrid time(*cfg.final_time, cfg.steps);
  prepare_dir(cfg.output_dir);

  RunOutputs outputs;
  std::string extra = fmt::format("tau = {}\n", format_value(time.step_size()));
  bool wrote_residuals = false;

  auto finish = [&](const ResidualSeries* series) {
    if (series && cfg.residual_series) {
      outputs.residuals = cfg.output_dir / "residuals.csv";
      write_residuals(*series, *outputs.residuals);
      wrote_residuals = true;
      const auto& last = series->max_residuals.back();
      for (std::size_t c = 0; c < last.size(); ++c) {
        log << fmt::format("max residual {} at T: {:.6e}\n", series->component_names[c], last[c]);
      }
    } else if (cfg.residual_series) {
      log << "problem has no exact solution; residuals.csv not written\n";
    }
  };

  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ProblemSpec>) {
          const Grid1D grid(p.a, p.b, cfg.cells);
          extra += fmt::format("h = {}\n", format_value(grid.spacing()));
          StateField final_field;
          if (p.exact && cfg.residual_series) {
            RunResult r = run_with_residuals(p, grid, time, mc);
            finish(&r.residuals);
            final_field = std::move(r.final_field);
          } else {
            final_field = solve(p, grid, time, mc);
            finish(nullptr);
          }
          if (cfg.final_field) {
            outputs.final_field = cfg.output_dir / "final_field.csv";
            write_final_field(final_field, p, grid, time.final_time(), *outputs.final_field);
          }
        } else {
          const Grid2D grid(p.ax, p.bx, cfg.cells_x, p.cy, p.dy, cfg.cells_y);
          extra += fmt::format("hx = {}\nhy = {}\n", format_value(grid.x_axis().spacing()),
                               format_value(grid.y_axis().spacing()));
          StateField final_field;
          if (p.exact && cfg.residual_series) {
            RunResult r = run_with_residuals(p, grid, time, mc);
            finish(&r.residuals);
            final_field = std::move(r.final_field);
          } else {
            final_field = solve(p, grid, time, mc);
            finish(nullptr);
          }
          if (cfg.final_field) {
            outputs.final_field = cfg.output_dir / "final_field.csv";
            write_final_field(final_field, p, grid, time.final_time(), *outputs.final_field);
          }
        }
      },
      problem);

  extra += fmt::format("residuals_written = {}\n", wrote_residuals ? "true" : "false");
  outputs.manifest = cfg.output_dir / "manifest.txt";
  write_manifest(outputs.manifest, "run", cfg, extra, elapsed_since(start));
  return outputs;
}

OrderStudyResult order_study(const std::vector<MethodKind>& methods,
                             const std::vector<double>& taus, double h_ratio,
                             const std::vector<std::string>& component_names,
                             const StudySampler& sampler, std::ostream& log) {
  OrderStudyResult result;
  result.component_names = component_names;
  const std::size_t nc = component_names.size();

  for (MethodKind method : methods) {
    const std::size_t first_row = result.rows.size();
    for (double tau : taus) {
      StudyRow row{method, tau, h_ratio * tau, sampler(method, tau, h_ratio * tau)};
      if (row.residuals.size() != nc) {
        throw std::logic_error("order_study: sampler returned the wrong component count");
      }
      result.rows.push_back(std::move(row));
    }

    // One fit per component plus one on the largest component.
    for (std::size_t c = 0; c <= nc; ++c) {
      const std::string label = c < nc ? component_names[c] : "max";
      std::vector<OrderSample> samples;
      for (std::size_t r = first_row; r < result.rows.size(); ++r) {
        const auto& row = result.rows[r];
        const double value =
            c < nc ? row.residuals[c] : *std::max_element(row.residuals.begin(), row.residuals.end());
        if (value == 0.0) {
          log << fmt::format("warning: {} {}: zero residual at tau = {} dropped\n",
                             method_name(method), label, format_value(row.tau));
          continue;
        }
        samples.push_back({row.tau, value});
      }
      if (samples.size() < 3) {
        throw StudyError(fmt::format(
            "{} {}: only {} usable samples after dropping zero residuals (need 3)",
            method_name(method), label, samples.size()));
      }
      OrderEstimate est = estimate_order(samples);
      log << fmt::format("{:6} {:4} slope {:7.4f}  R^2 {:.5f}{}\n", method_name(method), label,
                         est.slope, est.r_squared,
                         est.reliable() ? "" : "  (unreliable fit)");
      result.fits.push_back({method, label, std::move(est)});
    }
  }
  return result;
}

OrderStudyResult order_study(const RunConfig& cfg, std::ostream& log) {
  validate_for_study(cfg);
  const auto start = std::chrono::steady_clock::now();
  const AnyProblem problem = *make_problem(cfg.problem_id);
  const std::vector<MethodKind> methods =
      cfg.study_methods.empty() ? std::vector<MethodKind>{*cfg.method} : cfg.study_methods;
  const double final_time = *cfg.final_time;

  std::vector<std::string> names;
  double ratio = 1.0;
  StudySampler sampler;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if (!p.exact) {
          throw ConfigError(fmt::format(
              "[problem] id: '{}' has no exact solution; an order study needs one", p.name));
        }
        if constexpr (std::is_same_v<P, ProblemSpec>) {
          names = p.component_names;
          ratio = cfg.h_ratio.value_or(1.0);
          sampler = [&cfg, p, final_time](MethodKind kind, double tau, double h) {
            const Grid1D grid(p.a, p.b, whole_count(p.b - p.a, h, "[order_study] h"));
            const TimeGrid time(final_time, whole_count(final_time, tau, "[order_study] tau"));
            const StateField f = solve(p, grid, time, cfg.method_config(kind));
            return max_residual(residual_at(f, p, final_time, grid));
          };
        } else {
          names = {"u", "v"};
          ratio = cfg.h_ratio.value_or(2.0);
          sampler = [&cfg, p, final_time](MethodKind kind, double tau, double h) {
            const Grid2D grid(p.ax, p.bx, whole_count(p.bx - p.ax, h, "[order_study] h"), p.cy,
                              p.dy, whole_count(p.dy - p.cy, h, "[order_study] h"));
            const TimeGrid time(final_time, whole_count(final_time, tau, "[order_study] tau"));
            const StateField f = solve(p, grid, time, cfg.method_config(kind));
            return max_residual(residual_at(f, p, final_time, grid));
          };
        }
      },
      problem);

  // Resolve every grid up front so a bad tau fails before any solve runs.
  const double length = std::visit(
      [](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, ProblemSpec>) {
          return p.b - p.a;
        } else {
          return p.bx - p.ax;
        }
      },
      problem);
  for (double tau : cfg.study_taus) {
    whole_count(final_time, tau, "[order_study] tau");
    whole_count(length, ratio * tau, "[order_study] h");
  }

  prepare_dir(cfg.output_dir);
  OrderStudyResult result = order_study(methods, cfg.study_taus, ratio, names, sampler, log);
  write_orders_csv(result, cfg.output_dir / "orders.csv");
  write_manifest(cfg.output_dir / "manifest.txt", "order-study", cfg,
                 fmt::format("h_ratio_used = {}\n", format_value(ratio)), elapsed_since(start));
  return result;
}

void write_orders_csv(const OrderStudyResult& result, const fs::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  std::vector<std::string> header{"method", "tau", "h"};
  for (const auto& name : result.component_names) {
    header.push_back("max_res_" + name);
  }
  csv.header(header);
  for (const auto& row : result.rows) {
    std::vector<std::string> cells{std::string(method_name(row.method)), format_value(row.tau),
                                   format_value(row.h)};
    for (double r : row.residuals) {
      cells.push_back(format_value(r));
    }
    csv.row(cells);
  }
  csv.separator();
  csv.header({"method", "component", "slope", "intercept", "r_squared", "reliable"});
  for (const auto& fit : result.fits) {
    csv.row({std::string(method_name(fit.method)), fit.component, format_value(fit.estimate.slope),
             format_value(fit.estimate.intercept), format_value(fit.estimate.r_squared),
             fit.estimate.reliable() ? "true" : "false"});
  }
}

} // namespace semilag::cli
