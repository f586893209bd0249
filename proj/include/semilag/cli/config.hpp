#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semilag/method.hpp"

namespace semilag::cli {

/// Bad configuration input. The message names the source, line and field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Resolved experiment configuration.
///
/// File format: `[section]` headers followed by `key = value` lines; `#`
/// starts a comment. Sections and keys:
///
///   [problem]     id
///   [method]      kind, interp_order, iterations
///   [grid]        M (1D) or Mx, My (2D)
///   [time]        T, N
///   [output]      dir, residual_series, final_field
///   [order_study] methods, taus, h_ratio
///
/// `taus` accepts decimals or fractions such as 1/50.
struct RunConfig {
  std::string problem_id;
  std::optional<MethodKind> method;
  std::optional<int> interp_order; // default: the method's own order
  int iterations = kDefaultDepartureIterations;

  int cells = 0;
  int cells_x = 0;
  int cells_y = 0;

  std::optional<double> final_time;
  int steps = 0;

  std::filesystem::path output_dir = "out";
  bool residual_series = true;
  bool final_field = true;

  std::vector<MethodKind> study_methods;
  std::vector<double> study_taus;
  std::optional<double> h_ratio; // default: 1 in 1D, 2 in 2D

  /// Method configuration for `kind` with this config's interpolation order
  /// and iteration count.
  MethodConfig method_config(MethodKind kind) const;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Checks that everything `run` needs is present and consistent.
void validate_for_run(const RunConfig& config);
/// Checks that everything `order-study` needs is present and consistent.
void validate_for_study(const RunConfig& config);

/// Resolved config as `key = value` lines, in a fixed order.
std::string describe(const RunConfig& config);

} // namespace semilag::cli
