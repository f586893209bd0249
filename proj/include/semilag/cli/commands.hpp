#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semilag/analysis.hpp"
#include "semilag/cli/config.hpp"
#include "semilag/method.hpp"

namespace semilag::cli {

/// An order study that cannot produce a fit (too few usable samples).
class StudyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunOutputs {
  std::optional<std::filesystem::path> residuals;
  std::optional<std::filesystem::path> final_field;
  std::filesystem::path manifest;
};

/// Solves the configured problem and writes residuals.csv, final_field.csv
/// and manifest.txt into config.output_dir. Throws ConfigError or
/// SolverError.
RunOutputs run(const RunConfig& config, std::ostream& log);

struct StudyRow {
  MethodKind method;
  double tau;
  double h;
  std::vector<double> residuals; // per component, at T
};

struct StudyFit {
  MethodKind method;
  std::string component; // a component name, or "max" for the largest
  OrderEstimate estimate;
};

struct OrderStudyResult {
  std::vector<std::string> component_names;
  std::vector<StudyRow> rows;
  std::vector<StudyFit> fits;
};

/// Max residual at T per component for one (method, tau, h) run.
using StudySampler =
    std::function<std::vector<double>(MethodKind method, double tau, double h)>;

/// Runs every (method, tau) pair through `sampler` and fits a slope per
/// method and component. Zero residuals are dropped with a warning; a series
/// left with fewer than three samples throws StudyError.
OrderStudyResult order_study(const std::vector<MethodKind>& methods,
                             const std::vector<double>& taus, double h_ratio,
                             const std::vector<std::string>& component_names,
                             const StudySampler& sampler, std::ostream& log);

/// Order study for the configured registry problem; writes orders.csv and
/// manifest.txt into config.output_dir.
OrderStudyResult order_study(const RunConfig& config, std::ostream& log);

void write_orders_csv(const OrderStudyResult& result, const std::filesystem::path& path);

} // namespace semilag::cli
