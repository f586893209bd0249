// Command-line front end: run, order-study, list-problems, list-methods.
//
// Exit status: 0 on success, 1 when a solve or study fails, 2 for bad
// configuration or usage.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "semilag/cli/commands.hpp"
#include "semilag/cli/config.hpp"
#include "semilag/errors.hpp"
#include "semilag/method.hpp"
#include "semilag/problems.hpp"

namespace {

constexpr int kExitSolver = 1;
constexpr int kExitConfig = 2;

int guarded(const std::function<void()>& body) {
  using namespace semilag;
  try {
    body();
    return 0;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const cli::StudyError& e) {
    std::cerr << "order study failed: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

} // namespace

int main(int argc, char** argv) {
  using namespace semilag;

  CLI::App app{"Semi-Lagrangian one-step solvers for nonlinear advection"};
  app.set_version_flag("--version", std::string(SEMILAG_VERSION));
  app.require_subcommand(1);

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Solve a configured problem and write CSV outputs");
  run_cmd->add_option("config", run_path, "Config file")->required();

  std::string study_path;
  auto* study_cmd =
      app.add_subcommand("order-study", "Run a tau sweep and fit convergence slopes");
  study_cmd->add_option("config", study_path, "Config file")->required();

  auto* problems_cmd = app.add_subcommand("list-problems", "Show registered problem ids");
  auto* methods_cmd = app.add_subcommand("list-methods", "Show method names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run_cmd) {
    return guarded([&] {
      const auto cfg = cli::load_config(run_path);
      const auto out = cli::run(cfg, std::cout);
      std::cout << "wrote " << out.manifest.parent_path().string() << '\n';
    });
  }
  if (*study_cmd) {
    return guarded([&] {
      const auto cfg = cli::load_config(study_path);
      cli::order_study(cfg, std::cout);
      std::cout << "wrote " << (cfg.output_dir / "orders.csv").string() << '\n';
    });
  }
  if (*problems_cmd) {
    for (const auto& entry : registered_problems()) {
      std::cout << fmt::format("{:14} {}D  {}\n", entry.id, entry.dimensions, entry.description);
    }
    return 0;
  }
  if (*methods_cmd) {
    for (MethodKind kind : all_methods()) {
      const auto mc = MethodConfig::defaults(kind);
      std::cout << fmt::format("{:6} order {}  default interp_order {}\n", method_name(kind),
                               nominal_order(kind), mc.order.value());
    }
    return 0;
  }
  return 0;
}
