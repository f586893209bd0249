#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace semilag {

/// Numerical failure during a step. Carries the time-step index once the
/// driver has attached it.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what, std::optional<int> step = std::nullopt)
      : std::runtime_error(what), step_(step) {}

  std::optional<int> step() const { return step_; }

private:
  std::optional<int> step_;
};

/// The departure-point fixed point left the admissible band or blew up.
class DivergenceError : public SolverError {
public:
  DivergenceError(const std::string& what, std::size_t node,
                  std::optional<int> step = std::nullopt)
      : SolverError(what, step), node_(node) {}

  std::size_t node() const { return node_; }

private:
  std::size_t node_;
};

} // namespace semilag
