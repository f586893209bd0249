#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "semilag/problem.hpp"

namespace semilag {

/// Coupled pair on [0, 1] advected with speed u + v:
///   u_t + (u + v) u_x = 2 pi (v^2 + u v - v)
///   v_t + (u + v) v_x = 2 pi (u - u^2 - u v)
/// Exact solution u = sin 2 pi (x - t), v = cos 2 pi (x - t); period 1 in t.
ProblemSpec benchmark_1d_coupled();

/// Nonlinear 2D advection on the unit square with
///   f = u + 2 pi e^t (u cos 2 pi x sin 2 pi y + v sin 2 pi x cos 2 pi y)
///   g = v - 2 pi e^t (u sin 2 pi x cos 2 pi y + v cos 2 pi x sin 2 pi y)
/// Exact solution u = e^t sin 2 pi x sin 2 pi y, v = e^t cos 2 pi x cos 2 pi y.
ProblemSpec2D benchmark_2d();

/// Constant speed c, f = 0, y0 = sin 2 pi x; exact y0(x - c t).
ProblemSpec synthetic_case1(double c);

/// Speed sin(2 pi x) + 2 depending on x only, f = 0, y0 = sin 2 pi x.
/// No closed-form solution is attached.
ProblemSpec synthetic_case2();

using AnyProblem = std::variant<ProblemSpec, ProblemSpec2D>;

struct RegistryEntry {
  std::string_view id;
  std::string_view description;
  int dimensions;
};

std::span<const RegistryEntry> registered_problems();
std::optional<AnyProblem> make_problem(std::string_view id);

} // namespace semilag
