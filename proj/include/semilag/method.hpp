#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "semilag/departure.hpp"
#include "semilag/interp.hpp"

namespace semilag {

/// The four one-step schemes, named after the ODE method they run along
/// characteristics: Euler, Heun (modified Euler), Kutta-3, classic RK4.
enum class MethodKind { SLEM, MSLEM, SLRK3, SLRK4 };

/// Nominal convergence order, which is also the minimum interpolation order.
int nominal_order(MethodKind kind);
std::string_view method_name(MethodKind kind);
std::optional<MethodKind> parse_method(std::string_view name);
std::span<const MethodKind> all_methods();
/// "slem, mslem, slrk3, slrk4"
std::string method_list();

struct MethodConfig {
  MethodKind kind;
  InterpOrder order;
  int iterations;

  /// Interpolation order equal to the method order, five departure passes.
  static MethodConfig defaults(MethodKind kind);

  /// Throws std::invalid_argument if the interpolation order is below the
  /// method order or iterations < 1.
  void validate() const;
};

} // namespace semilag
