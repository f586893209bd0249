#include "semilag/method.hpp"

#include <array>
#include <stdexcept>

#include <fmt/format.h>

namespace semilag {

namespace {

constexpr std::array kMethods{MethodKind::SLEM, MethodKind::MSLEM, MethodKind::SLRK3,
                              MethodKind::SLRK4};

} // namespace

int nominal_order(MethodKind kind) {
  switch (kind) {
  case MethodKind::SLEM: return 1;
  case MethodKind::MSLEM: return 2;
  case MethodKind::SLRK3: return 3;
  case MethodKind::SLRK4: return 4;
  }
  throw std::logic_error("nominal_order: unknown method");
}

std::string_view method_name(MethodKind kind) {
  switch (kind) {
  case MethodKind::SLEM: return "slem";
  case MethodKind::MSLEM: return "mslem";
  case MethodKind::SLRK3: return "slrk3";
  case MethodKind::SLRK4: return "slrk4";
  }
  throw std::logic_error("method_name: unknown method");
}

std::optional<MethodKind> parse_method(std::string_view name) {
  for (MethodKind kind : kMethods) {
    if (method_name(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

std::span<const MethodKind> all_methods() { return kMethods; }

std::string method_list() {
  std::string out;
  for (MethodKind kind : kMethods) {
    if (!out.empty()) {
      out += ", ";
    }
    out += method_name(kind);
  }
  return out;
}

MethodConfig MethodConfig::defaults(MethodKind kind) {
  return {kind, InterpOrder(nominal_order(kind)), kDefaultDepartureIterations};
}

void MethodConfig::validate() const {
  if (order.value() < nominal_order(kind)) {
    throw std::invalid_argument(fmt::format(
        "{} needs interpolation order >= {}, got {}", method_name(kind), nominal_order(kind),
        order.value()));
  }
  if (iterations < 1) {
    throw std::invalid_argument(
        fmt::format("departure iterations must be >= 1, got {}", iterations));
  }
}

} // namespace semilag
