#include "semilag/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace semilag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array kRegistry{
    RegistryEntry{"coupled1d", "coupled sin/cos pair advected with speed u + v on [0,1]", 1},
    RegistryEntry{"advection2d", "nonlinear 2D advection with e^t growth on [0,1]^2", 2},
    RegistryEntry{"translation", "single field translated at constant speed 1 on [0,1]", 1},
    RegistryEntry{"variable-speed", "single field advected with speed sin(2 pi x) + 2", 1},
};

} // namespace

ProblemSpec benchmark_1d_coupled() {
  ProblemSpec p;
  p.name = "coupled1d";
  p.component_names = {"u", "v"};
  p.a = 0.0;
  p.b = 1.0;
  p.omega = OmegaSpec::txy([](double, double, std::span<const double> y) { return y[0] + y[1]; });
  p.rhs = [](double, double, std::span<const double> y, std::span<double> out) {
    const double u = y[0];
    const double v = y[1];
    out[0] = kTwoPi * (v * v + u * v - v);
    out[1] = kTwoPi * (u - u * u - u * v);
  };
  p.initial = [](double x, std::span<double> y) {
    y[0] = std::sin(kTwoPi * x);
    y[1] = std::cos(kTwoPi * x);
  };
  p.exact = [](double t, double x, std::span<double> y) {
    y[0] = std::sin(kTwoPi * (x - t));
    y[1] = std::cos(kTwoPi * (x - t));
  };
  return p;
}

ProblemSpec2D benchmark_2d() {
  ProblemSpec2D p;
  p.name = "advection2d";
  p.rhs = [](double t, double x, double y, std::span<const double> uv, std::span<double> out) {
    const double u = uv[0];
    const double v = uv[1];
    const double sx = std::sin(kTwoPi * x);
    const double cx = std::cos(kTwoPi * x);
    const double sy = std::sin(kTwoPi * y);
    const double cy = std::cos(kTwoPi * y);
    const double growth = kTwoPi * std::exp(t);
    out[0] = u + growth * (u * cx * sy + v * sx * cy);
    out[1] = v - growth * (u * sx * cy + v * cx * sy);
  };
  p.initial = [](double x, double y, std::span<double> uv) {
    uv[0] = std::sin(kTwoPi * x) * std::sin(kTwoPi * y);
    uv[1] = std::cos(kTwoPi * x) * std::cos(kTwoPi * y);
  };
  p.exact = [](double t, double x, double y, std::span<double> uv) {
    const double e = std::exp(t);
    uv[0] = e * std::sin(kTwoPi * x) * std::sin(kTwoPi * y);
    uv[1] = e * std::cos(kTwoPi * x) * std::cos(kTwoPi * y);
  };
  return p;
}

ProblemSpec synthetic_case1(double c) {
  ProblemSpec p;
  p.name = "translation";
  p.component_names = {"y"};
  p.omega = OmegaSpec::constant(c);
  p.rhs = [](double, double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
  p.initial = [](double x, std::span<double> y) { y[0] = std::sin(kTwoPi * x); };
  p.exact = [c](double t, double x, std::span<double> y) { y[0] = std::sin(kTwoPi * (x - c * t)); };
  return p;
}

ProblemSpec synthetic_case2() {
  ProblemSpec p;
  p.name = "variable-speed";
  p.component_names = {"y"};
  p.omega = OmegaSpec::tx([](double, double x) { return std::sin(kTwoPi * x) + 2.0; });
  p.rhs = [](double, double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
  p.initial = [](double x, std::span<double> y) { y[0] = std::sin(kTwoPi * x); };
  return p;
}

std::span<const RegistryEntry> registered_problems() { return kRegistry; }

std::optional<AnyProblem> make_problem(std::string_view id) {
  if (id == "coupled1d") {
    return benchmark_1d_coupled();
  }
  if (id == "advection2d") {
    return benchmark_2d();
  }
  if (id == "translation") {
    return synthetic_case1(1.0);
  }
  if (id == "variable-speed") {
    return synthetic_case2();
  }
  return std::nullopt;
}

} // namespace semilag
