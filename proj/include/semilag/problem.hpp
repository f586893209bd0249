#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semilag {

/// Advection speed for the 1D system. One of three cases:
/// a constant, a function of (t, x), or a function of (t, x, y).
class OmegaSpec {
public:
  enum class Case { Constant, TX, TXY };

  using TxFn = std::function<double(double t, double x)>;
  using TxyFn = std::function<double(double t, double x, std::span<const double> y)>;

  static OmegaSpec constant(double c);
  static OmegaSpec tx(TxFn fn);
  static OmegaSpec txy(TxyFn fn);

  Case kind() const { return case_; }
  double constant_value() const { return constant_; }

  /// Evaluates the speed; `y` is ignored unless the case is TXY.
  /// Throws std::domain_error on a non-finite result.
  double operator()(double t, double x, std::span<const double> y) const;

private:
  Case case_ = Case::Constant;
  double constant_ = 0.0;
  TxFn tx_;
  TxyFn txy_;
};

/// Right-hand side f(t, x, y) written into `dydt` (same length as y).
using Rhs1D =
    std::function<void(double t, double x, std::span<const double> y, std::span<double> dydt)>;
/// Initial condition y0(x).
using Initial1D = std::function<void(double x, std::span<double> y)>;
/// Exact solution y(t, x).
using Exact1D = std::function<void(double t, double x, std::span<double> y)>;

/// y_t + omega * y_x = f(t, x, y) on the periodic interval [a, b].
struct ProblemSpec {
  std::string name;
  std::vector<std::string> component_names;
  double a = 0.0;
  double b = 1.0;
  OmegaSpec omega;
  Rhs1D rhs;
  Initial1D initial;
  std::optional<Exact1D> exact;

  std::size_t components() const { return component_names.size(); }
};

/// (f, g)(t, x, y, u, v) written into `out`; uv = (u, v).
using Rhs2D = std::function<void(double t, double x, double y, std::span<const double> uv,
                                 std::span<double> out)>;
using Initial2D = std::function<void(double x, double y, std::span<double> uv)>;
using Exact2D = std::function<void(double t, double x, double y, std::span<double> uv)>;

/// u_t + u u_x + v u_y = f,  v_t + u v_x + v v_y = g on a periodic rectangle.
struct ProblemSpec2D {
  std::string name;
  double ax = 0.0;
  double bx = 1.0;
  double cy = 0.0;
  double dy = 1.0;
  Rhs2D rhs;
  Initial2D initial;
  std::optional<Exact2D> exact;

  static constexpr std::size_t components() { return 2; }
};

} // namespace semilag
