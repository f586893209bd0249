#pragma once

#include <array>
#include <span>
#include <vector>

#include "semilag/field.hpp"
#include "semilag/grid.hpp"

namespace semilag {

/// Polynomial order of the piecewise Lagrange interpolant, 1 through 4.
class InterpOrder {
public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 4;

  /// Throws std::invalid_argument outside [1, 4].
  explicit InterpOrder(int p);

  int value() const { return p_; }
  int stencil_width() const { return p_ + 1; }

  friend bool operator==(InterpOrder, InterpOrder) = default;

private:
  int p_;
};

/// Stencil for one evaluation point: first node (may be negative or beyond M,
/// to be reduced mod M) and the Lagrange weights of the p+1 nodes.
struct Stencil {
  int first;
  int width;
  std::array<double, InterpOrder::kMax + 1> weights;
};

/// Picks the p+1 consecutive nodes most nearly centred on the cell holding x
/// and evaluates the Lagrange basis there. x must already be wrapped.
///
/// Ties (theta == 0.5 for even p) go to the left.
Stencil make_stencil(const Grid1D& grid, double wrapped_x, InterpOrder order);

/// Componentwise interpolant of `field` at x (wrapped internally).
/// `out` must have field.components() entries.
void interp1d(const StateField& field, const Grid1D& grid, double x, InterpOrder order,
              std::span<double> out);
std::vector<double> interp1d(const StateField& field, const Grid1D& grid, double x,
                             InterpOrder order);

/// Tensor-product interpolant on a (p+1) x (p+1) stencil.
void interp2d(const StateField& field, const Grid2D& grid, double x, double y, InterpOrder order,
              std::span<double> out);
std::vector<double> interp2d(const StateField& field, const Grid2D& grid, double x, double y,
                             InterpOrder order);

} // namespace semilag
