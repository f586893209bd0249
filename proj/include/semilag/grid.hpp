#pragma once

#include <cstddef>

namespace semilag {

/// Uniform periodic grid on [a, b] with M cells and M+1 nodes.
///
/// Node M is the periodic image of node 0. Coordinates outside [a, b) are
/// mapped back with wrap() before any stencil lookup.
class Grid1D {
public:
  Grid1D(double a, double b, int cells);

  double a() const { return a_; }
  double b() const { return b_; }
  int cells() const { return cells_; }
  double spacing() const { return h_; }
  double length() const { return b_ - a_; }
  std::size_t node_count() const { return static_cast<std::size_t>(cells_) + 1; }

  /// a + i*h; throws std::out_of_range unless 0 <= i <= M.
  double node(int i) const;

  /// Maps x into [a, b) modulo (b - a). Values already in range are returned
  /// unchanged so nodal coordinates stay bit-exact.
  double wrap(double x) const;

  struct Location {
    int cell;     // node(cell) <= x < node(cell + 1)
    double theta; // (x - node(cell)) / h, in [0, 1)
  };

  /// Cell containing an already-wrapped coordinate.
  Location locate(double x) const;

private:
  double a_;
  double b_;
  int cells_;
  double h_;
};

/// Tensor product of two periodic axes. Nodes are stored x-fastest:
/// flat index = j * (Mx + 1) + i.
class Grid2D {
public:
  Grid2D(double ax, double bx, int cells_x, double cy, double dy, int cells_y);
  Grid2D(Grid1D x_axis, Grid1D y_axis) : x_(x_axis), y_(y_axis) {}

  const Grid1D& x_axis() const { return x_; }
  const Grid1D& y_axis() const { return y_; }
  std::size_t node_count() const { return x_.node_count() * y_.node_count(); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * x_.node_count() + static_cast<std::size_t>(i);
  }

private:
  Grid1D x_;
  Grid1D y_;
};

/// Uniform time levels t_k = k * tau, tau = T / N.
///
/// N = 0 is accepted only together with T = 0 (a run with no steps).
class TimeGrid {
public:
  TimeGrid(double final_time, int steps);

  double final_time() const { return final_time_; }
  int steps() const { return steps_; }
  double step_size() const { return tau_; }
  double time(int k) const;

private:
  double final_time_;
  int steps_;
  double tau_;
};

} // namespace semilag
