#include "semilag/interp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace semilag {

namespace {

// Indices inside [0, M] are used as-is (node M is read from storage, not
// aliased to node 0); anything outside is reduced mod M.
int periodic_index(int i, int cells) {
  if (i >= 0 && i <= cells) {
    return i;
  }
  const int r = i % cells;
  return r < 0 ? r + cells : r;
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": non-finite evaluation coordinate");
  }
}

} // namespace

InterpOrder::InterpOrder(int p) : p_(p) {
  if (p < kMin || p > kMax) {
    throw std::invalid_argument("InterpOrder: order " + std::to_string(p) +
                                " not in [1, 4]");
  }
}

Stencil make_stencil(const Grid1D& grid, double wrapped_x, InterpOrder order) {
  const auto [cell, theta] = grid.locate(wrapped_x);
  const int p = order.value();

  int offset = 0; // cell - first
  switch (p) {
  case 1: offset = 0; break;
  case 2: offset = theta <= 0.5 ? 1 : 0; break;
  case 3: offset = 1; break;
  case 4: offset = theta <= 0.5 ? 2 : 1; break;
  }

  Stencil s{cell - offset, p + 1, {}};
  // Local coordinate of x measured in cells from the first stencil node.
  // Integer exactly at nodes, so the product below yields exact 0/1 weights.
  const double xi = theta + offset;
  for (int j = 0; j <= p; ++j) {
    double w = 1.0;
    for (int m = 0; m <= p; ++m) {
      if (m != j) {
        w *= (xi - m) / static_cast<double>(j - m);
      }
    }
    s.weights[j] = w;
  }
  return s;
}

void interp1d(const StateField& field, const Grid1D& grid, double x, InterpOrder order,
              std::span<double> out) {
  check_finite(x, "interp1d");
  if (out.size() != field.components()) {
    throw std::invalid_argument("interp1d: output size does not match component count");
  }
  const Stencil s = make_stencil(grid, grid.wrap(x), order);
  const int cells = grid.cells();
  std::array<int, InterpOrder::kMax + 1> idx{};
  for (int j = 0; j < s.width; ++j) {
    idx[j] = periodic_index(s.first + j, cells);
  }
  for (std::size_t c = 0; c < field.components(); ++c) {
    const auto values = field.component(c);
    double acc = 0.0;
    for (int j = 0; j < s.width; ++j) {
      acc += s.weights[j] * values[idx[j]];
    }
    out[c] = acc;
  }
}

std::vector<double> interp1d(const StateField& field, const Grid1D& grid, double x,
                             InterpOrder order) {
  std::vector<double> out(field.components());
  interp1d(field, grid, x, order, out);
  return out;
}

void interp2d(const StateField& field, const Grid2D& grid, double x, double y, InterpOrder order,
              std::span<double> out) {
  check_finite(x, "interp2d");
  check_finite(y, "interp2d");
  if (out.size() != field.components()) {
    throw std::invalid_argument("interp2d: output size does not match component count");
  }
  const Grid1D& gx = grid.x_axis();
  const Grid1D& gy = grid.y_axis();
  const Stencil sx = make_stencil(gx, gx.wrap(x), order);
  const Stencil sy = make_stencil(gy, gy.wrap(y), order);

  std::array<int, InterpOrder::kMax + 1> ix{};
  std::array<int, InterpOrder::kMax + 1> iy{};
  for (int j = 0; j < sx.width; ++j) {
    ix[j] = periodic_index(sx.first + j, gx.cells());
  }
  for (int j = 0; j < sy.width; ++j) {
    iy[j] = periodic_index(sy.first + j, gy.cells());
  }

  for (std::size_t c = 0; c < field.components(); ++c) {
    const auto values = field.component(c);
    double acc = 0.0;
    for (int q = 0; q < sy.width; ++q) {
      double row = 0.0;
      for (int j = 0; j < sx.width; ++j) {
        row += sx.weights[j] * values[grid.index(ix[j], iy[q])];
      }
      acc += sy.weights[q] * row;
    }
    out[c] = acc;
  }
}

std::vector<double> interp2d(const StateField& field, const Grid2D& grid, double x, double y,
                             InterpOrder order) {
  std::vector<double> out(field.components());
  interp2d(field, grid, x, y, order, out);
  return out;
}

} // namespace semilag
