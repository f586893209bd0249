#include "semilag/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace semilag {

Grid1D::Grid1D(double a, double b, int cells) : a_(a), b_(b), cells_(cells), h_(0.0) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw std::invalid_argument("Grid1D: need finite endpoints with a < b");
  }
  if (cells <= 0) {
    throw std::invalid_argument("Grid1D: cell count must be positive, got " +
                                std::to_string(cells));
  }
  h_ = (b - a) / cells;
}

double Grid1D::node(int i) const {
  if (i < 0 || i > cells_) {
    throw std::out_of_range("Grid1D::node: index " + std::to_string(i) + " outside [0, " +
                            std::to_string(cells_) + "]");
  }
  if (i == cells_) {
    return b_;
  }
  return a_ + i * h_;
}

double Grid1D::wrap(double x) const {
  if (!std::isfinite(x)) {
    throw std::domain_error("Grid1D::wrap: non-finite coordinate");
  }
  if (x >= a_ && x < b_) {
    return x;
  }
  const double period = b_ - a_;
  double r = std::fmod(x - a_, period);
  if (r < 0.0) {
    r += period;
  }
  double wrapped = a_ + r;
  // fmod of a value a hair below a multiple of the period can round up to b.
  if (wrapped >= b_) {
    wrapped = a_;
  }
  return wrapped;
}

Grid1D::Location Grid1D::locate(double x) const {
  int i = static_cast<int>(std::floor((x - a_) / h_));
  if (i < 0) {
    i = 0;
  }
  if (i > cells_ - 1) {
    i = cells_ - 1;
  }
  // Correct the floor against the nodes as node() computes them, so that
  // x == node(i) always lands at theta == 0 exactly.
  if (i + 1 < cells_ && x >= node(i + 1)) {
    ++i;
  } else if (i > 0 && x < node(i)) {
    --i;
  }
  return {i, (x - node(i)) / h_};
}

Grid2D::Grid2D(double ax, double bx, int cells_x, double cy, double dy, int cells_y)
    : x_(ax, bx, cells_x), y_(cy, dy, cells_y) {}

TimeGrid::TimeGrid(double final_time, int steps)
    : final_time_(final_time), steps_(steps), tau_(0.0) {
  if (!std::isfinite(final_time) || final_time < 0.0) {
    throw std::invalid_argument("TimeGrid: final time must be finite and non-negative");
  }
  if (steps < 0) {
    throw std::invalid_argument("TimeGrid: step count must be non-negative");
  }
  if (steps == 0) {
    if (final_time != 0.0) {
      throw std::invalid_argument("TimeGrid: zero steps requires T = 0");
    }
    return;
  }
  if (final_time == 0.0) {
    throw std::invalid_argument("TimeGrid: T must be positive when N > 0");
  }
  tau_ = final_time / steps;
}

double TimeGrid::time(int k) const {
  if (k < 0 || k > steps_) {
    throw std::out_of_range("TimeGrid::time: level " + std::to_string(k) + " outside [0, " +
                            std::to_string(steps_) + "]");
  }
  if (k == steps_) {
    return final_time_;
  }
  return k * tau_;
}

} // namespace semilag
