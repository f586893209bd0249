#include "semilag/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace semilag {

NodeValues::NodeValues(std::size_t n) : size_(n) {
  if (n > kMaxComponents) {
    throw std::invalid_argument("NodeValues: " + std::to_string(n) +
                                " components exceeds the supported maximum of " +
                                std::to_string(kMaxComponents));
  }
}

NodeValues NodeValues::plus(double s, const NodeValues& v) const {
  NodeValues out(size_);
  for (std::size_t c = 0; c < size_; ++c) {
    out.data_[c] = data_[c] + s * v.data_[c];
  }
  return out;
}

StateField::StateField(std::size_t components, std::size_t node_count, double fill)
    : components_(components), node_count_(node_count),
      values_(components * node_count, fill) {
  if (components == 0 || components > kMaxComponents) {
    throw std::invalid_argument("StateField: component count must be in [1, " +
                                std::to_string(kMaxComponents) + "]");
  }
  if (node_count < 2) {
    throw std::invalid_argument("StateField: need at least two nodes");
  }
}

std::span<double> StateField::component(std::size_t c) {
  if (c >= components_) {
    throw std::out_of_range("StateField: component " + std::to_string(c) + " out of range");
  }
  return std::span<double>(values_).subspan(c * node_count_, node_count_);
}

std::span<const double> StateField::component(std::size_t c) const {
  if (c >= components_) {
    throw std::out_of_range("StateField: component " + std::to_string(c) + " out of range");
  }
  return std::span<const double>(values_).subspan(c * node_count_, node_count_);
}

bool StateField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

} // namespace semilag
