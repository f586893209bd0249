#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace semilag {

/// Upper bound on the number of coupled components in one system.
inline constexpr std::size_t kMaxComponents = 8;

/// Fixed-capacity value vector for one node (y, k1, y_D, ...).
/// Lives on the stack so the per-node inner loops never allocate.
class NodeValues {
public:
  explicit NodeValues(std::size_t n = 0);

  std::size_t size() const { return size_; }
  double& operator[](std::size_t c) { return data_[c]; }
  double operator[](std::size_t c) const { return data_[c]; }
  std::span<double> span() { return {data_.data(), size_}; }
  std::span<const double> span() const { return {data_.data(), size_}; }

  /// this + s * v
  NodeValues plus(double s, const NodeValues& v) const;

private:
  std::array<double, kMaxComponents> data_{};
  std::size_t size_;
};

/// Nodal values of every component at one time level.
///
/// Storage is component-major: component c occupies
/// [c * node_count, (c + 1) * node_count).
class StateField {
public:
  StateField() = default;
  StateField(std::size_t components, std::size_t node_count, double fill = 0.0);

  std::size_t components() const { return components_; }
  std::size_t node_count() const { return node_count_; }

  std::span<double> component(std::size_t c);
  std::span<const double> component(std::size_t c) const;

  double& at(std::size_t c, std::size_t node) { return values_[c * node_count_ + node]; }
  double at(std::size_t c, std::size_t node) const { return values_[c * node_count_ + node]; }

  /// All values in storage order.
  std::span<const double> values() const { return values_; }

  bool all_finite() const;

  friend bool operator==(const StateField&, const StateField&) = default;

private:
  std::size_t components_ = 0;
  std::size_t node_count_ = 0;
  std::vector<double> values_;
};

} // namespace semilag
