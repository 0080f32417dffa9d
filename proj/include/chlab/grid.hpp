#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace chlab {

/// Thrown for precondition failures on states and configurations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform 1-D grid: nodes origin + i*step for i = 0..cells.
struct UniformGrid {
  double origin = 0.0;
  double step = 1.0;
  std::size_t cells = 0;

  [[nodiscard]] double node(std::size_t i) const { return origin + static_cast<double>(i) * step; }
  [[nodiscard]] double midpoint(std::size_t i) const { return origin + (static_cast<double>(i) + 0.5) * step; }
  [[nodiscard]] double end() const { return node(cells); }
  [[nodiscard]] std::size_t nodes() const { return cells + 1; }
  [[nodiscard]] double length() const { return static_cast<double>(cells) * step; }

  /// Index of the cell containing x, clamped to [0, cells-1].
  [[nodiscard]] std::size_t cell_of(double x) const {
    if (cells == 0) return 0;
    const double s = std::floor((x - origin) / step);
    if (s <= 0.0) return 0;
    const auto i = static_cast<std::size_t>(s);
    return i >= cells ? cells - 1 : i;
  }

  void check() const {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(origin) || cells == 0) {
      throw Error("grid must have positive finite step and at least one cell");
    }
  }

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

/// Same cell count and end nodes within 1e-9 cells.
inline bool same_grid(const UniformGrid& a, const UniformGrid& b) {
  const double tol = 1e-9 * std::max(a.step, b.step);
  return a.cells == b.cells && std::abs(a.origin - b.origin) <= tol && std::abs(a.end() - b.end()) <= tol;
}

}  // namespace chlab
