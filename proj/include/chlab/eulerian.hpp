#pragma once

#include <string>
#include <vector>

#include "chlab/grid.hpp"
#include "chlab/measure.hpp"

namespace chlab {

/// Eulerian triple (u, rho = k + rho_bar, mu) on a uniform x-grid.
///
/// u is nodal and piecewise linear, rho_bar is per cell, and mu carries the
/// energy: its absolutely continuous density must equal u_x^2 + rho_bar^2 cell
/// by cell. mu shares the state grid.
struct EulerianState {
  UniformGrid grid;
  std::vector<double> u;
  std::vector<double> rho_bar;
  double k = 0.0;
  CumulativeMeasure mu;

  static EulerianState zero(UniformGrid grid);

  /// Slope of u in cell i.
  [[nodiscard]] double u_x(std::size_t i) const { return (u[i + 1] - u[i]) / grid.step; }
  /// Piecewise-linear u at x, zero outside the grid.
  [[nodiscard]] double u_at(double x) const;
  /// rho_bar at x (piecewise constant), zero outside the grid.
  [[nodiscard]] double rho_bar_at(double x) const;
};

struct Violation {
  std::string kind;
  std::size_t index = 0;
  double magnitude = 0.0;
};

struct EulerianTolerances {
  /// Allowed |density - (u_x^2 + rho_bar^2)| relative to (1 + density).
  double compatibility = 1e-10;
  /// |u| at the two boundary nodes.
  double decay = 1e-6;
  /// When false, cells whose density exceeds u_x^2 + rho_bar^2 are accepted:
  /// the excess is sub-cell singular energy (e.g. a kink inside a cell after a
  /// push-forward from a finer Lagrangian grid). Deficits are always rejected.
  bool strict_compatibility = false;
};

/// Empty iff every invariant of EulerianState holds.
std::vector<Violation> validate(const EulerianState& s, const EulerianTolerances& tol = {});

/// ||u||_{L2}^2 + ||u_x||_{L2}^2, exact for the piecewise-linear representation.
double h1_norm_squared(const EulerianState& s);
/// H1 norm of the difference of two nodal functions on the same grid.
double h1_distance(const UniformGrid& grid, const std::vector<double>& a, const std::vector<double>& b);

}  // namespace chlab
