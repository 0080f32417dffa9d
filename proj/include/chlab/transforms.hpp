#pragma once

#include <cstddef>
#include <optional>

#include "chlab/eulerian.hpp"
#include "chlab/lagrangian.hpp"

namespace chlab {

struct LiftOptions {
  /// Number of xi cells. When unset the cell count is the smallest that
  /// makes the step at most dx / 2^p, with the smallest p such that 2^p >= 4
  /// and every atom plateau holds at least 4 cells. An explicit value must
  /// still give every plateau 4 cells.
  std::optional<std::size_t> cells;
};

/// L: Eulerian state to the canonical Lagrangian state (y + H = id).
///
/// y is the exact generalized inverse of x + F at the nodes, h = 1 - y_xi,
/// U = u o y. r_bar takes the sign of the cell average of rho_bar o y y_xi and
/// the magnitude that makes y_xi h = U_xi^2 + r_bar^2 hold in every cell.
LagrangianState lift(const EulerianState& s, const LiftOptions& opt = {});

/// xi grid lift() would use for s.
UniformGrid lift_grid(const EulerianState& s, const LiftOptions& opt = {});

struct ProjectOptions {
  /// Throw unless the input lies in F0.
  bool require_F0 = true;
  /// Apply gamma first instead of throwing when the input is not in F0.
  bool auto_canonical = false;
  /// Target x grid; default spans [y_0, y_N] with `cells` (or N) cells.
  std::optional<UniformGrid> grid;
  std::optional<std::size_t> cells;
  /// Largest |U_xi| accepted on a cell where y is flat.
  double plateau_tolerance = 1e-8;
};

/// M: Lagrangian state to Eulerian state by push-forward under y.
EulerianState project(const LagrangianState& X, const ProjectOptions& opt = {});

}  // namespace chlab
