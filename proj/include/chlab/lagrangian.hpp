#pragma once

#include <functional>
#include <span>
#include <vector>

#include "chlab/eulerian.hpp"
#include "chlab/grid.hpp"

namespace chlab {

/// Piecewise-linear interpolation of nodal values; x within 1e-10 cells of a
/// node returns that node's value exactly. Outside the grid the boundary value
/// is continued with the given slope.
double interpolate_nodal(const UniformGrid& grid, std::span<const double> v, double x, double outside_slope = 0.0);

/// Lagrangian tuple X = (y, U, h, r) with r = r_bar + k y_xi.
///
/// y and U are nodal and piecewise linear; h and r_bar are per cell. The
/// slopes y_xi, U_xi are always derived from nodal differences. Outside the
/// grid y continues with slope 1, and U, h, r_bar vanish.
struct LagrangianState {
  UniformGrid grid;
  std::vector<double> y;
  std::vector<double> U;
  std::vector<double> h;
  std::vector<double> r_bar;
  double k = 0.0;

  /// y = id, U = h = r_bar = 0.
  static LagrangianState identity(UniformGrid grid);

  [[nodiscard]] double y_xi(std::size_t i) const { return (y[i + 1] - y[i]) / grid.step; }
  [[nodiscard]] double U_xi(std::size_t i) const { return (U[i + 1] - U[i]) / grid.step; }
  /// y_xi h - U_xi^2 - r_bar^2 in cell i.
  [[nodiscard]] double constraint_residual(std::size_t i) const;
  /// Max over cells of |constraint_residual|.
  [[nodiscard]] double max_constraint_residual() const;
  /// Min over cells of y_xi.
  [[nodiscard]] double min_y_xi() const;

  /// H at the nodes, H(xi_0) = 0.
  [[nodiscard]] std::vector<double> H_nodes() const;
  [[nodiscard]] double y_at(double xi) const { return interpolate_nodal(grid, y, xi, 1.0); }
  [[nodiscard]] double U_at(double xi) const;
};

/// Element of the relabeling group, sampled at the nodes of a grid.
struct RelabelingFunction {
  UniformGrid grid;
  std::vector<double> g;

  static RelabelingFunction identity(UniformGrid grid);
  static RelabelingFunction sample(UniformGrid grid, const std::function<double(double)>& f);

  [[nodiscard]] double g_xi(std::size_t i) const { return (g[i + 1] - g[i]) / grid.step; }
  /// Nodal values of the inverse, computed by per-cell linear inversion.
  [[nodiscard]] RelabelingFunction inverse() const;
  [[nodiscard]] bool strictly_increasing() const;
};

struct LagrangianTolerances {
  /// |y_xi h - U_xi^2 - r_bar^2| <= constraint * (1 + y_xi h + U_xi^2 + r_bar^2).
  double constraint = 1e-10;
  double decay = 1e-6;
  /// Slack for the sign conditions y_xi >= 0, h >= 0.
  double sign = 1e-12;
};

/// Empty iff X is a valid element of F; one entry (the worst cell) per class.
std::vector<Violation> validate_F(const LagrangianState& X, const LagrangianTolerances& tol = {});

/// y + H = id at every node, to 1e-10 (1 + |xi|).
bool in_F0(const LagrangianState& X);

/// X o g on the same grid: y, U interpolated at g(xi_j); h, r_bar remapped
/// conservatively through g. k is unchanged. Throws if g is not increasing.
LagrangianState compose(const LagrangianState& X, const RelabelingFunction& g);

/// Canonical representative X o (y + H)^{-1}.
LagrangianState gamma(const LagrangianState& X);

/// The relabeling y + H of X.
RelabelingFunction relabeling_of(const LagrangianState& X);

/// ||X1 - X2||_E = ||zeta||_inf + ||zeta_xi||_L2 + ||U||_H1 + ||h||_L2 + ||r_bar||_L2 + |k|.
double e_norm_distance(const LagrangianState& a, const LagrangianState& b);

/// Sigma(X) = integral of (U^2 y_xi + h), exact for the piecewise representation.
double energy_sigma(const LagrangianState& X);

/// ||g - id||_{W1,inf} + ||g^{-1} - id||_{W1,inf} from the nodal data.
double kappa_of(const RelabelingFunction& g);

}  // namespace chlab
