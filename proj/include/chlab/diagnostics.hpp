#pragma once

#include <utility>
#include <vector>

#include "chlab/eulerian.hpp"
#include "chlab/lagrangian.hpp"

namespace chlab {

/// Test functions for the weak pairings: psi(x) = phi((x - c) / w) for every
/// center c and width w, phi the mollifier bump.
struct BumpFamily {
  std::vector<double> centers{-1.5, -0.5, 0.5, 1.5};
  std::vector<double> widths{0.25, 0.5, 1.0, 2.0};
};

struct ConvergenceReport {
  double u_l2_err = 0.0;
  double u_linf_err = 0.0;
  double weak_ux_err = 0.0;
  double weak_rhobar_err = 0.0;
  double k_err = 0.0;
  /// Defect in the integral of u_x^2 / (1 + u_x^2 + rho_bar^2).
  double grad_ratio_err = 0.0;
  /// Defect in the integral of rho_bar^2 / (1 + u_x^2 + rho_bar^2).
  double rho_ratio_err = 0.0;
  std::vector<std::pair<double, double>> F_pointwise_errs;
  double F_total_err = 0.0;

  /// Largest entry of F_pointwise_errs (0 when empty).
  [[nodiscard]] double F_pointwise_max() const;
};

/// Midpoints between consecutive atoms of either state plus the quartiles of
/// the reference grid, minus any point carrying an atom of cand.
std::vector<double> default_probes(const EulerianState& ref, const EulerianState& cand);

/// Distances between two Eulerian states on possibly different grids. Strong
/// norms and pairings are exact for the piecewise representations. Throws if a
/// probe sits on an atom of s2.
ConvergenceReport compare_eulerian(const EulerianState& s1, const EulerianState& s2, const std::vector<double>& probes,
                                   const BumpFamily& family = {});

/// E-norm distance of two states on one grid.
double compare_lagrangian(const LagrangianState& a, const LagrangianState& b);

/// Integral of (u^2 + u_x^2 + rho_bar^2) dx plus the singular part of mu,
/// i.e. ||u||_{L2}^2 + mu(R).
double total_energy(const EulerianState& s);

}  // namespace chlab
