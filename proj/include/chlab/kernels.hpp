#pragma once

#include <vector>

#include "chlab/lagrangian.hpp"
#include "chlab/mollify.hpp"

namespace chlab {

/// (1 - e^{-d}) / d, with the limit 1 at d = 0.
double expm1_ratio(double d);

/// M_m(d) = integral over [0,1] of t^m e^{-d t}, and N_m(d) = (1/(m+1) - M_m(d)) / d,
/// for m = 0, 1, 2. Series below d = 1, recurrences above.
struct ExpMoments {
  double M[3];
  double N[3];
};
ExpMoments exp_moments(double d);

/// Per-cell pieces of the exponential-kernel sums, exact for piecewise-linear
/// U and piecewise-constant h, r_bar. With w = 2 U^2 y_xi + 2 k r_bar + h and
/// d = y_{i+1} - y_i:
///   to_right = integral over the cell of e^{-(y_{i+1} - y)} w,
///   to_left  = integral over the cell of e^{-(y - y_i)} w,
///   self     = cell average of the integral over the cell of e^{-|y - y'|} w.
struct CellTerms {
  std::vector<double> to_right;
  std::vector<double> to_left;
  std::vector<double> self;
  std::vector<double> decay;
  std::vector<double> phi1;
};
CellTerms cell_terms(const LagrangianState& X, Execution exec = Execution::parallel);
/// Left and right one-sided kernel sums at the nodes,
/// A_j = int_{eta < xi_j} e^{-(y_j - y(eta))} w, B_j = int_{eta > xi_j} e^{-(y(eta) - y_j)} w,
/// by the forward and backward recursions. Only nonpositive exponents occur.
struct KernelSums {
  std::vector<double> A;
  std::vector<double> B;
};
KernelSums kernel_sums(const LagrangianState& X, const CellTerms& t);
/// Q at the nodes.
std::vector<double> compute_Q(const LagrangianState& X, Execution exec = Execution::parallel);
/// P at the cell midpoints.
std::vector<double> compute_P(const LagrangianState& X, Execution exec = Execution::parallel);
/// Cell averages of P.
std::vector<double> compute_P_average(const LagrangianState& X, Execution exec = Execution::parallel);

/// P and Q as used by the evolution: the solution of the discrete pair
///   Q_{i+1} - Q_i = -dxi (h_i/2 + k r_bar_i) - d_i (<U^2>_i + k^2/2 - Pbar_i),
///   Pbar_j - Pbar_{j-1} = integral of hat_j Q y_xi  (interior nodes j),
/// with the exterior decay relations as boundary conditions. The first
/// relation keeps y_xi h - U_xi^2 - r_bar^2 constant in every cell, the second
/// makes the exact-integration energy a conserved quantity. Both are
/// second-order approximations of the kernel values. Banded O(N) solve.
struct DiscretePQ {
  std::vector<double> Q;      // nodes
  std::vector<double> P_bar;  // cells
};

DiscretePQ discrete_PQ(const LagrangianState& X, Execution exec = Execution::parallel);

}  // namespace chlab
