#pragma once

#include <vector>

#include "chlab/eulerian.hpp"

namespace chlab::reference {

/// u = 0, rho = 0, mu = alpha delta_0: the state reached at the collision of a
/// symmetric peakon-antipeakon pair.
EulerianState peakon_antipeakon_breaking(double alpha, const UniformGrid& grid);

/// u = c e^{-|x|} sampled at the nodes, rho = 0, mu = u_x^2 dx per cell.
EulerianState single_peakon(double c, const UniformGrid& grid);

/// u = c (e^{-|x+a|} - e^{-|x-a|}): a peakon at -a and an antipeakon at a
/// moving towards each other; rho = 0, mu = u_x^2 dx.
EulerianState peakon_antipeakon(double c, double a, const UniformGrid& grid);

/// Closed-form y of the lifted breaking state: xi, 0 on [0, alpha], xi - alpha.
double breaking_y(double alpha, double xi);

struct LimitSample {
  int n = 0;
  /// n (hat y_n(xi) - y(xi)) with hat y_n the inverse of x + hat F_n.
  double scaled_gap_hat = 0.0;
  /// n (y_n(xi) - y(xi)) with y_n from lift(mollify(., n)).
  double scaled_gap_lift = 0.0;
};

/// Scaled gaps at xi for the mollified breaking state; their limit is
/// Phi^{-1}(xi / alpha). Throws unless 0 < xi < alpha.
std::vector<LimitSample> mollifier_limit_check(double alpha, double xi, const std::vector<int>& n_list);

}  // namespace chlab::reference
