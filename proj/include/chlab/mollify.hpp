#pragma once

#include "chlab/eulerian.hpp"

namespace chlab {

enum class Execution { serial, parallel };

/// Pointwise smoothing of CH data (u, 0, mu) at scale 1/n.
///
/// The convolutions with n*phi(n .) are evaluated in closed form against the
/// piecewise-linear u, the piecewise-constant density and the atoms, using the
/// tabulated primitives Phi and Psi of the bump.
class Mollification {
 public:
  Mollification(const EulerianState& s, int n);

  [[nodiscard]] int n() const { return n_; }
  /// (phi_n * u)(x).
  [[nodiscard]] double u_n(double x) const;
  /// (phi_n * u)_x(x) = (phi_n * u_x)(x).
  [[nodiscard]] double u_n_x(double x) const;
  /// hat mu_n(x) = integral of n phi(n(x-y)) d mu(y).
  [[nodiscard]] double mu_hat(double x) const;
  /// hat F_n(x) = hat mu_n((-inf, x]).
  [[nodiscard]] double F_hat(double x) const;
  /// hat rho_n^2 = hat mu_n - u_{n,x}^2 (nonnegative up to rounding).
  [[nodiscard]] double rho_hat_squared(double x) const { return mu_hat(x) - u_n_x(x) * u_n_x(x); }
  /// rho_n(x) = sqrt(1/n^2 + hat rho_n^2(x)).
  [[nodiscard]] double rho_n(double x) const;

  /// Grid of the mollified state: input grid refined so that dx <= 1/(8n),
  /// padded by the mollifier radius on both sides.
  [[nodiscard]] UniformGrid output_grid() const;

  /// Assembles (u_n, rho_n = 1/n + rho_bar_n, mu_n) on output_grid(). Cell values
  /// use exact cell averages of hat mu_n, so mu_n = u_{n,x}^2 + rho_bar_n^2 holds
  /// per cell and rho_n >= 1/n.
  [[nodiscard]] EulerianState assemble(Execution exec = Execution::parallel) const;

 private:
  EulerianState s_;
  int n_;
};

/// mollify(s, n) = Mollification(s, n).assemble(). Requires k = 0, rho_bar = 0
/// and a valid input.
EulerianState mollify(const EulerianState& s, int n, Execution exec = Execution::parallel);

}  // namespace chlab
