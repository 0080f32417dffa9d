#pragma once

// Friedrichs bump phi(x) = c exp(-1/(1-x^2)) on (-1,1) and its primitives.

namespace chlab::mollifier {

/// Normalization constant c such that phi integrates to one.
double normalization();

double phi(double x);
/// Derivative of phi.
double phi_prime(double x);
/// Phi(x) = integral of phi over (-inf, x].
double Phi(double x);
/// First moment Psi(x) = integral of t*phi(t) over (-inf, x]; Psi(+-inf) = 0.
double Psi(double x);
/// Inverse of Phi on (0,1). Throws chlab::Error outside.
double Phi_inverse(double p);

/// Integral of Phi over (-inf, x]: x*Phi(x) - Psi(x).
inline double Phi_primitive(double x) { return x * Phi(x) - Psi(x); }

}  // namespace chlab::mollifier
