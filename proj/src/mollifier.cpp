#include "chlab/mollifier.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab::mollifier {
namespace {

double bump(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss8(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) s += kGaussWeights[k] * f(mid + half * kGaussNodes[k]);
  return s * half;
}

// Cubic Hermite tables for Phi and Psi on [-1,1]; derivatives are phi and x*phi.
struct Tables {
  static constexpr std::size_t kIntervals = 4096;
  double h = 2.0 / kIntervals;
  double c = 0.0;
  std::vector<double> Phi;
  std::vector<double> Psi;

  Tables() : Phi(kIntervals + 1), Psi(kIntervals + 1) {
    std::vector<double> raw0(kIntervals + 1, 0.0), raw1(kIntervals + 1, 0.0);
    for (std::size_t i = 0; i < kIntervals; ++i) {
      const double a = -1.0 + static_cast<double>(i) * h;
      const double b = a + h;
      raw0[i + 1] = raw0[i] + gauss8(bump, a, b);
      raw1[i + 1] = raw1[i] + gauss8([](double t) { return t * bump(t); }, a, b);
    }
    c = 1.0 / raw0[kIntervals];
    for (std::size_t i = 0; i <= kIntervals; ++i) {
      Phi[i] = c * raw0[i];
      Psi[i] = c * raw1[i];
    }
    // Symmetry pins: Phi(0) = 1/2 and Psi(+-1) = 0 up to rounding of the sums.
    Phi[kIntervals] = 1.0;
    Psi[kIntervals] = 0.0;
  }

  template <class D>
  double hermite(const std::vector<double>& v, D&& deriv, double x) const {
    double s = (x + 1.0) / h;
    auto i = static_cast<std::size_t>(s);
    if (i >= kIntervals) i = kIntervals - 1;
    const double x0 = -1.0 + static_cast<double>(i) * h;
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * v[i] + h10 * h * deriv(x0) + h01 * v[i + 1] + h11 * h * deriv(x0 + h);
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

double normalization() { return tables().c; }

double phi(double x) { return tables().c * bump(x); }

double phi_prime(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const double d = 1.0 - x * x;
  return phi(x) * (-2.0 * x / (d * d));
}

double Phi(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return tables().hermite(tables().Phi, phi, x);
}

double Psi(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return tables().hermite(tables().Psi, [](double t) { return t * phi(t); }, x);
}

double Phi_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("Phi_inverse: argument must lie in (0,1)");
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (Phi(mid) < p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  // Newton polish; phi > 0 strictly inside the support.
  for (int it = 0; it < 3; ++it) {
    const double d = phi(x);
    if (d <= 0.0) break;
    const double nx = x - (Phi(x) - p) / d;
    if (nx <= lo || nx >= hi) break;
    x = nx;
  }
  return x;
}

}  // namespace chlab::mollifier
