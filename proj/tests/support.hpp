#pragma once
// Independent numerical oracles and random state generators for the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "chlab/eulerian.hpp"
#include "chlab/lagrangian.hpp"

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

/// Root of an increasing function by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double target) {
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = 0.5 * (1.0 - z);
      w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
  }
  double operator()(const std::function<double(double)>& f, double a, double b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(a + (b - a) * x[i]);
    return s * (b - a);
  }
};

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

struct EulerianShape {
  std::size_t cells = 512;
  double half_width = 10.0;
  int max_atoms = 3;
  double min_atom_mass = 0.1;
  bool with_density = true;
};

/// Smooth u and rho_bar from Gaussian bumps plus 0..max_atoms atoms, with the
/// compatible ac density. Bumps decay below 1e-12 at the boundary.
inline chlab::EulerianState random_eulerian(Rng& rng, const EulerianShape& shape = {}) {
  const double L = shape.half_width;
  chlab::UniformGrid grid{-L, 2.0 * L / static_cast<double>(shape.cells), shape.cells};
  auto bumps = [&] {
    std::vector<std::array<double, 3>> b(3);
    for (auto& v : b) v = {uniform(rng, -1.0, 1.0), uniform(rng, -3.0, 3.0), uniform(rng, 0.5, 1.2)};
    return b;
  };
  auto eval = [](const std::vector<std::array<double, 3>>& b, double x) {
    double s = 0.0;
    for (const auto& v : b) s += v[0] * std::exp(-(x - v[1]) * (x - v[1]) / (v[2] * v[2]));
    return s;
  };
  const auto ub = bumps();
  const auto rb = bumps();
  chlab::EulerianState s;
  s.grid = grid;
  s.u.resize(grid.nodes());
  for (std::size_t i = 0; i < grid.nodes(); ++i) s.u[i] = eval(ub, grid.node(i));
  s.rho_bar.assign(grid.cells, 0.0);
  std::vector<double> density(grid.cells);
  for (std::size_t i = 0; i < grid.cells; ++i) {
    if (shape.with_density) s.rho_bar[i] = eval(rb, grid.midpoint(i));
    density[i] = s.u_x(i) * s.u_x(i) + s.rho_bar[i] * s.rho_bar[i];
  }
  s.k = shape.with_density ? uniform(rng, -0.5, 0.5) : 0.0;
  std::vector<chlab::Atom> atoms;
  const int count = std::uniform_int_distribution<int>(0, shape.max_atoms)(rng);
  for (int a = 0; a < count; ++a) atoms.push_back({uniform(rng, -4.0, 4.0), uniform(rng, shape.min_atom_mass, 1.5)});
  std::sort(atoms.begin(), atoms.end(), [](const auto& p, const auto& q) { return p.position < q.position; });
  s.mu = chlab::CumulativeMeasure(atoms, grid, density);
  return s;
}

/// Lagrangian state in F0 that is linear on blocks of four cells with y_xi in
/// {0, 1/4, 1/2, 3/4, 1}; y maps block nodes to multiples of the cell size, so
/// it is represented exactly by an Eulerian state on the matching x grid.
/// U returns to zero by mirroring the first half of the blocks.
inline chlab::LagrangianState random_block_state(Rng& rng, std::size_t half_blocks, double dxi) {
  const std::size_t pad = 2;
  std::vector<double> slope, vel;
  for (std::size_t b = 0; b < half_blocks; ++b) {
    const double s = 0.25 * std::uniform_int_distribution<int>(0, 4)(rng);
    slope.push_back(s);
    vel.push_back(uniform(rng, -1.0, 1.0) * std::sqrt(s * (1.0 - s)));
  }
  std::vector<double> S(pad, 1.0), V(pad, 0.0);
  S.insert(S.end(), slope.begin(), slope.end());
  V.insert(V.end(), vel.begin(), vel.end());
  for (std::size_t b = half_blocks; b-- > 0;) {
    S.push_back(slope[b]);
    V.push_back(-vel[b]);
  }
  for (std::size_t b = 0; b < pad; ++b) {
    S.push_back(1.0);
    V.push_back(0.0);
  }
  const std::size_t blocks = S.size();
  chlab::UniformGrid grid{-dxi * static_cast<double>(2 * blocks), dxi, 4 * blocks};
  auto X = chlab::LagrangianState::identity(grid);
  X.k = uniform(rng, -0.5, 0.5);
  for (std::size_t b = 0; b < blocks; ++b) {
    const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const double rb = sign * std::sqrt(std::max(0.0, S[b] * (1.0 - S[b]) - V[b] * V[b]));
    for (std::size_t c = 0; c < 4; ++c) {
      const std::size_t i = 4 * b + c;
      X.y[i + 1] = X.y[i] + S[b] * dxi;
      X.U[i + 1] = X.U[i] + V[b] * dxi;
      X.h[i] = 1.0 - S[b];
      X.r_bar[i] = rb;
    }
  }
  X.U.back() = 0.0;
  return X;
}

/// Relabeling that fixes every fourth node and moves the others randomly
/// inside their block.
inline chlab::RelabelingFunction random_block_relabeling(Rng& rng, const chlab::UniformGrid& grid) {
  auto g = chlab::RelabelingFunction::identity(grid);
  for (std::size_t b = 0; 4 * b < grid.cells; ++b) {
    std::vector<double> t{uniform(rng, 0.05, 0.95), uniform(rng, 0.05, 0.95), uniform(rng, 0.05, 0.95)};
    std::sort(t.begin(), t.end());
    t[1] = std::max(t[1], t[0] + 0.02);
    t[2] = std::max(t[2], t[1] + 0.02);
    for (std::size_t c = 1; c < 4; ++c) g.g[4 * b + c] = grid.node(4 * b) + 4.0 * grid.step * std::min(t[c - 1], 0.99);
  }
  return g;
}

/// Arbitrary (not necessarily compatible) Lagrangian data with increasing y
/// for the kernel tests.
inline chlab::LagrangianState random_kernel_input(Rng& rng, std::size_t cells, double length) {
  chlab::UniformGrid grid{-0.5 * length, length / static_cast<double>(cells), cells};
  auto X = chlab::LagrangianState::identity(grid);
  X.k = uniform(rng, -1.0, 1.0);
  for (std::size_t i = 0; i < cells; ++i) {
    X.y[i + 1] = X.y[i] + grid.step * uniform(rng, 0.0, 1.0);
    X.h[i] = uniform(rng, 0.0, 2.0);
    X.r_bar[i] = uniform(rng, -1.0, 1.0);
  }
  for (std::size_t j = 0; j <= cells; ++j) X.U[j] = std::sin(0.3 * j) * uniform(rng, 0.5, 1.5);
  return X;
}

}  // namespace gen
