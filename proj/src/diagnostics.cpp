#include "chlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chlab/mollifier.hpp"

namespace chlab {

double ConvergenceReport::F_pointwise_max() const {
  double m = 0.0;
  for (const auto& [x, e] : F_pointwise_errs) m = std::max(m, e);
  return m;
}

namespace {

// ||phi||_{L2} by composite Simpson; phi is flat to all orders at +-1.
double phi_l2_norm() {
  static const double norm = [] {
    const int n = 1 << 14;
    const double h = 2.0 / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = -1.0 + i * h;
      const double f = mollifier::phi(x);
      const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      sum += wgt * f * f;
    }
    return std::sqrt(sum * h / 3.0);
  }();
  return norm;
}

// Integral of psi over [a, b] for psi(x) = phi((x - c) / w).
double bump_integral(double a, double b, double c, double w) {
  return w * (mollifier::Phi((b - c) / w) - mollifier::Phi((a - c) / w));
}

// Integral of f psi for f piecewise constant on grid cells.
double pair_cells(const UniformGrid& g, const std::vector<double>& f, double c, double w) {
  if (c + w <= g.origin || c - w >= g.end()) return 0.0;
  const std::size_t first = g.cell_of(c - w), last = g.cell_of(c + w);
  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) sum += f[i] * bump_integral(g.node(i), g.node(i + 1), c, w);
  return sum;
}

std::vector<double> slopes(const EulerianState& s) {
  std::vector<double> out(s.grid.cells);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.u_x(i);
  return out;
}

double ratio_integral(const EulerianState& s, bool gradient) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.grid.cells; ++i) {
    const double ux2 = s.u_x(i) * s.u_x(i);
    const double r2 = s.rho_bar[i] * s.rho_bar[i];
    sum += (gradient ? ux2 : r2) / (1.0 + ux2 + r2) * s.grid.step;
  }
  return sum;
}

}  // namespace

std::vector<double> default_probes(const EulerianState& ref, const EulerianState& cand) {
  std::vector<double> atoms;
  for (const auto& a : ref.mu.atoms()) atoms.push_back(a.position);
  for (const auto& a : cand.mu.atoms()) atoms.push_back(a.position);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::vector<double> probes;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) probes.push_back(0.5 * (atoms[i] + atoms[i + 1]));
  for (int q = 1; q <= 3; ++q) probes.push_back(ref.grid.origin + 0.25 * q * ref.grid.length());
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  probes.erase(std::remove_if(probes.begin(), probes.end(),
                              [&](double x) { return cand.mu.atom_at(x) > 0.0 || ref.mu.atom_at(x) > 0.0; }),
               probes.end());
  return probes;
}

ConvergenceReport compare_eulerian(const EulerianState& s1, const EulerianState& s2, const std::vector<double>& probes,
                                   const BumpFamily& family) {
  for (double x : probes) {
    if (s2.mu.atom_at(x) > 0.0) throw Error("compare_eulerian: probe " + std::to_string(x) + " sits on an atom");
  }
  ConvergenceReport r;

  // u1 - u2 is linear between merged breakpoints.
  std::vector<double> xs;
  for (std::size_t j = 0; j < s1.grid.nodes(); ++j) xs.push_back(s1.grid.node(j));
  for (std::size_t j = 0; j < s2.grid.nodes(); ++j) xs.push_back(s2.grid.node(j));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // One-sided limits from the cell holding the piece, so jumps at a
  // truncated boundary are seen from both sides.
  auto inside = [](const EulerianState& s, double mid, double x) {
    if (mid < s.grid.origin || mid > s.grid.end()) return 0.0;
    const std::size_t c = s.grid.cell_of(mid);
    return s.u[c] + (x - s.grid.node(c)) * s.u_x(c);
  };
  double l2 = 0.0, linf = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i], b = xs[i + 1];
    const double len = b - a, mid = 0.5 * (a + b);
    auto diff = [&](double x) { return inside(s1, mid, x) - inside(s2, mid, x); };
    const double p = diff(a), q = diff(b);
    l2 += len * (p * p + p * q + q * q) / 3.0;
    linf = std::max({linf, std::abs(p), std::abs(q)});
  }
  r.u_l2_err = std::sqrt(l2);
  r.u_linf_err = linf;

  const std::vector<double> ux1 = slopes(s1), ux2 = slopes(s2);
  const double norm = phi_l2_norm();
  for (double c : family.centers) {
    for (double w : family.widths) {
      const double scale = norm * std::sqrt(w);
      r.weak_ux_err = std::max(r.weak_ux_err, std::abs(pair_cells(s1.grid, ux1, c, w) - pair_cells(s2.grid, ux2, c, w)) / scale);
      r.weak_rhobar_err = std::max(
          r.weak_rhobar_err, std::abs(pair_cells(s1.grid, s1.rho_bar, c, w) - pair_cells(s2.grid, s2.rho_bar, c, w)) / scale);
    }
  }
  r.k_err = std::abs(s1.k - s2.k);
  r.grad_ratio_err = std::abs(ratio_integral(s1, true) - ratio_integral(s2, true));
  r.rho_ratio_err = std::abs(ratio_integral(s1, false) - ratio_integral(s2, false));
  for (double x : probes) r.F_pointwise_errs.emplace_back(x, std::abs(s1.mu.F(x) - s2.mu.F(x)));
  r.F_total_err = std::abs(s1.mu.total_mass() - s2.mu.total_mass());
  return r;
}

double compare_lagrangian(const LagrangianState& a, const LagrangianState& b) { return e_norm_distance(a, b); }

double total_energy(const EulerianState& s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.grid.cells; ++i) {
    const double p = s.u[i], q = s.u[i + 1];
    sum += s.grid.step * (p * p + p * q + q * q) / 3.0;
  }
  return sum + s.mu.total_mass();
}

}  // namespace chlab
