#include "chlab/mollify.hpp"

#include <algorithm>
#include <cmath>

#include "chlab/mollifier.hpp"

namespace chlab {

using mollifier::Phi;
using mollifier::Phi_primitive;
using mollifier::Psi;

namespace {

// Index range of input cells that intersect [a, b]; empty when first > last.
struct CellRange {
  std::size_t first = 1;
  std::size_t last = 0;
};

CellRange cells_touching(const UniformGrid& g, double a, double b) {
  if (b <= g.origin || a >= g.end()) return {};
  return {g.cell_of(a), g.cell_of(b)};
}

}  // namespace

Mollification::Mollification(const EulerianState& s, int n) : s_(s), n_(n) {
  if (n < 1) throw Error("mollify: n must be a positive integer");
}

double Mollification::u_n(double x) const {
  const auto& g = s_.grid;
  const double n = n_;
  const double r = 1.0 / n;
  const auto range = cells_touching(g, x - r, x + r);
  double sum = 0.0;
  for (std::size_t c = range.first; c <= range.last; ++c) {
    const double xc = g.node(c);
    const double slope = (s_.u[c + 1] - s_.u[c]) / g.step;
    const double hi = n * (x - xc);
    const double lo = n * (x - g.node(c + 1));
    sum += (s_.u[c] + slope * (x - xc)) * (Phi(hi) - Phi(lo)) - slope / n * (Psi(hi) - Psi(lo));
  }
  return sum;
}

double Mollification::u_n_x(double x) const {
  const auto& g = s_.grid;
  const double n = n_;
  const auto range = cells_touching(g, x - 1.0 / n, x + 1.0 / n);
  double sum = 0.0;
  for (std::size_t c = range.first; c <= range.last; ++c) {
    const double slope = (s_.u[c + 1] - s_.u[c]) / g.step;
    sum += slope * (Phi(n * (x - g.node(c))) - Phi(n * (x - g.node(c + 1))));
  }
  return sum;
}

double Mollification::mu_hat(double x) const {
  const auto& g = s_.grid;
  const double n = n_;
  double sum = 0.0;
  for (const auto& a : s_.mu.atoms()) sum += a.mass * n * mollifier::phi(n * (x - a.position));
  const auto range = cells_touching(g, x - 1.0 / n, x + 1.0 / n);
  const auto& d = s_.mu.density();
  for (std::size_t c = range.first; c <= range.last; ++c) {
    sum += d[c] * (Phi(n * (x - g.node(c))) - Phi(n * (x - g.node(c + 1))));
  }
  return sum;
}

double Mollification::F_hat(double x) const {
  const auto& g = s_.grid;
  const double n = n_;
  double sum = 0.0;
  for (const auto& a : s_.mu.atoms()) sum += a.mass * Phi(n * (x - a.position));
  // Cells entirely left of the window contribute their full mass.
  const double left = x - 1.0 / n;
  if (left >= g.end()) return sum + s_.mu.ac_mass();
  const auto range = cells_touching(g, left, x + 1.0 / n);
  if (range.first > range.last) return sum;
  const auto& d = s_.mu.density();
  sum += s_.mu.F_ac(g.node(range.first));
  for (std::size_t c = range.first; c <= range.last; ++c) {
    sum += d[c] / n * (Phi_primitive(n * (x - g.node(c))) - Phi_primitive(n * (x - g.node(c + 1))));
  }
  return sum;
}

double Mollification::rho_n(double x) const {
  const double inv = 1.0 / n_;
  return std::sqrt(inv * inv + std::max(rho_hat_squared(x), 0.0));
}

UniformGrid Mollification::output_grid() const {
  const auto& g = s_.grid;
  const double target = 1.0 / (8.0 * n_);
  const auto refine = static_cast<std::size_t>(std::max(1.0, std::ceil(g.step / target - 1e-12)));
  const double dx = g.step / static_cast<double>(refine);
  const auto pad = static_cast<std::size_t>(std::ceil((1.0 / n_) / dx - 1e-12));
  return {g.origin - static_cast<double>(pad) * dx, dx, g.cells * refine + 2 * pad};
}

namespace {

// Reference evaluation: every input cell and atom contributes, no windowing.
struct FullSum {
  const EulerianState& s;
  double n;

  [[nodiscard]] double u_n(double x) const {
    const auto& g = s.grid;
    double sum = 0.0;
    for (std::size_t c = 0; c < g.cells; ++c) {
      const double xc = g.node(c);
      const double slope = (s.u[c + 1] - s.u[c]) / g.step;
      const double hi = n * (x - xc);
      const double lo = n * (x - g.node(c + 1));
      sum += (s.u[c] + slope * (x - xc)) * (Phi(hi) - Phi(lo)) - slope / n * (Psi(hi) - Psi(lo));
    }
    return sum;
  }

  [[nodiscard]] double F_hat(double x) const {
    const auto& g = s.grid;
    double sum = 0.0;
    for (const auto& a : s.mu.atoms()) sum += a.mass * Phi(n * (x - a.position));
    const auto& d = s.mu.density();
    for (std::size_t c = 0; c < g.cells; ++c) {
      const double hi = n * (x - g.node(c));
      const double lo = n * (x - g.node(c + 1));
      if (lo >= 1.0) {
        sum += d[c] * g.step;
      } else {
        sum += d[c] / n * (Phi_primitive(hi) - Phi_primitive(lo));
      }
    }
    return sum;
  }
};

}  // namespace

EulerianState Mollification::assemble(Execution exec) const {
  const UniformGrid out = output_grid();
  const std::size_t nodes = out.nodes();
  std::vector<double> u(nodes), F(nodes);
  if (exec == Execution::serial) {
    const FullSum ref{s_, static_cast<double>(n_)};
    for (std::size_t j = 0; j < nodes; ++j) {
      u[j] = ref.u_n(out.node(j));
      F[j] = ref.F_hat(out.node(j));
    }
  } else {
    const auto count = static_cast<std::ptrdiff_t>(nodes);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
      const auto idx = static_cast<std::size_t>(j);
      u[idx] = u_n(out.node(idx));
      F[idx] = F_hat(out.node(idx));
    }
  }

  const double inv_n = 1.0 / n_;
  std::vector<double> rho_bar(out.cells), density(out.cells);
  for (std::size_t i = 0; i < out.cells; ++i) {
    const double slope = (u[i + 1] - u[i]) / out.step;
    const double mu_mean = (F[i + 1] - F[i]) / out.step;
    const double rho_hat_sq = std::max(mu_mean - slope * slope, 0.0);
    // rho_n - 1/n written without cancellation.
    const double rb = rho_hat_sq / (inv_n + std::sqrt(inv_n * inv_n + rho_hat_sq));
    rho_bar[i] = rb;
    density[i] = slope * slope + rb * rb;
  }
  return {out, std::move(u), std::move(rho_bar), inv_n, CumulativeMeasure({}, out, std::move(density))};
}

EulerianState mollify(const EulerianState& s, int n, Execution exec) {
  if (s.k != 0.0) throw Error("mollify: input must have rho = 0 (k != 0)");
  for (double r : s.rho_bar) {
    if (r != 0.0) throw Error("mollify: input must have rho = 0 (rho_bar != 0)");
  }
  if (const auto v = validate(s); !v.empty()) {
    throw Error("mollify: input fails validation (" + v.front().kind + " at " + std::to_string(v.front().index) +
                ")");
  }
  return Mollification(s, n).assemble(exec);
}

}  // namespace chlab
