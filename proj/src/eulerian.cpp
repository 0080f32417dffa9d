#include "chlab/eulerian.hpp"

#include <cmath>

namespace chlab {

EulerianState EulerianState::zero(UniformGrid grid) {
  grid.check();
  return {grid, std::vector<double>(grid.nodes(), 0.0), std::vector<double>(grid.cells, 0.0), 0.0,
          CumulativeMeasure::zero(grid)};
}

double EulerianState::u_at(double x) const {
  if (x < grid.origin || x > grid.end()) return 0.0;
  const std::size_t i = grid.cell_of(x);
  const double t = (x - grid.node(i)) / grid.step;
  return u[i] + t * (u[i + 1] - u[i]);
}

double EulerianState::rho_bar_at(double x) const {
  if (x < grid.origin || x >= grid.end()) return 0.0;
  return rho_bar[grid.cell_of(x)];
}

std::vector<Violation> validate(const EulerianState& s, const EulerianTolerances& tol) {
  std::vector<Violation> out;
  if (s.u.size() != s.grid.nodes()) out.push_back({"shape:u", s.u.size(), 0.0});
  if (s.rho_bar.size() != s.grid.cells) out.push_back({"shape:rho_bar", s.rho_bar.size(), 0.0});
  if (!(s.mu.grid() == s.grid)) out.push_back({"shape:mu_grid", 0, 0.0});
  if (!out.empty()) return out;

  for (std::size_t i = 0; i < s.u.size(); ++i) {
    if (!std::isfinite(s.u[i])) out.push_back({"nonfinite:u", i, 0.0});
  }
  if (!std::isfinite(s.k)) out.push_back({"nonfinite:k", 0, 0.0});

  const auto& density = s.mu.density();
  for (std::size_t i = 0; i < s.grid.cells; ++i) {
    if (!std::isfinite(s.rho_bar[i])) {
      out.push_back({"nonfinite:rho_bar", i, 0.0});
      continue;
    }
    const double ux = s.u_x(i);
    const double energy = ux * ux + s.rho_bar[i] * s.rho_bar[i];
    const double diff = density[i] - energy;
    const double bound = tol.compatibility * (1.0 + density[i]);
    if (diff < -bound || (tol.strict_compatibility && diff > bound)) {
      out.push_back({"compatibility", i, std::abs(diff)});
    }
  }
  const std::size_t last = s.u.size() - 1;
  if (std::abs(s.u[0]) > tol.decay) out.push_back({"decay", 0, std::abs(s.u[0])});
  if (std::abs(s.u[last]) > tol.decay) out.push_back({"decay", last, std::abs(s.u[last])});
  return out;
}

double h1_distance(const UniformGrid& grid, const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.cells; ++i) {
    const double p = a[i] - b[i];
    const double q = a[i + 1] - b[i + 1];
    const double slope = (q - p) / grid.step;
    sum += grid.step * (p * p + p * q + q * q) / 3.0 + grid.step * slope * slope;
  }
  return std::sqrt(sum);
}

double h1_norm_squared(const EulerianState& s) {
  const std::vector<double> zero(s.u.size(), 0.0);
  const double d = h1_distance(s.grid, s.u, zero);
  return d * d;
}

}  // namespace chlab
