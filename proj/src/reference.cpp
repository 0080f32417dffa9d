#include "chlab/reference.hpp"

#include <cmath>
#include <functional>

#include "chlab/mollify.hpp"
#include "chlab/transforms.hpp"

namespace chlab::reference {

EulerianState peakon_antipeakon_breaking(double alpha, const UniformGrid& grid) {
  if (!(alpha > 0.0)) throw Error("peakon_antipeakon_breaking: alpha must be positive");
  EulerianState s = EulerianState::zero(grid);
  s.mu = CumulativeMeasure({{0.0, alpha}}, grid, std::vector<double>(grid.cells, 0.0));
  return s;
}

namespace {

EulerianState from_nodal_u(const UniformGrid& grid, const std::function<double(double)>& f) {
  EulerianState s = EulerianState::zero(grid);
  for (std::size_t j = 0; j < grid.nodes(); ++j) s.u[j] = f(grid.node(j));
  std::vector<double> density(grid.cells);
  for (std::size_t i = 0; i < grid.cells; ++i) density[i] = s.u_x(i) * s.u_x(i);
  s.mu = CumulativeMeasure({}, grid, std::move(density));
  return s;
}

}  // namespace

EulerianState single_peakon(double c, const UniformGrid& grid) {
  if (c == 0.0) throw Error("single_peakon: c must be nonzero");
  grid.check();
  return from_nodal_u(grid, [c](double x) { return c * std::exp(-std::abs(x)); });
}

EulerianState peakon_antipeakon(double c, double a, const UniformGrid& grid) {
  if (c == 0.0 || !(a > 0.0)) throw Error("peakon_antipeakon: need c != 0 and a > 0");
  grid.check();
  return from_nodal_u(grid, [c, a](double x) { return c * (std::exp(-std::abs(x + a)) - std::exp(-std::abs(x - a))); });
}

double breaking_y(double alpha, double xi) {
  if (xi < 0.0) return xi;
  if (xi <= alpha) return 0.0;
  return xi - alpha;
}

std::vector<LimitSample> mollifier_limit_check(double alpha, double xi, const std::vector<int>& n_list) {
  if (!(xi > 0.0 && xi < alpha)) throw Error("mollifier_limit_check: xi must lie strictly inside (0, alpha)");
  const UniformGrid grid{-1.0, 0.25, 8};
  const EulerianState s = peakon_antipeakon_breaking(alpha, grid);
  const double y = breaking_y(alpha, xi);
  std::vector<LimitSample> out;
  for (int n : n_list) {
    const Mollification m(s, n);
    // x + hat F_n(x) is continuous and strictly increasing; bisect for xi.
    double lo = -1.0 - 1.0 / n, hi = 1.0 + 1.0 / n;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mid + m.F_hat(mid) < xi ? lo : hi) = mid;
    }
    const double y_hat = 0.5 * (lo + hi);
    const LagrangianState X = lift(m.assemble());
    const double y_lift = X.y_at(xi);
    out.push_back({n, n * (y_hat - y), n * (y_lift - y)});
  }
  return out;
}

}  // namespace chlab::reference
