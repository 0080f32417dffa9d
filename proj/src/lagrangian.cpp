#include "chlab/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace chlab {

double interpolate_nodal(const UniformGrid& grid, std::span<const double> v, double x, double outside_slope) {
  const double s = (x - grid.origin) / grid.step;
  const auto cells = static_cast<double>(grid.cells);
  constexpr double snap = 1e-10;
  if (s <= snap) {
    if (s >= -snap) return v.front();
    return v.front() + outside_slope * (x - grid.origin);
  }
  if (s >= cells - snap) {
    if (s <= cells + snap) return v.back();
    return v.back() + outside_slope * (x - grid.end());
  }
  const double r = std::round(s);
  if (std::abs(s - r) <= snap) return v[static_cast<std::size_t>(r)];
  const auto i = static_cast<std::size_t>(std::floor(s));
  const double t = s - static_cast<double>(i);
  return v[i] + t * (v[i + 1] - v[i]);
}

LagrangianState LagrangianState::identity(UniformGrid grid) {
  grid.check();
  LagrangianState X{grid, {}, std::vector<double>(grid.nodes(), 0.0), std::vector<double>(grid.cells, 0.0),
                    std::vector<double>(grid.cells, 0.0), 0.0};
  X.y.resize(grid.nodes());
  for (std::size_t j = 0; j < grid.nodes(); ++j) X.y[j] = grid.node(j);
  return X;
}

double LagrangianState::constraint_residual(std::size_t i) const {
  const double ux = U_xi(i);
  return y_xi(i) * h[i] - ux * ux - r_bar[i] * r_bar[i];
}

double LagrangianState::max_constraint_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.cells; ++i) worst = std::max(worst, std::abs(constraint_residual(i)));
  return worst;
}

double LagrangianState::min_y_xi() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.cells; ++i) m = std::min(m, y_xi(i));
  return m;
}

std::vector<double> LagrangianState::H_nodes() const {
  std::vector<double> H(grid.nodes(), 0.0);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < grid.cells; ++i) {
    acc += static_cast<long double>(h[i]) * grid.step;
    H[i + 1] = static_cast<double>(acc);
  }
  return H;
}

double LagrangianState::U_at(double xi) const {
  if (xi < grid.origin || xi > grid.end()) return 0.0;
  return interpolate_nodal(grid, U, xi);
}

RelabelingFunction RelabelingFunction::identity(UniformGrid grid) {
  return sample(grid, [](double x) { return x; });
}

RelabelingFunction RelabelingFunction::sample(UniformGrid grid, const std::function<double(double)>& f) {
  grid.check();
  RelabelingFunction r{grid, std::vector<double>(grid.nodes())};
  for (std::size_t j = 0; j < grid.nodes(); ++j) r.g[j] = f(grid.node(j));
  return r;
}

bool RelabelingFunction::strictly_increasing() const {
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (!(g[i + 1] > g[i])) return false;
  }
  return true;
}

namespace {

// Values of the inverse of the nodal increasing map f (slope 1 outside) at the nodes.
std::vector<double> invert_at_nodes(const UniformGrid& grid, const std::vector<double>& f) {
  std::vector<double> eta(grid.nodes());
  std::size_t i = 0;
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    const double t = grid.node(j);
    if (t <= f.front()) {
      eta[j] = grid.origin + (t - f.front());
    } else if (t >= f.back()) {
      eta[j] = grid.end() + (t - f.back());
    } else {
      while (i + 1 < grid.cells && f[i + 1] <= t) ++i;
      eta[j] = grid.node(i) + grid.step * (t - f[i]) / (f[i + 1] - f[i]);
    }
  }
  return eta;
}

LagrangianState compose_at(const LagrangianState& X, const std::vector<double>& eta) {
  const auto& grid = X.grid;
  const std::vector<double> H = X.H_nodes();
  std::vector<double> R(grid.nodes(), 0.0);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < grid.cells; ++i) {
    acc += static_cast<long double>(X.r_bar[i]) * grid.step;
    R[i + 1] = static_cast<double>(acc);
  }

  LagrangianState out{grid, std::vector<double>(grid.nodes()), std::vector<double>(grid.nodes()),
                      std::vector<double>(grid.cells), std::vector<double>(grid.cells), X.k};
  std::vector<double> He(grid.nodes()), Re(grid.nodes());
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    out.y[j] = X.y_at(eta[j]);
    out.U[j] = X.U_at(eta[j]);
    He[j] = interpolate_nodal(grid, H, eta[j]);
    Re[j] = interpolate_nodal(grid, R, eta[j]);
  }
  for (std::size_t i = 0; i < grid.cells; ++i) {
    out.h[i] = std::max((He[i + 1] - He[i]) / grid.step, 0.0);
    out.r_bar[i] = (Re[i + 1] - Re[i]) / grid.step;
  }
  return out;
}

}  // namespace

RelabelingFunction RelabelingFunction::inverse() const {
  return {grid, invert_at_nodes(grid, g)};
}

std::vector<Violation> validate_F(const LagrangianState& X, const LagrangianTolerances& tol) {
  const auto& grid = X.grid;
  if (X.y.size() != grid.nodes() || X.U.size() != grid.nodes() || X.h.size() != grid.cells ||
      X.r_bar.size() != grid.cells) {
    return {{"shape", 0, 0.0}};
  }
  std::map<std::string, Violation> worst;
  auto note = [&](const char* kind, std::size_t i, double mag) {
    auto [it, inserted] = worst.try_emplace(kind, Violation{kind, i, mag});
    if (!inserted && mag > it->second.magnitude) it->second = {kind, i, mag};
  };
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    if (!std::isfinite(X.y[j]) || !std::isfinite(X.U[j])) note("nonfinite", j, 0.0);
  }
  for (std::size_t i = 0; i < grid.cells; ++i) {
    if (!std::isfinite(X.h[i]) || !std::isfinite(X.r_bar[i])) {
      note("nonfinite", i, 0.0);
      continue;
    }
    const double yx = X.y_xi(i);
    const double ux = X.U_xi(i);
    if (yx < -tol.sign) note("y_xi>=0", i, -yx);
    if (X.h[i] < -tol.sign) note("h>=0", i, -X.h[i]);
    if (!(yx + X.h[i] > 0.0)) note("y_xi+h>0", i, std::abs(yx + X.h[i]));
    const double lhs = yx * X.h[i];
    const double rhs = ux * ux + X.r_bar[i] * X.r_bar[i];
    const double res = std::abs(lhs - rhs);
    if (res > tol.constraint * (1.0 + lhs + rhs)) note("y_xi*h=U_xi^2+r_bar^2", i, res);
  }
  if (std::abs(X.U.front()) > tol.decay) note("decay", 0, std::abs(X.U.front()));
  if (std::abs(X.U.back()) > tol.decay) note("decay", grid.cells, std::abs(X.U.back()));
  if (!std::isfinite(X.k)) note("nonfinite", 0, 0.0);

  std::vector<Violation> out;
  for (auto& [kind, v] : worst) out.push_back(v);
  return out;
}

bool in_F0(const LagrangianState& X) {
  const std::vector<double> H = X.H_nodes();
  for (std::size_t j = 0; j < X.grid.nodes(); ++j) {
    const double xi = X.grid.node(j);
    if (std::abs(X.y[j] + H[j] - xi) > 1e-10 * (1.0 + std::abs(xi))) return false;
  }
  return true;
}

LagrangianState compose(const LagrangianState& X, const RelabelingFunction& g) {
  if (!same_grid(g.grid, X.grid)) throw Error("compose: relabeling and state live on different grids");
  if (!g.strictly_increasing()) throw Error("compose: relabeling function is not strictly increasing");
  return compose_at(X, g.g);
}

RelabelingFunction relabeling_of(const LagrangianState& X) {
  RelabelingFunction f{X.grid, X.H_nodes()};
  for (std::size_t j = 0; j < f.g.size(); ++j) f.g[j] += X.y[j];
  return f;
}

LagrangianState gamma(const LagrangianState& X) {
  const RelabelingFunction f = relabeling_of(X);
  if (!f.strictly_increasing()) throw Error("gamma: y + H is not strictly increasing");
  return compose_at(X, invert_at_nodes(X.grid, f.g));
}

double e_norm_distance(const LagrangianState& a, const LagrangianState& b) {
  if (!same_grid(a.grid, b.grid)) throw Error("e_norm_distance: states live on different grids");
  const auto& grid = a.grid;
  double zeta_sup = 0.0, zeta_slope = 0.0, h_l2 = 0.0, r_l2 = 0.0;
  for (std::size_t j = 0; j < grid.nodes(); ++j) zeta_sup = std::max(zeta_sup, std::abs(a.y[j] - b.y[j]));
  for (std::size_t i = 0; i < grid.cells; ++i) {
    const double ds = a.y_xi(i) - b.y_xi(i);
    zeta_slope += ds * ds * grid.step;
    const double dh = a.h[i] - b.h[i];
    h_l2 += dh * dh * grid.step;
    const double dr = a.r_bar[i] - b.r_bar[i];
    r_l2 += dr * dr * grid.step;
  }
  return zeta_sup + std::sqrt(zeta_slope) + h1_distance(grid, a.U, b.U) + std::sqrt(h_l2) + std::sqrt(r_l2) +
         std::abs(a.k - b.k);
}

double energy_sigma(const LagrangianState& X) {
  double sum = 0.0;
  for (std::size_t i = 0; i < X.grid.cells; ++i) {
    const double p = X.U[i], q = X.U[i + 1];
    sum += X.grid.step * ((p * p + p * q + q * q) / 3.0 * X.y_xi(i) + X.h[i]);
  }
  return sum;
}

double kappa_of(const RelabelingFunction& g) {
  double shift = 0.0, slope = 0.0, inv_slope = 0.0;
  for (std::size_t j = 0; j < g.grid.nodes(); ++j) shift = std::max(shift, std::abs(g.g[j] - g.grid.node(j)));
  for (std::size_t i = 0; i < g.grid.cells; ++i) {
    const double s = g.g_xi(i);
    slope = std::max(slope, std::abs(s - 1.0));
    inv_slope = std::max(inv_slope, std::abs(1.0 / s - 1.0));
  }
  // g^{-1} - id attains the same sup as g - id at the nodes of the image.
  return 2.0 * shift + slope + inv_slope;
}

}  // namespace chlab
