#include "chlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chlab/measure.hpp"

namespace chlab {

namespace {

struct XiRange {
  double start;
  double end;
  double min_plateau;
};

XiRange xi_range(const EulerianState& s) {
  const auto& mu = s.mu;
  double lo = s.grid.origin;
  double hi = s.grid.end();
  double plateau = std::numeric_limits<double>::infinity();
  for (const auto& a : mu.atoms()) {
    lo = std::min(lo, a.position);
    hi = std::max(hi, a.position);
    plateau = std::min(plateau, a.mass);
  }
  return {lo + mu.F_left(lo), hi + mu.F(hi), plateau};
}

void require_valid(const EulerianState& s, const char* who) {
  const auto v = validate(s);
  if (!v.empty()) {
    throw Error(std::string(who) + ": invalid Eulerian state (" + v.front().kind + " at " +
                std::to_string(v.front().index) + ")");
  }
}

}  // namespace

UniformGrid lift_grid(const EulerianState& s, const LiftOptions& opt) {
  const XiRange r = xi_range(s);
  const double span = r.end - r.start;
  if (opt.cells) {
    if (*opt.cells == 0) throw Error("lift: cells must be positive");
    const double step = span / static_cast<double>(*opt.cells);
    if (step > r.min_plateau / 4.0 * (1.0 + 1e-9)) {
      throw Error("lift: " + std::to_string(*opt.cells) + " cells leave an atom plateau with fewer than 4 cells");
    }
    return {r.start, step, *opt.cells};
  }
  double step = s.grid.step / 4.0;
  while (step > r.min_plateau / 4.0) step /= 2.0;
  const auto cells = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(span / step - 1e-9)), 1);
  return {r.start, span / static_cast<double>(cells), cells};
}

LagrangianState lift(const EulerianState& s, const LiftOptions& opt) {
  require_valid(s, "lift");
  const UniformGrid grid = lift_grid(s, opt);
  LagrangianState X{grid, std::vector<double>(grid.nodes()), std::vector<double>(grid.nodes()),
                    std::vector<double>(grid.cells), std::vector<double>(grid.cells), s.k};
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    X.y[j] = s.mu.sup_inverse(grid.node(j));
    X.U[j] = s.u_at(X.y[j]);
  }
  // Primitive of rho_bar on the x grid, for the sign of r_bar.
  std::vector<double> R(s.grid.nodes(), 0.0);
  for (std::size_t i = 0; i < s.grid.cells; ++i) R[i + 1] = R[i] + s.rho_bar[i] * s.grid.step;
  auto R_at = [&](double x) { return interpolate_nodal(s.grid, R, x); };

  for (std::size_t i = 0; i < grid.cells; ++i) {
    const double yx = X.y_xi(i);
    X.h[i] = std::max(1.0 - yx, 0.0);
    const double ux = X.U_xi(i);
    // below 1e-12 the deficit is rounding noise that sqrt would amplify
    double deficit = yx * X.h[i] - ux * ux;
    if (deficit <= 1e-12) deficit = 0.0;
    const double avg = R_at(X.y[i + 1]) - R_at(X.y[i]);
    X.r_bar[i] = std::copysign(std::sqrt(deficit), avg);
  }
  return X;
}

EulerianState project(const LagrangianState& Xin, const ProjectOptions& opt) {
  LagrangianState canonical;
  const LagrangianState* X = &Xin;
  if (!in_F0(Xin)) {
    if (opt.auto_canonical) {
      canonical = gamma(Xin);
      X = &canonical;
    } else if (opt.require_F0) {
      throw Error("project: state is not in F0 (use auto_canonical to apply gamma first)");
    }
  }
  const auto& xg = X->grid;
  UniformGrid target;
  if (opt.grid) {
    target = *opt.grid;
  } else {
    const std::size_t cells = opt.cells.value_or(xg.cells);
    target = {X->y.front(), (X->y.back() - X->y.front()) / static_cast<double>(cells), cells};
  }
  target.check();

  const double flat = target.step * 1e-9;
  for (std::size_t i = 0; i < xg.cells; ++i) {
    if (X->y[i + 1] - X->y[i] <= flat && std::abs(X->U_xi(i)) > opt.plateau_tolerance) {
      throw Error("project: U varies on the flat cell " + std::to_string(i) + " of y (|U_xi| = " +
                  std::to_string(std::abs(X->U_xi(i))) + ")");
    }
  }

  EulerianState out{target, std::vector<double>(target.nodes()), std::vector<double>(target.cells), X->k,
                    pushforward(X->h, X->y, xg, target)};
  // u at each x node from the preimage cell, sweeping both grids once.
  std::size_t i = 0;
  for (std::size_t j = 0; j < target.nodes(); ++j) {
    const double x = target.node(j);
    if (x <= X->y.front()) {
      out.u[j] = X->U.front();
      continue;
    }
    if (x >= X->y.back()) {
      out.u[j] = X->U.back();
      continue;
    }
    while (i + 1 < xg.cells && X->y[i + 1] < x) ++i;
    const double dy = X->y[i + 1] - X->y[i];
    const double t = dy > 0.0 ? (x - X->y[i]) / dy : 0.0;
    out.u[j] = X->U[i] + t * (X->U[i + 1] - X->U[i]);
  }
  out.rho_bar = pushforward_signed_mass(X->r_bar, X->y, xg, target);
  for (auto& r : out.rho_bar) r /= target.step;
  return out;
}

}  // namespace chlab
