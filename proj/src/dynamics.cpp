#include "chlab/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "chlab/kernels.hpp"

namespace chlab {

void SolverConfig::check(const UniformGrid& grid) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("solver: dt must be positive");
  if (dt > grid.step) throw Error("solver: dt exceeds the grid step");
  if (!(t_end >= dt)) throw Error("solver: t_end must be at least dt");
  if (snapshot_stride < 1) throw Error("solver: snapshot stride must be positive");
  if (!(invariant_tolerance > 0.0)) throw Error("solver: invariant tolerance must be positive");
}

StateRate rhs(const LagrangianState& X, Execution exec) {
  const std::size_t n = X.grid.cells;
  const DiscretePQ pq = discrete_PQ(X, exec);
  const std::vector<double>& Q = pq.Q;
  const std::vector<double>& P = pq.P_bar;
  StateRate R{X.U, std::vector<double>(n + 1), std::vector<double>(n), std::vector<double>(n), 0.0};
  for (std::size_t j = 0; j <= n; ++j) R.U[j] = -Q[j];
  const double half_k2 = 0.5 * X.k * X.k;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = X.U[i], q = X.U[i + 1];
    const double u2 = (p * p + p * q + q * q) / 3.0;
    const double ux = X.U_xi(i);
    R.h[i] = 2.0 * (u2 + half_k2 - P[i]) * ux;
    R.r_bar[i] = -X.k * ux;
  }
  return R;
}

LagrangianState advance(const LagrangianState& X, const StateRate& R, double a) {
  LagrangianState out = X;
  for (std::size_t j = 0; j < out.y.size(); ++j) {
    out.y[j] += a * R.y[j];
    out.U[j] += a * R.U[j];
  }
  for (std::size_t i = 0; i < out.h.size(); ++i) {
    out.h[i] += a * R.h[i];
    out.r_bar[i] += a * R.r_bar[i];
  }
  out.k += a * R.k;
  return out;
}

LagrangianState rk4_step(const LagrangianState& X, double dt, Execution exec) {
  const StateRate k1 = rhs(X, exec);
  const StateRate k2 = rhs(advance(X, k1, 0.5 * dt), exec);
  const StateRate k3 = rhs(advance(X, k2, 0.5 * dt), exec);
  const StateRate k4 = rhs(advance(X, k3, dt), exec);
  LagrangianState out = X;
  const double c = dt / 6.0;
  for (std::size_t j = 0; j < out.y.size(); ++j) {
    out.y[j] += c * (k1.y[j] + 2.0 * k2.y[j] + 2.0 * k3.y[j] + k4.y[j]);
    out.U[j] += c * (k1.U[j] + 2.0 * k2.U[j] + 2.0 * k3.U[j] + k4.U[j]);
  }
  for (std::size_t i = 0; i < out.h.size(); ++i) {
    out.h[i] += c * (k1.h[i] + 2.0 * k2.h[i] + 2.0 * k3.h[i] + k4.h[i]);
    out.r_bar[i] += c * (k1.r_bar[i] + 2.0 * k2.r_bar[i] + 2.0 * k3.r_bar[i] + k4.r_bar[i]);
  }
  return out;
}

namespace {

// Index of the first nonfinite entry (nodes first, then cells), or -1.
long first_nonfinite(const LagrangianState& X) {
  for (std::size_t j = 0; j < X.y.size(); ++j) {
    if (!std::isfinite(X.y[j]) || !std::isfinite(X.U[j])) return static_cast<long>(j);
  }
  for (std::size_t i = 0; i < X.h.size(); ++i) {
    if (!std::isfinite(X.h[i]) || !std::isfinite(X.r_bar[i])) return static_cast<long>(i);
  }
  return -1;
}

std::size_t worst_cell(const LagrangianState& X) {
  std::size_t w = 0;
  double m = -1.0;
  for (std::size_t i = 0; i < X.grid.cells; ++i) {
    const double r = std::abs(X.constraint_residual(i));
    if (r > m) {
      m = r;
      w = i;
    }
  }
  return w;
}

}  // namespace

Trajectory evolve(const LagrangianState& X0, const SolverConfig& cfg, Execution exec) {
  cfg.check(X0.grid);
  Trajectory traj;
  auto snapshot = [&](double t, const LagrangianState& X, const StepRecord& rec) {
    traj.times.push_back(t);
    traj.states.push_back(X);
    traj.sigma_log.push_back(rec.sigma);
    traj.invariant_residual_log.push_back(rec.residual);
  };
  auto measure = [](double t, const LagrangianState& X) {
    return StepRecord{t, energy_sigma(X), X.max_constraint_residual(), X.min_y_xi()};
  };

  const auto nsteps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  LagrangianState X = X0;
  traj.steps.push_back(measure(0.0, X));
  snapshot(0.0, X, traj.steps.back());
  for (long s = 1; s <= nsteps; ++s) {
    const double t_prev = static_cast<double>(s - 1) * cfg.dt;
    const double t = s == nsteps ? cfg.t_end : static_cast<double>(s) * cfg.dt;
    LagrangianState next = rk4_step(X, t - t_prev, exec);
    if (const long bad = first_nonfinite(next); bad >= 0) {
      std::ostringstream msg;
      msg << "nonfinite value at t = " << t << ", index " << bad;
      traj.status = Trajectory::Status::nonfinite;
      traj.message = msg.str();
      if (traj.times.back() != t_prev) snapshot(t_prev, X, traj.steps.back());
      return traj;
    }
    X = std::move(next);
    const StepRecord rec = measure(t, X);
    traj.steps.push_back(rec);
    const bool snap = s == nsteps || s % cfg.snapshot_stride == 0;
    if (snap) snapshot(t, X, rec);
    if (rec.residual > cfg.invariant_tolerance) {
      std::ostringstream msg;
      msg << "constraint residual " << rec.residual << " exceeds " << cfg.invariant_tolerance << " at t = " << t
          << ", cell " << worst_cell(X);
      traj.status = Trajectory::Status::tolerance;
      traj.message = msg.str();
      if (!snap) snapshot(t, X, rec);
      return traj;
    }
  }
  return traj;
}

}  // namespace chlab
