#pragma once

#include <string>
#include <vector>

#include "chlab/lagrangian.hpp"
#include "chlab/mollify.hpp"

namespace chlab {

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 100;
  /// Abort when the max per-cell constraint residual exceeds this.
  double invariant_tolerance = 1e-6;

  /// Throws unless 0 < dt <= grid step, t_end >= dt and the rest is positive.
  void check(const UniformGrid& grid) const;
};

/// Time derivative of a Lagrangian state; same layout as the state.
struct StateRate {
  std::vector<double> y;
  std::vector<double> U;
  std::vector<double> h;
  std::vector<double> r_bar;
  double k = 0.0;
};

/// y_t = U, U_t = -Q at the nodes, h_t = 2(<U^2> + k^2/2 - <P>) U_xi and
/// r_bar_t = -k U_xi per cell, k_t = 0. <U^2> and <P> are exact cell averages,
/// which makes the constraint y_xi h = U_xi^2 + r_bar^2 an exact invariant of
/// the semi-discrete system.
StateRate rhs(const LagrangianState& X, Execution exec = Execution::parallel);

/// X + a R.
LagrangianState advance(const LagrangianState& X, const StateRate& R, double a);

/// One classical RK4 step.
LagrangianState rk4_step(const LagrangianState& X, double dt, Execution exec = Execution::parallel);

struct StepRecord {
  double t = 0.0;
  double sigma = 0.0;
  double residual = 0.0;
  double min_y_xi = 0.0;
};

struct Trajectory {
  enum class Status { completed, nonfinite, tolerance };

  std::vector<double> times;
  std::vector<LagrangianState> states;
  std::vector<double> sigma_log;
  std::vector<double> invariant_residual_log;
  /// Every step, including those between snapshots.
  std::vector<StepRecord> steps;
  Status status = Status::completed;
  std::string message;

  [[nodiscard]] bool ok() const { return status == Status::completed; }
};

/// Fixed-step RK4 from t = 0 to cfg.t_end (the last step is shortened if dt
/// does not divide t_end). Snapshots at t = 0, every snapshot_stride steps and
/// at the end. Stops early on a nonfinite value or a residual above
/// cfg.invariant_tolerance; the partial trajectory keeps the last good state.
Trajectory evolve(const LagrangianState& X0, const SolverConfig& cfg, Execution exec = Execution::parallel);

}  // namespace chlab
