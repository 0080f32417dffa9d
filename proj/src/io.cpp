#include "chlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "chlab/transforms.hpp"

namespace chlab::io {

namespace {

const json& field(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw FormatError(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(at + "/" + key, "missing key");
  return *it;
}

double number(const json& j, const std::string& at) {
  if (!j.is_number()) throw FormatError(at, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& at) {
  if (!j.is_array()) throw FormatError(at, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at + "/" + std::to_string(i)));
  return out;
}

void expect_size(const std::vector<double>& v, std::size_t n, const std::string& at) {
  if (v.size() != n) {
    throw FormatError(at, "expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
  }
}

}  // namespace

json to_json(const UniformGrid& g) { return {{"x0", g.origin}, {"dx", g.step}, {"cells", g.cells}}; }

json to_json(const CumulativeMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({a.position, a.mass});
  return {{"atoms", atoms}, {"grid", to_json(m.grid())}, {"density", m.density()}};
}

json to_json(const EulerianState& s) {
  return {{"grid", to_json(s.grid)}, {"u", s.u}, {"rho_bar", s.rho_bar}, {"k", s.k}, {"mu", to_json(s.mu)}};
}

json to_json(const LagrangianState& X) {
  std::vector<double> yx(X.grid.cells), ux(X.grid.cells);
  for (std::size_t i = 0; i < X.grid.cells; ++i) {
    yx[i] = X.y_xi(i);
    ux[i] = X.U_xi(i);
  }
  return {{"grid", to_json(X.grid)}, {"y", X.y}, {"U", X.U}, {"y_xi", yx}, {"U_xi", ux},
          {"h", X.h}, {"r_bar", X.r_bar}, {"k", X.k}};
}

json to_json(const ConvergenceReport& r) {
  json probes = json::array();
  for (const auto& [x, e] : r.F_pointwise_errs) probes.push_back({x, e});
  return {{"u_l2_err", r.u_l2_err},
          {"u_linf_err", r.u_linf_err},
          {"weak_ux_err", r.weak_ux_err},
          {"weak_rhobar_err", r.weak_rhobar_err},
          {"k_err", r.k_err},
          {"grad_ratio_err", r.grad_ratio_err},
          {"rho_ratio_err", r.rho_ratio_err},
          {"F_pointwise_errs", probes},
          {"F_total_err", r.F_total_err}};
}

json to_json(const SolverConfig& c) {
  return {{"dt", c.dt},
          {"t_end", c.t_end},
          {"snapshot_stride", c.snapshot_stride},
          {"invariant_tolerance", c.invariant_tolerance}};
}

UniformGrid grid_from_json(const json& j, const std::string& at) {
  const json& cells = field(j, "cells", at);
  if (!cells.is_number_integer() || cells.get<long long>() < 1) {
    throw FormatError(at + "/cells", "expected a positive integer");
  }
  UniformGrid g{number(field(j, "x0", at), at + "/x0"), number(field(j, "dx", at), at + "/dx"),
                cells.get<std::size_t>()};
  if (!(g.step > 0.0)) throw FormatError(at + "/dx", "must be positive");
  return g;
}

CumulativeMeasure measure_from_json(const json& j, const std::string& at) {
  const UniformGrid g = grid_from_json(field(j, "grid", at), at + "/grid");
  std::vector<double> density = numbers(field(j, "density", at), at + "/density");
  expect_size(density, g.cells, at + "/density");
  const json& aj = field(j, "atoms", at);
  if (!aj.is_array()) throw FormatError(at + "/atoms", "expected an array of [x, mass] pairs");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < aj.size(); ++i) {
    const std::string p = at + "/atoms/" + std::to_string(i);
    const auto pair = numbers(aj[i], p);
    expect_size(pair, 2, p);
    if (!(pair[1] > 0.0)) throw FormatError(p + "/1", "atom mass must be positive");
    atoms.push_back({pair[0], pair[1]});
  }
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (!(density[i] >= 0.0)) throw FormatError(at + "/density/" + std::to_string(i), "must be nonnegative");
  }
  return CumulativeMeasure(std::move(atoms), g, std::move(density));
}

EulerianState eulerian_from_json(const json& j, const std::string& at) {
  EulerianState s;
  s.grid = grid_from_json(field(j, "grid", at), at + "/grid");
  s.u = numbers(field(j, "u", at), at + "/u");
  expect_size(s.u, s.grid.nodes(), at + "/u");
  s.rho_bar = numbers(field(j, "rho_bar", at), at + "/rho_bar");
  expect_size(s.rho_bar, s.grid.cells, at + "/rho_bar");
  s.k = number(field(j, "k", at), at + "/k");
  s.mu = measure_from_json(field(j, "mu", at), at + "/mu");
  return s;
}

LagrangianState lagrangian_from_json(const json& j, const std::string& at) {
  LagrangianState X;
  X.grid = grid_from_json(field(j, "grid", at), at + "/grid");
  X.y = numbers(field(j, "y", at), at + "/y");
  expect_size(X.y, X.grid.nodes(), at + "/y");
  X.U = numbers(field(j, "U", at), at + "/U");
  expect_size(X.U, X.grid.nodes(), at + "/U");
  X.h = numbers(field(j, "h", at), at + "/h");
  expect_size(X.h, X.grid.cells, at + "/h");
  X.r_bar = numbers(field(j, "r_bar", at), at + "/r_bar");
  expect_size(X.r_bar, X.grid.cells, at + "/r_bar");
  X.k = number(field(j, "k", at), at + "/k");
  for (const char* key : {"y_xi", "U_xi"}) {
    if (!j.contains(key)) continue;
    const std::string p = at + "/" + key;
    const auto v = numbers(j[key], p);
    expect_size(v, X.grid.cells, p);
    const bool is_y = key[0] == 'y';
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double nodal = is_y ? X.y_xi(i) : X.U_xi(i);
      if (std::abs(v[i] - nodal) > 1e-9 * (1.0 + std::abs(nodal))) {
        throw FormatError(p + "/" + std::to_string(i), "slope disagrees with the nodal values");
      }
    }
  }
  return X;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string(), std::string("malformed JSON: ") + e.what());
  }
}

EulerianState read_eulerian(const std::filesystem::path& path) {
  return eulerian_from_json(read_json(path), path.string() + ":");
}

LagrangianState read_lagrangian(const std::filesystem::path& path) {
  return lagrangian_from_json(read_json(path), path.string() + ":");
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << std::setprecision(17) << "t,x,u,rho,F\n";
  ProjectOptions po;
  po.require_F0 = false;
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const EulerianState e = project(traj.states[s], po);
    for (std::size_t j = 0; j < e.grid.nodes(); ++j) {
      const double left = j > 0 ? e.rho_bar[j - 1] : e.rho_bar.front();
      const double right = j < e.grid.cells ? e.rho_bar[j] : e.rho_bar.back();
      const double x = e.grid.node(j);
      out << traj.times[s] << ',' << x << ',' << e.u[j] << ',' << e.k + 0.5 * (left + right) << ','
          << e.mu.F(x) << '\n';
    }
  }
  return out.str();
}

namespace {

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "state_%05zu.json", i);
  return buf;
}

const char* status_name(Trajectory::Status s) {
  switch (s) {
    case Trajectory::Status::completed:
      return "completed";
    case Trajectory::Status::nonfinite:
      return "nonfinite";
    case Trajectory::Status::tolerance:
      return "tolerance";
  }
  return "unknown";
}

}  // namespace

json trajectory_meta(const Trajectory& traj, const SolverConfig& cfg) {
  json files = json::array();
  for (std::size_t i = 0; i < traj.states.size(); ++i) files.push_back(snapshot_name(i));
  std::vector<double> min_y_xi;
  min_y_xi.reserve(traj.steps.size());
  double lowest = traj.steps.empty() ? 0.0 : traj.steps.front().min_y_xi;
  for (const auto& s : traj.steps) lowest = std::min(lowest, s.min_y_xi);
  return {{"times", traj.times},
          {"sigma_log", traj.sigma_log},
          {"invariant_residual_log", traj.invariant_residual_log},
          {"min_y_xi", lowest},
          {"steps", traj.steps.empty() ? 0 : traj.steps.size() - 1},
          {"status", status_name(traj.status)},
          {"message", traj.message},
          {"config", to_json(cfg)},
          {"snapshots", files}};
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj, const SolverConfig& cfg) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < traj.states.size(); ++i) write_atomic(dir / snapshot_name(i), dump(to_json(traj.states[i])));
  write_atomic(dir / "meta.json", dump(trajectory_meta(traj, cfg)));
}

}  // namespace chlab::io
