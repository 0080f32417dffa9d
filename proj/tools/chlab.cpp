// chlab: command-line front end for the Eulerian/Lagrangian CH toolkit.
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chlab/diagnostics.hpp"
#include "chlab/dynamics.hpp"
#include "chlab/io.hpp"
#include "chlab/mollifier.hpp"
#include "chlab/mollify.hpp"
#include "chlab/reference.hpp"
#include "chlab/transforms.hpp"

namespace fs = std::filesystem;
using namespace chlab;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Validation failure: exit code 1 after the report has been printed.
struct Invalid {};

struct Manifest {
  std::string command;
  std::vector<std::string> inputs;
  json config = nullptr;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const fs::path& next_to) const {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j{{"command", command}, {"inputs", inputs}, {"config", config}, {"tool_version", kVersion}, {"wall_time", wall}};
    fs::path p = fs::is_directory(next_to) ? next_to / "manifest.json" : fs::path(next_to.string() + ".manifest.json");
    io::write_atomic(p, io::dump(j));
  }
};

void emit(const json& j, const std::string& out, const Manifest& m) {
  if (out.empty()) {
    std::cout << io::dump(j);
    return;
  }
  io::write_atomic(out, io::dump(j));
  m.write(out);
}

void print_violations(const std::vector<Violation>& v) {
  for (const auto& e : v) std::cerr << "violation: " << e.kind << " at " << e.index << " (" << e.magnitude << ")\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("CH_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"Camassa-Holm Eulerian/Lagrangian toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string in, out, ref, cand, probes = "auto", csv, n_list = "2,4,8,16,32,64,128";
  int n = 0, stride = 100;
  std::size_t cells = 0;
  double dt = 1e-3, t_end = 1.0, tol = 1e-6, alpha = 2.0, xi = 1.0, c = 1.0, a = 1.0;
  double x0 = -4.0, dx = 0.25;
  std::size_t grid_cells = 32;
  bool strict = false, auto_canonical = false, canonical = false, serial = false;

  auto* validate_cmd = app.add_subcommand("validate", "check the invariants of an Eulerian or Lagrangian state");
  validate_cmd->add_option("--in", in, "state JSON")->required();
  validate_cmd->add_flag("--strict", strict, "reject any compatibility excess");

  auto* mollify_cmd = app.add_subcommand("mollify", "smooth CH data at scale 1/n");
  mollify_cmd->add_option("--n", n, "mollifier scale")->required()->check(CLI::PositiveNumber);
  mollify_cmd->add_option("--in", in)->required();
  mollify_cmd->add_option("--out", out)->required();
  mollify_cmd->add_flag("--serial", serial, "use the full-sum reference kernel");

  auto* lift_cmd = app.add_subcommand("lift", "Eulerian to canonical Lagrangian state");
  lift_cmd->add_option("--in", in)->required();
  lift_cmd->add_option("--out", out)->required();
  lift_cmd->add_option("--cells", cells, "number of xi cells");

  auto* project_cmd = app.add_subcommand("project", "Lagrangian to Eulerian state");
  project_cmd->add_option("--in", in)->required();
  project_cmd->add_option("--out", out)->required();
  project_cmd->add_option("--cells", cells, "number of x cells");
  project_cmd->add_flag("--auto-canonical", auto_canonical, "apply the canonical relabeling when needed");

  auto* relabel_cmd = app.add_subcommand("relabel", "relabel a Lagrangian state");
  relabel_cmd->add_option("--in", in)->required();
  relabel_cmd->add_option("--out", out)->required();
  relabel_cmd->add_flag("--canonical", canonical, "map to the representative with y + H = id")->required();

  auto* evolve_cmd = app.add_subcommand("evolve", "integrate the Lagrangian system with RK4");
  evolve_cmd->add_option("--in", in)->required();
  evolve_cmd->add_option("--dt", dt)->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--t-end", t_end)->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--stride", stride)->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--tolerance", tol, "constraint residual abort threshold");
  evolve_cmd->add_option("--out", out, "trajectory directory")->required();
  evolve_cmd->add_option("--csv", csv, "export t,x,u,rho,F rows");

  auto* report_cmd = app.add_subcommand("report", "distances between two Eulerian states");
  report_cmd->add_option("--ref", ref)->required();
  report_cmd->add_option("--cand", cand)->required();
  report_cmd->add_option("--probes", probes, "'auto' or comma-separated x values");
  report_cmd->add_option("--out", out);

  auto* reference_cmd = app.add_subcommand("reference", "closed-form reference data");
  reference_cmd->require_subcommand(1);
  auto* pa_cmd = reference_cmd->add_subcommand("peakon-antipeakon", "u = 0 with an atom of mass alpha at 0");
  pa_cmd->add_option("--alpha", alpha)->check(CLI::PositiveNumber);
  auto* sp_cmd = reference_cmd->add_subcommand("single-peakon", "u = c exp(-|x|)");
  sp_cmd->add_option("--c", c);
  auto* pair_cmd = reference_cmd->add_subcommand("peakon-pair", "u = c (exp(-|x+a|) - exp(-|x-a|))");
  pair_cmd->add_option("--c", c);
  pair_cmd->add_option("--a", a)->check(CLI::PositiveNumber);
  for (auto* cmd : {pa_cmd, sp_cmd, pair_cmd}) {
    cmd->add_option("--x0", x0, "grid origin");
    cmd->add_option("--dx", dx, "grid step")->check(CLI::PositiveNumber);
    cmd->add_option("--cells", grid_cells, "grid cells")->check(CLI::PositiveNumber);
    cmd->add_option("--out", out);
  }
  auto* limit_cmd = reference_cmd->add_subcommand("limit-check", "scaled gaps n (y_n(xi) - y(xi))");
  limit_cmd->add_option("--alpha", alpha)->check(CLI::PositiveNumber);
  limit_cmd->add_option("--xi", xi);
  limit_cmd->add_option("--n", n_list, "comma-separated scales");
  limit_cmd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Manifest manifest;
  for (int i = 1; i < argc; ++i) manifest.command += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    if (*validate_cmd) {
      manifest.inputs = {in};
      const json j = io::read_json(in);
      std::vector<Violation> v;
      if (j.contains("y")) {
        v = validate_F(io::lagrangian_from_json(j, in + ":"));
      } else {
        EulerianTolerances t;
        t.strict_compatibility = strict;
        v = validate(io::eulerian_from_json(j, in + ":"), t);
      }
      print_violations(v);
      if (!v.empty()) throw Invalid{};
      std::cout << "valid\n";
    } else if (*mollify_cmd) {
      manifest.inputs = {in};
      const EulerianState s = io::read_eulerian(in);
      emit(io::to_json(mollify(s, n, serial ? Execution::serial : Execution::parallel)), out, manifest);
    } else if (*lift_cmd) {
      manifest.inputs = {in};
      const EulerianState s = io::read_eulerian(in);
      LiftOptions opt;
      if (cells > 0) opt.cells = cells;
      emit(io::to_json(lift(s, opt)), out, manifest);
    } else if (*project_cmd) {
      manifest.inputs = {in};
      const LagrangianState X = io::read_lagrangian(in);
      ProjectOptions opt;
      opt.auto_canonical = auto_canonical;
      if (cells > 0) opt.cells = cells;
      const EulerianState s = project(X, opt);
      const auto v = validate(s);
      print_violations(v);
      emit(io::to_json(s), out, manifest);
      if (!v.empty()) throw Invalid{};
    } else if (*relabel_cmd) {
      manifest.inputs = {in};
      emit(io::to_json(gamma(io::read_lagrangian(in))), out, manifest);
    } else if (*evolve_cmd) {
      manifest.inputs = {in};
      const LagrangianState X = io::read_lagrangian(in);
      if (const auto v = validate_F(X); !v.empty()) {
        print_violations(v);
        throw Invalid{};
      }
      const SolverConfig cfg{dt, t_end, stride, tol};
      manifest.config = io::to_json(cfg);
      const Trajectory traj = evolve(X, cfg);
      io::write_trajectory(out, traj, cfg);
      manifest.write(out);
      if (!csv.empty()) {
        io::write_atomic(csv, io::trajectory_csv(traj));
        manifest.write(csv);
      }
      if (!traj.ok()) {
        std::cerr << "evolve stopped early: " << traj.message << "\n";
        throw Invalid{};
      }
    } else if (*report_cmd) {
      manifest.inputs = {ref, cand};
      const EulerianState s1 = io::read_eulerian(ref);
      const EulerianState s2 = io::read_eulerian(cand);
      const std::vector<double> xs = probes == "auto" ? default_probes(s1, s2) : parse_list(probes);
      emit(io::to_json(compare_eulerian(s1, s2, xs)), out, manifest);
    } else if (*reference_cmd) {
      const UniformGrid grid{x0, dx, grid_cells};
      if (*pa_cmd) {
        emit(io::to_json(reference::peakon_antipeakon_breaking(alpha, grid)), out, manifest);
      } else if (*sp_cmd) {
        emit(io::to_json(reference::single_peakon(c, grid)), out, manifest);
      } else if (*pair_cmd) {
        emit(io::to_json(reference::peakon_antipeakon(c, a, grid)), out, manifest);
      } else {
        std::vector<int> ns;
        for (double v : parse_list(n_list)) ns.push_back(static_cast<int>(v));
        json rows = json::array();
        for (const auto& r : reference::mollifier_limit_check(alpha, xi, ns)) {
          rows.push_back({{"n", r.n}, {"scaled_gap_hat", r.scaled_gap_hat}, {"scaled_gap_lift", r.scaled_gap_lift}});
        }
        emit(json{{"alpha", alpha}, {"xi", xi}, {"target", mollifier::Phi_inverse(xi / alpha)}, {"samples", rows}},
             out, manifest);
      }
    }
  } catch (const Invalid&) {
    return 1;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
