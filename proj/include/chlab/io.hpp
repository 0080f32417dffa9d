#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "chlab/diagnostics.hpp"
#include "chlab/dynamics.hpp"
#include "chlab/eulerian.hpp"
#include "chlab/lagrangian.hpp"

namespace chlab::io {

using json = nlohmann::json;

/// Malformed or incomplete input; `where` is "file:/json/pointer".
class FormatError : public Error {
 public:
  FormatError(const std::string& where, const std::string& what) : Error(where + ": " + what), where_(where) {}
  [[nodiscard]] const std::string& where() const { return where_; }

 private:
  std::string where_;
};

json to_json(const UniformGrid& g);
json to_json(const CumulativeMeasure& m);
json to_json(const EulerianState& s);
json to_json(const LagrangianState& X);
json to_json(const ConvergenceReport& r);
json to_json(const SolverConfig& c);

/// Parsers take the JSON pointer prefix used in error messages.
UniformGrid grid_from_json(const json& j, const std::string& at);
CumulativeMeasure measure_from_json(const json& j, const std::string& at);
EulerianState eulerian_from_json(const json& j, const std::string& at);
/// Accepts optional y_xi / U_xi arrays and checks them against the nodal data.
LagrangianState lagrangian_from_json(const json& j, const std::string& at);

/// Parses a file; FormatError carries the path on failure.
json read_json(const std::filesystem::path& path);
EulerianState read_eulerian(const std::filesystem::path& path);
LagrangianState read_lagrangian(const std::filesystem::path& path);

/// Sorted keys, shortest round-trip doubles, trailing newline.
std::string dump(const json& j);
/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& text);

/// Rows t,x,u,rho,F per snapshot and node of the projected states.
std::string trajectory_csv(const Trajectory& traj);

/// Trajectory index: times, logs, status and snapshot file names.
json trajectory_meta(const Trajectory& traj, const SolverConfig& cfg);
/// Writes meta.json and state_NNNNN.json into dir (created if missing).
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj, const SolverConfig& cfg);

}  // namespace chlab::io
