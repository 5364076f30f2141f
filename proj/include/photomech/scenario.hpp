#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "photomech/solver.hpp"

namespace photomech {

// Scalar time profile multiplying every prescribed load component.
enum class ProfileKind { Constant, Ramp, Step };

struct LoadProfile {
  ProfileKind kind = ProfileKind::Constant;
  double t0 = 1.0;  // ramp duration, or step onset time

  double factor(double t) const;
};

// Complete description of one run: geometry, material, loads with their time
// profile, boundary conditions, solver settings, and output options. The
// JSON form is the on-disk scenario format; scenario_to_json(parse(j)) is an
// equivalence (manifest round trip).
struct ScenarioConfig {
  std::string name = "unnamed";
  std::string units = "nondimensional";
  BoxMeshSpec geometry;
  MaterialParams material;
  DiscreteLoads loads;
  LoadProfile profile;
  std::vector<BoundaryCondition> bcs;
  SolverConfig solver;
  std::string output_directory = "out";
  int snapshot_stride = 1;  // write every k-th state; 0 disables snapshots
  unsigned long seed = 0;   // reserved for stochastic extensions; echoed to outputs

  // Structural checks beyond per-field parsing: positive extents, at least
  // one potential and one deformation constraint (both blocks are otherwise
  // singular under pure flux loading). Throws ConfigError.
  void validate() const;
};

// Face names used by the JSON form: x-, x+, y-, y+, z-, z+ map to ids 0..5,
// "all" to -1 (all outer faces), "volume" to -2 (every node).
int parse_face_name(const std::string& name);
std::string face_name(int face);

ScenarioConfig parse_scenario(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

// Reads and parses a scenario file. ConfigError mentions the path on i/o or
// syntax problems and the dotted field path on semantic ones.
ScenarioConfig load_scenario(const std::string& path);

// Mesh + dof layout + material + time-profiled loads, ready for a solver.
Problem build_problem(const ScenarioConfig& cfg);

// Dispatches on formulation:
//   Dirichlet          -> quasi-static incremental minimization
//   HamiltonPrinciple  -> second-order (Lagrangian) dynamics
//   HamiltonEquations  -> first-order phase-space dynamics
Trajectory run_problem(const Problem& problem, const SolverConfig& solver);
Trajectory run_scenario(const ScenarioConfig& cfg);

}  // namespace photomech
