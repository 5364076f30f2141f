#pragma once

#include <string>
#include <vector>

#include "photomech/scenario.hpp"

namespace photomech {

// Files written by one run. trajectory.csv is byte-identical across reruns of
// the same scenario (all numbers printed with %.17g); the manifest carries
// wall time and may differ.
struct RunOutputs {
  std::string directory;
  std::string trajectory_csv;
  std::string manifest_json;
  int snapshot_count = 0;
};

RunOutputs write_run_outputs(const ScenarioConfig& cfg, const HexMesh& mesh,
                             const Trajectory& traj, const std::string& directory,
                             double wall_seconds);

// Extracts columnar plot files from a completed run directory. Accepted field
// names:
//   energy              t, kinetic, potential, dissipated, total
//   multipliers         t, lambda_norm, lambda_mech_norm, constraint_residual
//   norms               t, per-field max norms
//   probe:<field>:<node>  nodal history; <field> is potential, order_trans,
//                         order_cis, or position; needs snapshot_stride 1
// Throws UnknownField for unknown names, ConfigError for missing inputs.
// Returns the written file paths.
std::vector<std::string> emit_plot_data(const std::string& run_dir,
                                        const std::vector<std::string>& fields,
                                        const std::string& out_dir);

}  // namespace photomech
