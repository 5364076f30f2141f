#include "photomech/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "photomech/errors.hpp"

namespace photomech {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

std::string snapshot_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06d.csv", index);
  return buf;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_norm(const std::vector<Vec3>& v) {
  double m = 0;
  for (const Vec3& x : v) m = std::max(m, norm(x));
  return m;
}

std::string trajectory_csv(const Trajectory& traj, const HexMesh& mesh) {
  std::string out =
      "# units: nondimensional\n"
      "time,kinetic,potential,external,dissipated,newton_iterations,residual_norm,"
      "lambda_norm,lambda_mech_norm,constraint_residual,"
      "potential_max,order_trans_max,order_cis_max,displacement_max\n";
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const StepDiagnostics& d = traj.diagnostics[k];
    const FieldState& s = traj.states[k];
    std::vector<Vec3> displacement(s.position.size());
    for (size_t n = 0; n < s.position.size(); ++n)
      displacement[n] = s.position[n] - mesh.nodes[n];
    out += fmt(d.time) + ',' + fmt(d.kinetic) + ',' + fmt(d.potential) + ',' + fmt(d.external) +
           ',' + fmt(d.dissipated_cum) + ',' + std::to_string(d.newton_iterations) + ',' +
           fmt(d.residual_norm) + ',' + fmt(d.lambda_norm) + ',' + fmt(d.lambda_mech_norm) + ',' +
           fmt(d.constraint_residual) + ',' + fmt(max_abs(s.potential)) + ',' +
           fmt(max_norm(s.order_trans)) + ',' + fmt(max_norm(s.order_cis)) + ',' +
           fmt(max_norm(displacement)) + '\n';
  }
  return out;
}

std::string snapshot_csv(const FieldState& s, const HexMesh& mesh) {
  std::string out =
      "# units: nondimensional\n"
      "node,x,y,z,matter,potential,trans_x,trans_y,trans_z,"
      "cis_x,cis_y,cis_z,pos_x,pos_y,pos_z\n";
  for (size_t n = 0; n < mesh.nodes.size(); ++n) {
    const Vec3& X = mesh.nodes[n];
    out += std::to_string(n) + ',' + fmt(X[0]) + ',' + fmt(X[1]) + ',' + fmt(X[2]) + ',' +
           (mesh.node_in_matter[n] ? '1' : '0') + ',' + fmt(s.potential[n]);
    for (int i = 0; i < 3; ++i) out += ',' + fmt(s.order_trans[n][i]);
    for (int i = 0; i < 3; ++i) out += ',' + fmt(s.order_cis[n][i]);
    for (int i = 0; i < 3; ++i) out += ',' + fmt(s.position[n][i]);
    out += '\n';
  }
  return out;
}

// Minimal CSV reader for the files this module writes: a leading # comment,
// one header row, numeric cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return int(i);
    throw ConfigError("column " + name + " not found");
  }
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  Table t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (t.columns.empty()) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size()) throw ConfigError("ragged row in " + path);
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw ConfigError("no header in " + path);
  return t;
}

std::string write_columns(const std::string& path, const std::vector<std::string>& names,
                          const std::vector<std::vector<double>>& cols) {
  std::string out = "# units: nondimensional\n";
  for (size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  out += '\n';
  for (size_t r = 0; r < cols.at(0).size(); ++r) {
    for (size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + fmt(cols[i][r]);
    out += '\n';
  }
  write_file(path, out);
  return path;
}

}  // namespace

RunOutputs write_run_outputs(const ScenarioConfig& cfg, const HexMesh& mesh,
                             const Trajectory& traj, const std::string& directory,
                             double wall_seconds) {
  RunOutputs out;
  out.directory = directory;
  fs::create_directories(directory);

  out.trajectory_csv = (fs::path(directory) / "trajectory.csv").string();
  write_file(out.trajectory_csv, trajectory_csv(traj, mesh));

  if (cfg.snapshot_stride > 0) {
    for (size_t k = 0; k < traj.states.size(); k += cfg.snapshot_stride) {
      const std::string path = (fs::path(directory) / snapshot_name(int(k))).string();
      write_file(path, snapshot_csv(traj.states[k], mesh));
      ++out.snapshot_count;
    }
  }

  nlohmann::json manifest;
  manifest["scenario"] = scenario_to_json(cfg);
  manifest["run"] = {{"tool", "photomech"},
                     {"version", "0.1.0"},
                     {"steps", traj.states.empty() ? 0 : int(traj.states.size()) - 1},
                     {"snapshots", out.snapshot_count},
                     {"wall_seconds", wall_seconds}};
  out.manifest_json = (fs::path(directory) / "manifest.json").string();
  write_file(out.manifest_json, manifest.dump(2) + "\n");
  return out;
}

namespace {

std::vector<std::string> probe_columns(const std::string& field) {
  if (field == "potential") return {"potential"};
  if (field == "order_trans") return {"trans_x", "trans_y", "trans_z"};
  if (field == "order_cis") return {"cis_x", "cis_y", "cis_z"};
  if (field == "position") return {"pos_x", "pos_y", "pos_z"};
  throw UnknownField("unknown probe field '" + field + "'");
}

std::string emit_probe(const std::string& run_dir, const std::string& spec,
                       const Table& trajectory, const std::string& out_dir) {
  // spec = probe:<field>:<node>
  const size_t c1 = spec.find(':'), c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw UnknownField("probe request '" + spec + "' must be probe:<field>:<node>");
  const std::string field = spec.substr(c1 + 1, c2 - c1 - 1);
  const std::vector<std::string> cols = probe_columns(field);
  int node = -1;
  try {
    node = std::stoi(spec.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ConfigError("probe node in '" + spec + "' must be an integer");
  }

  const int steps = int(trajectory.rows.size());
  const int tcol = trajectory.column("time");
  std::vector<std::vector<double>> data(1 + cols.size());
  for (int k = 0; k < steps; ++k) {
    const std::string snap = (fs::path(run_dir) / snapshot_name(k)).string();
    if (!fs::exists(snap))
      throw ConfigError("probe plots need a snapshot per step (snapshot_stride 1); missing " +
                        snap);
    Table t = read_table(snap);
    if (node < 0 || node >= int(t.rows.size()))
      throw ConfigError("probe node " + std::to_string(node) + " out of range (mesh has " +
                        std::to_string(t.rows.size()) + " nodes)");
    data[0].push_back(trajectory.rows[k][tcol]);
    for (size_t i = 0; i < cols.size(); ++i)
      data[1 + i].push_back(t.rows[node][t.column(cols[i])]);
  }

  std::vector<std::string> names = {"t"};
  for (const std::string& c : cols) names.push_back(c);
  const std::string path =
      (fs::path(out_dir) / ("probe_" + field + "_" + std::to_string(node) + ".csv")).string();
  return write_columns(path, names, data);
}

}  // namespace

std::vector<std::string> emit_plot_data(const std::string& run_dir,
                                        const std::vector<std::string>& fields,
                                        const std::string& out_dir) {
  const Table traj = read_table((fs::path(run_dir) / "trajectory.csv").string());
  fs::create_directories(out_dir);

  auto col = [&](const std::string& name) {
    std::vector<double> v;
    const int c = traj.column(name);
    for (const auto& row : traj.rows) v.push_back(row[c]);
    return v;
  };

  std::vector<std::string> written;
  for (const std::string& field : fields) {
    if (field == "energy") {
      std::vector<double> t = col("time"), kin = col("kinetic"), pot = col("potential"),
                          dis = col("dissipated");
      std::vector<double> total(t.size());
      for (size_t i = 0; i < t.size(); ++i) total[i] = kin[i] + pot[i] + dis[i];
      written.push_back(write_columns((fs::path(out_dir) / "energy.csv").string(),
                                      {"t", "kinetic", "potential", "dissipated", "total"},
                                      {t, kin, pot, dis, total}));
    } else if (field == "multipliers") {
      written.push_back(write_columns(
          (fs::path(out_dir) / "multipliers.csv").string(),
          {"t", "lambda_norm", "lambda_mech_norm", "constraint_residual"},
          {col("time"), col("lambda_norm"), col("lambda_mech_norm"),
           col("constraint_residual")}));
    } else if (field == "norms") {
      written.push_back(write_columns(
          (fs::path(out_dir) / "norms.csv").string(),
          {"t", "potential_max", "order_trans_max", "order_cis_max", "displacement_max"},
          {col("time"), col("potential_max"), col("order_trans_max"), col("order_cis_max"),
           col("displacement_max")}));
    } else if (field.rfind("probe:", 0) == 0) {
      written.push_back(emit_probe(run_dir, field, traj, out_dir));
    } else {
      throw UnknownField("unknown plot field '" + field +
                         "' (expected energy/multipliers/norms/probe:<field>:<node>)");
    }
  }
  return written;
}

}  // namespace photomech
