#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "photomech/errors.hpp"
#include "photomech/output.hpp"
#include "photomech/scenario.hpp"
#include "photomech/verify.hpp"

using namespace photomech;
using nlohmann::json;

namespace {

// Smallest valid scenario: one matter cell, grounded gradient potential on the
// outer faces, deformation frozen, electronic fields free and damped.
json minimal_json() {
  json j;
  j["name"] = "mini";
  j["geometry"] = {{"cells", {1, 1, 1}}, {"matter_extent", {1.0, 1.0, 1.0}}};
  j["material"] = {{"omega0", {1.0, 0.5}}, {"gamma0", 1.0},        {"electronic_inertia", 0.0},
                   {"a", {1.0, 1.5}},      {"beta", {0.2, 0.1}},   {"kappa", {0.3, 0.3}}};
  j["bcs"] = json::array(
      {{{"field", "potential"}, {"face", "all"}, {"value", 0.0}, {"gradient", {-0.5, 0.0, 0.0}}},
       {{"field", "deformation"}, {"face", "volume"}, {"type", "reference"}}});
  j["solver"] = {{"formulation", "dirichlet"}, {"integrator", "backward_euler"},
                 {"dissipative", true},        {"dt", 0.1},
                 {"t_end", 0.3},              {"newton_tol", 1e-12}};
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fresh_dir(const std::string& tag) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("photomech_scenario_" + tag);
  fs::remove_all(dir);
  return dir.string();
}

RunOutputs run_and_write(const ScenarioConfig& cfg, const std::string& dir) {
  Problem problem = build_problem(cfg);
  Trajectory traj = run_problem(problem, cfg.solver);
  return write_run_outputs(cfg, problem.mesh, traj, dir, 0.0);
}

}  // namespace

TEST_CASE("load profiles scale prescribed loads in time") {
  LoadProfile constant;
  CHECK(constant.factor(0.0) == 1.0);
  CHECK(constant.factor(7.3) == 1.0);

  LoadProfile ramp{ProfileKind::Ramp, 2.0};
  CHECK(ramp.factor(0.0) == 0.0);
  CHECK(ramp.factor(1.0) == doctest::Approx(0.5));
  CHECK(ramp.factor(2.0) == 1.0);
  CHECK(ramp.factor(5.0) == 1.0);

  LoadProfile step{ProfileKind::Step, 0.5};
  CHECK(step.factor(0.4) == 0.0);
  CHECK(step.factor(0.5) == 1.0);
  CHECK(step.factor(2.0) == 1.0);

  LoadProfile degenerate{ProfileKind::Ramp, 0.0};  // zero-duration ramp acts instantly
  CHECK(degenerate.factor(0.0) == 1.0);
}

TEST_CASE("parse errors name the offending field") {
  json j = minimal_json();
  j["geometry"].erase("cells");
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("geometry.cells"), ConfigError);

  j = minimal_json();
  j["solver"].erase("dt");
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("solver.dt"), ConfigError);

  j = minimal_json();
  j["bcs"][0]["face"] = "front";
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("front"), ConfigError);

  j = minimal_json();
  j["bcs"][0]["field"] = "pressure";
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("pressure"), ConfigError);

  j = minimal_json();
  j["loads"] = {{"profile", {{"kind", "linear"}}}};
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("linear"), ConfigError);

  j = minimal_json();
  j["solver"]["formulation"] = "ritz";
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("ritz"), ConfigError);

  j = minimal_json();
  j["solver"]["integrator"] = "verlet";
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("verlet"), ConfigError);

  j = minimal_json();
  j["loads"] = {{"surface", json::array({{{"face", "volume"}, {"surface_charge", 1.0}}})}};
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("volume"), ConfigError);

  j = minimal_json();
  j["seed"] = -3;
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("seed"), ConfigError);
}

TEST_CASE("structural validation catches singular constraint sets") {
  json j = minimal_json();
  j["bcs"].erase(0);  // drop the potential condition
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("potential"), ConfigError);

  j = minimal_json();
  j["bcs"].erase(1);  // drop the deformation condition
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("deformation"), ConfigError);

  j = minimal_json();
  j["geometry"]["cells"] = {0, 1, 1};
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("geometry.cells"), ConfigError);

  j = minimal_json();
  j["geometry"]["shell_cells"] = 2;  // shell without a thickness
  CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("shell_thickness"), ConfigError);
}

TEST_CASE("scenario json round trip is the identity on the manifest form") {
  json j = minimal_json();
  j["loads"] = {{"bulk", {{"free_charge", 0.25}, {"body_force", {0.0, 0.1, 0.0}}}},
                {"surface", json::array({{{"face", "x+"},
                                          {"traction", {0.0, 0.0, -0.3}},
                                          {"electronic_flux_cis", {0.1, 0.0, 0.0}}}})},
                {"profile", {{"kind", "ramp"}, {"t0", 0.7}}}};
  j["outputs"] = {{"directory", "elsewhere"}, {"snapshot_stride", 3}};
  j["seed"] = 42;

  ScenarioConfig cfg = parse_scenario(j);
  json echo = scenario_to_json(cfg);
  ScenarioConfig cfg2 = parse_scenario(echo);
  CHECK(scenario_to_json(cfg2) == echo);

  CHECK(cfg.loads.surface.size() == 1);
  CHECK(cfg.loads.surface[0].face == 1);
  CHECK(cfg.loads.surface[0].loads.traction[2] == -0.3);
  CHECK(cfg.profile.kind == ProfileKind::Ramp);
  CHECK(cfg.snapshot_stride == 3);
  CHECK(cfg.seed == 42);
}

TEST_CASE("build_problem wires boundary values and time-profiled loads") {
  json j = minimal_json();
  j["loads"] = {{"bulk", {{"free_charge", 0.8}}},
                {"surface", json::array({{{"face", "y+"}, {"traction", {0.0, 0.0, 0.4}}}})},
                {"profile", {{"kind", "ramp"}, {"t0", 2.0}}}};
  ScenarioConfig cfg = parse_scenario(j);
  Problem problem = build_problem(cfg);

  // 8 nodes; potential and deformation fully prescribed, both electronic
  // species free: 2 species x 3 components x 8 nodes.
  CHECK(problem.mesh.nodes.size() == 8);
  CHECK(problem.layout.count == 48);

  FieldState state = initial_state(problem);
  for (size_t n = 0; n < problem.mesh.nodes.size(); ++n) {
    CHECK(state.potential[n] == doctest::Approx(-0.5 * problem.mesh.nodes[n][0]));
    CHECK(norm(state.position[n] - problem.mesh.nodes[n]) == 0.0);
  }

  DiscreteLoads half = problem.loads_at(1.0);
  CHECK(half.bulk.free_charge == doctest::Approx(0.4));
  REQUIRE(half.surface.size() == 1);
  CHECK(half.surface[0].face == 3);
  CHECK(half.surface[0].loads.traction[2] == doctest::Approx(0.2));
  CHECK(problem.loads_at(0.0).bulk.free_charge == 0.0);
  CHECK(problem.loads_at(5.0).bulk.free_charge == doctest::Approx(0.8));
}

TEST_CASE("run outputs are byte-identical across reruns") {
  ScenarioConfig cfg = parse_scenario(minimal_json());
  std::string dir_a = fresh_dir("rerun_a");
  std::string dir_b = fresh_dir("rerun_b");
  RunOutputs out_a = run_and_write(cfg, dir_a);
  RunOutputs out_b = run_and_write(cfg, dir_b);

  CHECK(out_a.snapshot_count == 4);  // 3 steps + initial state at stride 1
  CHECK(slurp(out_a.trajectory_csv) == slurp(out_b.trajectory_csv));
  CHECK(slurp(dir_a + "/snapshot_000003.csv") == slurp(dir_b + "/snapshot_000003.csv"));

  // The damped electronic field must actually have moved.
  std::string last = slurp(dir_a + "/snapshot_000003.csv");
  ScenarioConfig probe_cfg = cfg;
  CHECK(last.find("trans_x") != std::string::npos);
  std::istringstream traj(slurp(out_a.trajectory_csv));
  std::string line;
  std::getline(traj, line);  // units comment
  std::getline(traj, line);  // header
  CHECK(line.find("order_trans_max") != std::string::npos);
}

TEST_CASE("plot extraction reads a finished run directory") {
  ScenarioConfig cfg = parse_scenario(minimal_json());
  std::string dir = fresh_dir("plots");
  run_and_write(cfg, dir);

  std::string out = dir + "/plots";
  std::vector<std::string> files =
      emit_plot_data(dir, {"energy", "multipliers", "norms", "probe:order_trans:0"}, out);
  CHECK(files.size() == 4);

  std::istringstream energy(slurp(out + "/energy.csv"));
  std::string line;
  std::getline(energy, line);
  CHECK(line == "# units: nondimensional");
  std::getline(energy, line);
  CHECK(line == "t,kinetic,potential,dissipated,total");
  int rows = 0;
  while (std::getline(energy, line)) ++rows;
  CHECK(rows == 4);

  std::istringstream probe(slurp(out + "/probe_order_trans_0.csv"));
  std::getline(probe, line);
  std::getline(probe, line);
  CHECK(line == "t,trans_x,trans_y,trans_z");

  CHECK_THROWS_AS(emit_plot_data(dir, {"zeta"}, out), UnknownField);
  CHECK_THROWS_WITH_AS(emit_plot_data(dir, {"probe:potential:9999"}, out),
                       doctest::Contains("node"), ConfigError);

  // Sparse snapshots cannot support per-step probes.
  ScenarioConfig sparse = cfg;
  sparse.snapshot_stride = 2;
  std::string sparse_dir = fresh_dir("plots_sparse");
  run_and_write(sparse, sparse_dir);
  CHECK_THROWS_WITH_AS(emit_plot_data(sparse_dir, {"probe:potential:0"}, sparse_dir + "/plots"),
                       doctest::Contains("snapshot_stride"), ConfigError);
}

TEST_CASE("verification suite passes at the fast level") {
  VerifyOptions opt;
  opt.level = VerifyLevel::Fast;
  std::vector<CheckResult> results = run_verification(opt);
  CHECK(results.size() == 12);
  for (const CheckResult& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
  CHECK(all_passed(results));
}

TEST_CASE("mutation canary trips exactly the stress equivalence check") {
  VerifyOptions opt;
  opt.level = VerifyLevel::Fast;
  opt.flip_coupling_stress_sign = true;
  std::vector<CheckResult> results = run_verification(opt);
  CHECK_FALSE(all_passed(results));
  for (const CheckResult& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed == (r.name != "energy-momentum-equivalence"));
  }
}

TEST_CASE("verification report is deterministic for a fixed seed") {
  VerifyOptions opt;
  opt.level = VerifyLevel::Fast;
  opt.seed = 7;
  std::string a = verification_report_json(opt, run_verification(opt));
  std::string b = verification_report_json(opt, run_verification(opt));
  CHECK(a == b);

  json report = json::parse(a);
  CHECK(report.at("level") == "fast");
  CHECK(report.at("seed") == 7);
  CHECK(report.at("mutation_canary") == false);
  CHECK(report.at("all_passed") == true);
  CHECK(report.at("checks").size() == 12);
  CHECK(report.at("checks")[0].contains("name"));
  CHECK(report.at("checks")[0].contains("detail"));
}
