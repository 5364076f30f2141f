#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "photomech/errors.hpp"
#include "photomech/output.hpp"
#include "photomech/scenario.hpp"
#include "photomech/verify.hpp"

namespace {

using namespace photomech;

const char* output_dir_env() { return std::getenv("PHOTOMECH_OUTPUT_DIR"); }

int do_run(const std::string& config_path) {
  ScenarioConfig cfg = load_scenario(config_path);
  std::string dir = cfg.output_directory;
  if (const char* env = output_dir_env())
    dir = (std::filesystem::path(env) / cfg.name).string();

  const auto t0 = std::chrono::steady_clock::now();
  Problem pr = build_problem(cfg);
  Trajectory traj = run_problem(pr, cfg.solver);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunOutputs out = write_run_outputs(cfg, pr.mesh, traj, dir, wall);
  const StepDiagnostics& last = traj.diagnostics.back();
  std::cout << "scenario " << cfg.name << ": " << traj.states.size() - 1 << " steps in " << wall
            << " s\n"
            << "  final energy: kinetic " << last.kinetic << ", potential " << last.potential
            << ", dissipated " << last.dissipated_cum << "\n"
            << "  wrote " << out.trajectory_csv << " and " << out.snapshot_count
            << " snapshots\n";
  return 0;
}

int do_verify(const std::string& level, unsigned long seed, bool canary,
              std::string report_path) {
  VerifyOptions opt;
  opt.level = level == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
  opt.seed = seed;
  opt.flip_coupling_stress_sign = canary;

  const std::vector<CheckResult> results = run_verification(opt);
  for (const CheckResult& r : results)
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
  const bool ok = all_passed(results);
  std::cout << (ok ? "verification passed" : "verification FAILED") << " (" << results.size()
            << " checks, level " << level << ", seed " << seed << ")\n";

  if (report_path.empty()) {
    std::filesystem::path base = output_dir_env() ? output_dir_env() : ".";
    report_path = (base / "verify_report.json").string();
  }
  std::filesystem::path parent = std::filesystem::path(report_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write report " + report_path);
  out << verification_report_json(opt, results);
  std::cout << "report: " << report_path << "\n";
  return ok ? 0 : 1;
}

int do_plot(const std::string& run_dir, const std::vector<std::string>& fields,
            std::string out_dir) {
  if (out_dir.empty()) {
    out_dir = output_dir_env() ? output_dir_env()
                               : (std::filesystem::path(run_dir) / "plots").string();
  }
  for (const std::string& path : emit_plot_data(run_dir, fields, out_dir))
    std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photomech: coupled electric/electronic/mechanical simulation kernel"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a scenario and write its outputs");
  run->add_option("config", config_path, "scenario JSON file")->required();

  std::string level = "fast";
  unsigned long seed = 20260823;
  bool canary = false;
  std::string report_path;
  CLI::App* verify = app.add_subcommand("verify", "run the identity-verification suite");
  verify->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--seed", seed, "RNG seed for verification sampling");
  verify->add_flag("--inject-coupling-sign-error", canary,
                   "mutation canary: corrupt one identity and expect a reported failure");
  verify->add_option("--report", report_path, "path of the JSON report");

  std::string run_dir, plot_out;
  std::vector<std::string> fields;
  CLI::App* plot = app.add_subcommand("plot", "extract columnar plot data from a run directory");
  plot->add_option("trajectory", run_dir, "run output directory")->required();
  plot->add_option("--fields", fields,
                   "comma-separated: energy, multipliers, norms, probe:<field>:<node>")
      ->required()
      ->delimiter(',');
  plot->add_option("--out", plot_out, "output directory for the plot files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad invocation is a config error
  }

  try {
    if (run->parsed()) return do_run(config_path);
    if (verify->parsed()) return do_verify(level, seed, canary, report_path);
    if (plot->parsed()) return do_plot(run_dir, fields, plot_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownField& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
