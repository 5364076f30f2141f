#include "photomech/scenario.hpp"

#include <algorithm>
#include <fstream>

#include "photomech/errors.hpp"

namespace photomech {

using nlohmann::json;

double LoadProfile::factor(double t) const {
  switch (kind) {
    case ProfileKind::Constant:
      return 1.0;
    case ProfileKind::Ramp:
      return t0 > 0 ? std::clamp(t / t0, 0.0, 1.0) : 1.0;
    case ProfileKind::Step:
      return t < t0 ? 0.0 : 1.0;
  }
  return 1.0;
}

int parse_face_name(const std::string& name) {
  static const char* names[6] = {"x-", "x+", "y-", "y+", "z-", "z+"};
  for (int f = 0; f < 6; ++f)
    if (name == names[f]) return f;
  if (name == "all") return -1;
  if (name == "volume") return -2;
  throw ConfigError("unknown face name '" + name + "' (expected x-/x+/y-/y+/z-/z+/all/volume)");
}

std::string face_name(int face) {
  static const char* names[6] = {"x-", "x+", "y-", "y+", "z-", "z+"};
  if (face == -1) return "all";
  if (face == -2) return "volume";
  if (face < 0 || face > 5) throw ConfigError("face id out of range");
  return names[face];
}

void ScenarioConfig::validate() const {
  for (int k = 0; k < 3; ++k) {
    if (geometry.matter_cells[k] < 1) throw ConfigError("geometry.cells must be positive");
    if (geometry.matter_size[k] <= 0) throw ConfigError("geometry.matter_extent must be positive");
  }
  if (geometry.shell_cells < 0) throw ConfigError("geometry.shell_cells must be nonnegative");
  if (geometry.shell_cells > 0 && geometry.shell_thickness <= 0)
    throw ConfigError("geometry.shell_thickness must be positive when a shell is present");
  material.validate();
  solver.validate();
  if (snapshot_stride < 0) throw ConfigError("outputs.snapshot_stride must be nonnegative");

  bool has_potential = false, has_deformation = false;
  for (const BoundaryCondition& bc : bcs) {
    has_potential |= bc.field == Field::Potential;
    has_deformation |= bc.field == Field::Deformation;
  }
  if (!has_potential)
    throw ConfigError("bcs must constrain the electric potential somewhere; "
                      "a pure-flux electrostatic problem is singular");
  if (!has_deformation)
    throw ConfigError("bcs must constrain the deformation somewhere; "
                      "rigid translations are otherwise unconstrained");
}

namespace {

// All lookups carry the dotted path so ConfigError names the offending field.
const json& require(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError("missing required field " + (ctx.empty() ? key : ctx + "." + key));
  return j.at(key);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("field " + path + " must be a number");
  return j.get<double>();
}

double get_number(const json& j, const std::string& key, const std::string& ctx, double dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  return number_at(j.at(key), ctx + "." + key);
}

int get_int(const json& j, const std::string& key, const std::string& ctx, int dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("field " + ctx + "." + key + " must be an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& ctx,
                       const std::string& dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("field " + ctx + "." + key + " must be a string");
  return v.get<std::string>();
}

Vec3 vec3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("field " + path + " must be an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = number_at(j.at(i), path);
  return v;
}

Vec3 get_vec3(const json& j, const std::string& key, const std::string& ctx, const Vec3& dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  return vec3_at(j.at(key), ctx + "." + key);
}

Mat3 mat3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("field " + path + " must be an array of 3 rows");
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    Vec3 row = vec3_at(j.at(i), path);
    for (int k = 0; k < 3; ++k) m(i, k) = row[k];
  }
  return m;
}

Species<double> get_species(const json& j, const std::string& key, const std::string& ctx,
                            const Species<double>& dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2)
    throw ConfigError("field " + ctx + "." + key + " must be an array [trans, cis]");
  return {number_at(v.at(0), ctx + "." + key), number_at(v.at(1), ctx + "." + key)};
}

std::array<int, 3> int3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("field " + path + " must be an array of 3 integers");
  std::array<int, 3> v{};
  for (int i = 0; i < 3; ++i) {
    if (!j.at(i).is_number_integer()) throw ConfigError("field " + path + " must hold integers");
    v[i] = j.at(i).get<int>();
  }
  return v;
}

Field parse_field_name(const std::string& name, const std::string& path) {
  if (name == "potential") return Field::Potential;
  if (name == "order_trans") return Field::OrderTrans;
  if (name == "order_cis") return Field::OrderCis;
  if (name == "deformation") return Field::Deformation;
  throw ConfigError("unknown field name '" + name + "' in " + path +
                    " (expected potential/order_trans/order_cis/deformation)");
}

std::string field_name(Field f) {
  switch (f) {
    case Field::Potential: return "potential";
    case Field::OrderTrans: return "order_trans";
    case Field::OrderCis: return "order_cis";
    case Field::Deformation: return "deformation";
  }
  return "potential";
}

MaterialParams parse_material(const json& j) {
  MaterialParams m;
  const std::string ctx = "material";
  m.epsilon0 = get_number(j, "epsilon0", ctx, m.epsilon0);
  m.omega0 = get_species(j, "omega0", ctx, m.omega0);
  m.gamma0 = get_number(j, "gamma0", ctx, m.gamma0);
  m.electronic_inertia = get_number(j, "electronic_inertia", ctx, m.electronic_inertia);
  m.mass_density = get_number(j, "mass_density", ctx, m.mass_density);
  m.mu = get_number(j, "mu", ctx, m.mu);
  m.lambda = get_number(j, "lambda", ctx, m.lambda);
  m.a = get_species(j, "a", ctx, m.a);
  m.beta = get_species(j, "beta", ctx, m.beta);
  m.kappa = get_species(j, "kappa", ctx, m.kappa);
  m.eta = get_number(j, "eta", ctx, 1e-6 * m.mu);
  return m;
}

json material_to_json(const MaterialParams& m) {
  return json{{"epsilon0", m.epsilon0},
              {"omega0", {m.omega0.trans, m.omega0.cis}},
              {"gamma0", m.gamma0},
              {"electronic_inertia", m.electronic_inertia},
              {"mass_density", m.mass_density},
              {"mu", m.mu},
              {"lambda", m.lambda},
              {"a", {m.a.trans, m.a.cis}},
              {"beta", {m.beta.trans, m.beta.cis}},
              {"kappa", {m.kappa.trans, m.kappa.cis}},
              {"eta", m.eta}};
}

BulkLoads parse_bulk(const json& j, const std::string& ctx) {
  BulkLoads b;
  b.free_charge = get_number(j, "free_charge", ctx, 0.0);
  b.electronic_force.trans = get_vec3(j, "electronic_force_trans", ctx, {});
  b.electronic_force.cis = get_vec3(j, "electronic_force_cis", ctx, {});
  b.body_force = get_vec3(j, "body_force", ctx, {});
  return b;
}

SurfaceLoads parse_surface(const json& j, const std::string& ctx) {
  SurfaceLoads s;
  s.surface_charge = get_number(j, "surface_charge", ctx, 0.0);
  s.electronic_flux.trans = get_vec3(j, "electronic_flux_trans", ctx, {});
  s.electronic_flux.cis = get_vec3(j, "electronic_flux_cis", ctx, {});
  s.traction = get_vec3(j, "traction", ctx, {});
  return s;
}

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json bulk_to_json(const BulkLoads& b) {
  return json{{"free_charge", b.free_charge},
              {"electronic_force_trans", vec3_to_json(b.electronic_force.trans)},
              {"electronic_force_cis", vec3_to_json(b.electronic_force.cis)},
              {"body_force", vec3_to_json(b.body_force)}};
}

json surface_to_json(const SurfaceLoads& s) {
  return json{{"surface_charge", s.surface_charge},
              {"electronic_flux_trans", vec3_to_json(s.electronic_flux.trans)},
              {"electronic_flux_cis", vec3_to_json(s.electronic_flux.cis)},
              {"traction", vec3_to_json(s.traction)}};
}

}  // namespace

ScenarioConfig parse_scenario(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  ScenarioConfig cfg;
  cfg.name = get_string(j, "name", "", cfg.name);
  cfg.units = get_string(j, "units", "", cfg.units);

  const json& geo = require(j, "geometry", "");
  cfg.geometry.matter_cells = int3_at(require(geo, "cells", "geometry"), "geometry.cells");
  cfg.geometry.matter_size =
      vec3_at(require(geo, "matter_extent", "geometry"), "geometry.matter_extent");
  cfg.geometry.shell_cells = get_int(geo, "shell_cells", "geometry", 0);
  cfg.geometry.shell_thickness = get_number(geo, "shell_thickness", "geometry", 0.0);

  if (j.contains("material")) cfg.material = parse_material(j.at("material"));

  if (j.contains("loads")) {
    const json& lo = j.at("loads");
    if (lo.contains("bulk")) cfg.loads.bulk = parse_bulk(lo.at("bulk"), "loads.bulk");
    if (lo.contains("surface")) {
      const json& sur = lo.at("surface");
      if (!sur.is_array()) throw ConfigError("field loads.surface must be an array");
      for (size_t k = 0; k < sur.size(); ++k) {
        const std::string ctx = "loads.surface[" + std::to_string(k) + "]";
        SurfacePatchLoad patch;
        patch.face = parse_face_name(get_string(sur.at(k), "face", ctx, "all"));
        if (patch.face == -2) throw ConfigError("field " + ctx + ".face cannot be 'volume'");
        patch.loads = parse_surface(sur.at(k), ctx);
        cfg.loads.surface.push_back(patch);
      }
    }
    if (lo.contains("profile")) {
      const json& prof = lo.at("profile");
      const std::string kind = get_string(prof, "kind", "loads.profile", "constant");
      if (kind == "constant")
        cfg.profile.kind = ProfileKind::Constant;
      else if (kind == "ramp")
        cfg.profile.kind = ProfileKind::Ramp;
      else if (kind == "step")
        cfg.profile.kind = ProfileKind::Step;
      else
        throw ConfigError("unknown profile kind '" + kind +
                          "' in loads.profile.kind (expected constant/ramp/step)");
      cfg.profile.t0 = get_number(prof, "t0", "loads.profile", cfg.profile.t0);
    }
  }

  if (j.contains("bcs")) {
    const json& bcs = j.at("bcs");
    if (!bcs.is_array()) throw ConfigError("field bcs must be an array");
    for (size_t k = 0; k < bcs.size(); ++k) {
      const std::string ctx = "bcs[" + std::to_string(k) + "]";
      const json& b = bcs.at(k);
      BoundaryCondition bc;
      bc.field = parse_field_name(
          require(b, "field", ctx).is_string() ? b.at("field").get<std::string>() : "", ctx);
      bc.face = parse_face_name(get_string(b, "face", ctx, "all"));
      if (b.contains("value")) {
        if (bc.field == Field::Potential)
          bc.value = Vec3{number_at(b.at("value"), ctx + ".value"), 0, 0};
        else
          bc.value = vec3_at(b.at("value"), ctx + ".value");
      }
      if (b.contains("gradient")) {
        if (bc.field == Field::Potential) {
          Vec3 g = vec3_at(b.at("gradient"), ctx + ".gradient");
          for (int i = 0; i < 3; ++i) bc.gradient(0, i) = g[i];
        } else {
          bc.gradient = mat3_at(b.at("gradient"), ctx + ".gradient");
        }
      }
      // Shorthand for the reference placement y = X.
      if (bc.field == Field::Deformation && get_string(b, "type", ctx, "") == "reference")
        bc.gradient = Mat3::identity();
      cfg.bcs.push_back(bc);
    }
  }

  const json& so = require(j, "solver", "");
  const std::string form = get_string(so, "formulation", "solver", "dirichlet");
  if (form == "dirichlet")
    cfg.solver.formulation = Formulation::Dirichlet;
  else if (form == "hamilton_principle")
    cfg.solver.formulation = Formulation::HamiltonPrinciple;
  else if (form == "hamilton_equations")
    cfg.solver.formulation = Formulation::HamiltonEquations;
  else
    throw ConfigError("unknown formulation '" + form +
                      "' in solver.formulation "
                      "(expected dirichlet/hamilton_principle/hamilton_equations)");
  const std::string integ = get_string(so, "integrator", "solver", "midpoint");
  if (integ == "midpoint")
    cfg.solver.integrator = Integrator::Midpoint;
  else if (integ == "backward_euler")
    cfg.solver.integrator = Integrator::BackwardEuler;
  else
    throw ConfigError("unknown integrator '" + integ +
                      "' in solver.integrator (expected midpoint/backward_euler)");
  cfg.solver.dissipative = j.contains("solver") && so.contains("dissipative") &&
                           so.at("dissipative").is_boolean() && so.at("dissipative").get<bool>();
  if (so.contains("dissipative") && !so.at("dissipative").is_boolean())
    throw ConfigError("field solver.dissipative must be a boolean");
  cfg.solver.dt = number_at(require(so, "dt", "solver"), "solver.dt");
  cfg.solver.t_end = number_at(require(so, "t_end", "solver"), "solver.t_end");
  cfg.solver.newton_tol = get_number(so, "newton_tol", "solver", cfg.solver.newton_tol);
  cfg.solver.max_iter = get_int(so, "max_iter", "solver", cfg.solver.max_iter);

  if (j.contains("outputs")) {
    const json& out = j.at("outputs");
    cfg.output_directory = get_string(out, "directory", "outputs", cfg.output_directory);
    cfg.snapshot_stride = get_int(out, "snapshot_stride", "outputs", cfg.snapshot_stride);
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0))
      throw ConfigError("field seed must be a nonnegative integer");
    cfg.seed = s.get<unsigned long>();
  }

  cfg.validate();
  return cfg;
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["units"] = cfg.units;
  j["geometry"] = {{"cells", cfg.geometry.matter_cells},
                   {"matter_extent", vec3_to_json(cfg.geometry.matter_size)},
                   {"shell_cells", cfg.geometry.shell_cells},
                   {"shell_thickness", cfg.geometry.shell_thickness}};
  j["material"] = material_to_json(cfg.material);

  json surface = json::array();
  for (const SurfacePatchLoad& patch : cfg.loads.surface) {
    json p = surface_to_json(patch.loads);
    p["face"] = face_name(patch.face);
    surface.push_back(p);
  }
  const char* kind = cfg.profile.kind == ProfileKind::Constant ? "constant"
                     : cfg.profile.kind == ProfileKind::Ramp   ? "ramp"
                                                               : "step";
  j["loads"] = {{"bulk", bulk_to_json(cfg.loads.bulk)},
                {"surface", surface},
                {"profile", {{"kind", kind}, {"t0", cfg.profile.t0}}}};

  json bcs = json::array();
  for (const BoundaryCondition& bc : cfg.bcs) {
    json b;
    b["field"] = field_name(bc.field);
    b["face"] = face_name(bc.face);
    if (bc.field == Field::Potential) {
      b["value"] = bc.value[0];
      b["gradient"] = json::array({bc.gradient(0, 0), bc.gradient(0, 1), bc.gradient(0, 2)});
    } else {
      b["value"] = vec3_to_json(bc.value);
      json rows = json::array();
      for (int i = 0; i < 3; ++i)
        rows.push_back(json::array({bc.gradient(i, 0), bc.gradient(i, 1), bc.gradient(i, 2)}));
      b["gradient"] = rows;
    }
    bcs.push_back(b);
  }
  j["bcs"] = bcs;

  const char* form = cfg.solver.formulation == Formulation::Dirichlet ? "dirichlet"
                     : cfg.solver.formulation == Formulation::HamiltonPrinciple
                         ? "hamilton_principle"
                         : "hamilton_equations";
  j["solver"] = {{"formulation", form},
                 {"integrator",
                  cfg.solver.integrator == Integrator::Midpoint ? "midpoint" : "backward_euler"},
                 {"dissipative", cfg.solver.dissipative},
                 {"dt", cfg.solver.dt},
                 {"t_end", cfg.solver.t_end},
                 {"newton_tol", cfg.solver.newton_tol},
                 {"max_iter", cfg.solver.max_iter}};
  j["outputs"] = {{"directory", cfg.output_directory}, {"snapshot_stride", cfg.snapshot_stride}};
  j["seed"] = cfg.seed;
  return j;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + path + " is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

Problem build_problem(const ScenarioConfig& cfg) {
  cfg.validate();
  Problem pr;
  pr.mesh = build_box_mesh(cfg.geometry);
  pr.layout = build_dof_layout(pr.mesh, cfg.bcs);
  pr.material = cfg.material;
  DiscreteLoads base = cfg.loads;
  LoadProfile profile = cfg.profile;
  pr.loads_at = [base, profile](double t) {
    const double f = profile.factor(t);
    DiscreteLoads scaled = base;
    scaled.bulk.free_charge *= f;
    scaled.bulk.electronic_force = f * scaled.bulk.electronic_force;
    scaled.bulk.body_force = f * scaled.bulk.body_force;
    for (SurfacePatchLoad& patch : scaled.surface) {
      patch.loads.surface_charge *= f;
      patch.loads.electronic_flux = f * patch.loads.electronic_flux;
      patch.loads.traction = f * patch.loads.traction;
    }
    return scaled;
  };
  return pr;
}

Trajectory run_problem(const Problem& problem, const SolverConfig& solver) {
  switch (solver.formulation) {
    case Formulation::Dirichlet:
      return solve_quasistatic(problem, solver);
    case Formulation::HamiltonPrinciple:
      return solve_dynamic_lagrangian(problem, solver, initial_state(problem));
    case Formulation::HamiltonEquations:
      return solve_dynamic_hamiltonian(problem, solver, initial_state(problem));
  }
  throw ConfigError("unknown formulation");
}

Trajectory run_scenario(const ScenarioConfig& cfg) {
  return run_problem(build_problem(cfg), cfg.solver);
}

}  // namespace photomech
