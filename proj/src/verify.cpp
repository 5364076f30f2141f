#include "photomech/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include <json.hpp>

#include "photomech/constitutive.hpp"
#include "photomech/element.hpp"
#include "photomech/errors.hpp"
#include "photomech/scenario.hpp"

namespace photomech {

namespace {

using Rng = std::mt19937_64;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// A check reports its worst observed error against the tolerance it enforces.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string bound_detail(const char* what, double worst, double tol) {
  return std::string(what) + " " + fmt(worst) + " (tol " + fmt(tol) + ")";
}

void enforce(double worst, double tol, const char* what) {
  if (!(worst <= tol)) throw CheckFailure(bound_detail(what, worst, tol));
}

double unif(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 rand_vec(Rng& rng, double amp) {
  return {unif(rng, -amp, amp), unif(rng, -amp, amp), unif(rng, -amp, amp)};
}

Mat3 rand_mat(Rng& rng, double amp) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = unif(rng, -amp, amp);
  return m;
}

// Random deformation gradient with det in [0.5, 2].
Mat3 rand_F(Rng& rng) {
  for (;;) {
    Mat3 F = Mat3::identity() + rand_mat(rng, 0.4);
    const double d = det(F);
    if (d > 0.5 && d < 2.0) return F;
  }
}

MatterPoint rand_point(Rng& rng) {
  MatterPoint pt;
  pt.E = rand_vec(rng, 0.8);
  pt.order = {rand_vec(rng, 0.7), rand_vec(rng, 0.7)};
  pt.order_grad = {rand_mat(rng, 0.5), rand_mat(rng, 0.5)};
  pt.order_rate = {rand_vec(rng, 0.6), rand_vec(rng, 0.6)};
  pt.velocity = rand_vec(rng, 0.6);
  return pt;
}

MaterialParams verification_material() {
  MaterialParams p;
  p.epsilon0 = 1.3;
  p.omega0 = {1.1, 0.7};
  p.gamma0 = 0.8;
  p.electronic_inertia = 0.9;
  p.mass_density = 1.2;
  p.mu = 1.4;
  p.lambda = 0.9;
  p.a = {1.2, 0.8};
  p.beta = {0.5, 0.3};
  p.kappa = {0.7, 0.4};
  return p;
}

// Relative deviation of a computed tensor/vector against a reference,
// normalized by the reference magnitude (floored at 1).
double rel_dev(double diff_norm, double ref_norm) { return diff_norm / std::max(1.0, ref_norm); }

constexpr double kFdStep = 1e-6;

double fd_central(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2 * h);
}

// ---------------------------------------------------------------------------
// Individual checks. Each returns its success detail or throws CheckFailure.

std::string check_kinematic_derivatives(Rng& rng, int samples) {
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    const Mat3 F = rand_F(rng);
    const Kinematics kin = build_kinematics(F);
    const Mat3 dJ = dJ_dF(kin);
    const Tensor4 dfa = df_dF(kin);
    const Tensor4 dKa = dK_dF(kin);

    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        Mat3 Fp = F, Fm = F;
        Fp(m, n) += kFdStep;
        Fm(m, n) -= kFdStep;
        const Kinematics kp = build_kinematics(Fp), km = build_kinematics(Fm);

        worst = std::max(worst, rel_dev(std::abs((kp.J - km.J) / (2 * kFdStep) - dJ(m, n)),
                                        norm(dJ)));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double fdf = (kp.f(i, j) - km.f(i, j)) / (2 * kFdStep);
            const double fdK = (kp.K(i, j) - km.K(i, j)) / (2 * kFdStep);
            worst = std::max(worst, rel_dev(std::abs(fdf - dfa(i, j, m, n)), norm(dfa)));
            worst = std::max(worst, rel_dev(std::abs(fdK - dKa(i, j, m, n)), norm(dKa)));
          }
      }
  }
  enforce(worst, 1e-6, "max relative FD deviation");
  return bound_detail("max relative FD deviation", worst, 1e-6) + ", " +
         std::to_string(samples) + " samples";
}

std::string check_constitutive_gradients(Rng& rng, int samples) {
  const MaterialParams p = verification_material();
  double worst = 0;
  auto track = [&](double diff, double ref) { worst = std::max(worst, rel_dev(diff, ref)); };

  for (int s = 0; s < samples; ++s) {
    MatterPoint pt = rand_point(rng);
    const Mat3 F = rand_F(rng);
    const Kinematics kin = build_kinematics(F);

    const ElectricState es = electric_flux(pt, kin, p);
    const ElectronicState el = electronic_state(pt, kin, p);
    const StressState ss = total_stress(pt, kin, p);

    // Fluxes against -d/dE of the field and coupling energies.
    for (int i = 0; i < 3; ++i) {
      auto em = fd_central(
          [&](double h) {
            Vec3 E = pt.E;
            E[i] += h;
            return electric_energy(E, kin, p);
          },
          kFdStep);
      auto cm = fd_central(
          [&](double h) {
            Vec3 E = pt.E;
            E[i] += h;
            return coupling_energy(pt.order, E, kin, p);
          },
          kFdStep);
      track(std::abs(-em - es.flux_free[i]), norm(es.flux_free));
      track(std::abs(-cm - es.polarization[i]), norm(es.polarization));
      track(std::abs(-(em + cm) - es.flux_total[i]), norm(es.flux_total));
    }

    // Electronic stress and sources against the stored/coupling/dissipation
    // potentials.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        auto g = fd_central(
            [&](double h) {
              Species<Mat3> grad = pt.order_grad;
              grad.trans(i, j) += h;
              return stored_energy(pt.order, grad, kin, p);
            },
            kFdStep);
        track(std::abs(g - el.stress.trans(i, j)), norm(el.stress.trans));
      }
      auto se = fd_central(
          [&](double h) {
            Species<Vec3> order = pt.order;
            order.cis[i] += h;
            return stored_energy(order, pt.order_grad, kin, p);
          },
          kFdStep);
      track(std::abs(se - el.source_energetic.cis[i]), norm(el.source_energetic.cis));
      auto si = fd_central(
          [&](double h) {
            Species<Vec3> order = pt.order;
            order.trans[i] += h;
            return coupling_energy(order, pt.E, kin, p);
          },
          kFdStep);
      track(std::abs(-si - el.ext_source_interior.trans[i]), norm(el.ext_source_interior.trans));
      auto sd = fd_central(
          [&](double h) {
            Species<Vec3> rate = pt.order_rate;
            rate.trans[i] += h;
            return dissipation_potential(rate, kin, p);
          },
          kFdStep);
      track(std::abs(sd - el.source_dissipative.trans[i]), norm(el.source_dissipative.trans));
    }

    // Total first Piola stress against d/dF of the internal energy density.
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        auto dF = fd_central(
            [&](double h) {
              Mat3 Fh = F;
              Fh(m, n) += h;
              return internal_energy(pt.E, pt.order, pt.order_grad, build_kinematics(Fh), p);
            },
            kFdStep);
        track(std::abs(dF - ss.total(m, n)), norm(ss.total));
      }
  }
  enforce(worst, 1e-6, "max relative FD deviation");
  return bound_detail("max relative FD deviation", worst, 1e-6) + ", " +
         std::to_string(samples) + " samples";
}

std::string check_energy_momentum_equivalence(Rng& rng, int samples, bool flip_sign) {
  const MaterialParams p = verification_material();
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    MatterPoint pt = rand_point(rng);
    const Kinematics kin = build_kinematics(rand_F(rng));
    const StressState ss = total_stress(pt, kin, p);
    const Mat3 elec = electric_stress_chain_rule(pt.E, kin, p);
    Mat3 coup = coupling_stress_chain_rule(pt.order, pt.E, kin, p);
    if (flip_sign) coup = -coup;  // mutation canary
    worst = std::max(worst, rel_dev(norm(ss.electric - elec), norm(elec)));
    worst = std::max(worst, rel_dev(norm(ss.coupling - coup), norm(coup)));
  }
  enforce(worst, 1e-12, "max relative deviation between stress routes");
  return bound_detail("max relative deviation between stress routes", worst, 1e-12);
}

std::string check_piola_transforms(Rng& rng, int samples) {
  const MaterialParams p = verification_material();
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    MatterPoint pt = rand_point(rng);
    const Mat3 F = rand_F(rng);
    const Kinematics kin = build_kinematics(F);
    const ElectricState es = electric_flux(pt, kin, p);
    const ElectronicState el = electronic_state(pt, kin, p);
    const StressState ss = total_stress(pt, kin, p);

    // Independent route: true vector = j F (nominal), true tensor =
    // j (nominal) F^T. Both equal right-multiplication by k.
    auto vec_dev = [&](const Vec3& truev, const Vec3& nominal) {
      return rel_dev(norm(truev - kin.j * (F * nominal)), norm(truev));
    };
    auto ten_dev = [&](const Mat3& truem, const Mat3& nominal) {
      return rel_dev(norm(truem - kin.j * (nominal * transpose(F))), norm(truem));
    };
    worst = std::max(worst, vec_dev(es.true_flux_free, es.flux_free));
    worst = std::max(worst, vec_dev(es.true_polarization, es.polarization));
    worst = std::max(worst, vec_dev(es.true_flux_total, es.flux_total));
    worst = std::max(worst, ten_dev(el.true_stress.trans, el.stress.trans));
    worst = std::max(worst, ten_dev(el.true_stress.cis, el.stress.cis));
    worst = std::max(worst, ten_dev(ss.true_electric, ss.electric));
    worst = std::max(worst, ten_dev(ss.true_coupling, ss.coupling));
    worst = std::max(worst, ten_dev(ss.true_mechanical, ss.mechanical));
    worst = std::max(worst, ten_dev(ss.true_total, ss.total));
  }
  enforce(worst, 1e-12, "max relative transform deviation");
  return bound_detail("max relative transform deviation", worst, 1e-12);
}

std::string check_legendre_duality(Rng& rng, int samples) {
  MaterialParams p = verification_material();
  double worst = 0;
  double sup_excess = 0;
  for (int s = 0; s < samples; ++s) {
    if (s == samples / 2) p.electronic_inertia = 0;  // massless branch
    const Species<Vec3> rate{rand_vec(rng, 0.8), rand_vec(rng, 0.8)};
    const Vec3 vel = rand_vec(rng, 0.8);
    const Momenta m = momenta(rate, vel, p);
    const KineticDensities T = kinetic_densities(rate, vel, p);
    const double pairing =
        dot(m.electronic.trans, rate.trans) + dot(m.electronic.cis, rate.cis) +
        dot(m.mechanical, vel);
    const double lhs = dual_kinetic(m, p) + T.electronic + T.mechanical;
    worst = std::max(worst, std::abs(lhs - pairing) / std::max(1.0, std::abs(pairing)));

    // The pairing minus kinetic energy is maximal at the duality velocities.
    auto value = [&](double alpha, const Species<Vec3>& wr, const Vec3& wv) {
      Species<Vec3> r{rate.trans + alpha * wr.trans, rate.cis + alpha * wr.cis};
      Vec3 v = vel + alpha * wv;
      KineticDensities Th = kinetic_densities(r, v, p);
      return dot(m.electronic.trans, r.trans) + dot(m.electronic.cis, r.cis) +
             dot(m.mechanical, v) - Th.electronic - Th.mechanical;
    };
    const Species<Vec3> wr{rand_vec(rng, 1.0), rand_vec(rng, 1.0)};
    const Vec3 wv = rand_vec(rng, 1.0);
    const double v0 = value(0, wr, wv);
    for (int g = -20; g <= 20; ++g)
      sup_excess = std::max(sup_excess, value(0.1 * g, wr, wv) - v0);
  }
  enforce(worst, 1e-12, "max relative duality defect");
  enforce(sup_excess, 1e-12, "supremum excess away from duality point");
  return bound_detail("max relative duality defect", worst, 1e-12);
}

// Polynomial manufactured fields with analytic gradients; affine_only drops
// the quadratic parts.
ManufacturedFields polynomial_fields(Rng& rng, bool affine_only) {
  const Vec3 alpha = rand_vec(rng, 0.5);
  const Mat3 Q = affine_only ? Mat3::zero() : rand_mat(rng, 0.15);
  ManufacturedFields f;
  f.potential = [=](const Vec3& X) { return dot(alpha, X) + dot(X, Q * X); };
  f.potential_grad = [=](const Vec3& X) { return alpha + (Q + transpose(Q)) * X; };

  const Species<Vec3> b{rand_vec(rng, 0.4), rand_vec(rng, 0.4)};
  const Species<Mat3> B{rand_mat(rng, 0.25), rand_mat(rng, 0.25)};
  std::array<Mat3, 3> Ct, Cc;  // symmetric quadratic coefficients per component
  for (int i = 0; i < 3; ++i) {
    Mat3 r1 = affine_only ? Mat3::zero() : rand_mat(rng, 0.08);
    Mat3 r2 = affine_only ? Mat3::zero() : rand_mat(rng, 0.08);
    Ct[i] = 0.5 * (r1 + transpose(r1));
    Cc[i] = 0.5 * (r2 + transpose(r2));
  }
  auto poly_vec = [](const Vec3& base, const Mat3& lin, const std::array<Mat3, 3>& quad,
                     const Vec3& X) {
    Vec3 v = base + lin * X;
    for (int i = 0; i < 3; ++i) v[i] += dot(X, quad[i] * X);
    return v;
  };
  auto poly_grad = [](const Mat3& lin, const std::array<Mat3, 3>& quad, const Vec3& X) {
    Mat3 g = lin;
    for (int i = 0; i < 3; ++i) {
      Vec3 gi = 2.0 * (quad[i] * X);
      for (int j = 0; j < 3; ++j) g(i, j) += gi[j];
    }
    return g;
  };
  f.order = [=](const Vec3& X) {
    return Species<Vec3>{poly_vec(b.trans, B.trans, Ct, X), poly_vec(b.cis, B.cis, Cc, X)};
  };
  f.order_grad = [=](const Vec3& X) {
    return Species<Mat3>{poly_grad(B.trans, Ct, X), poly_grad(B.cis, Cc, X)};
  };

  const Vec3 m0 = rand_vec(rng, 0.2);
  const Mat3 M = rand_mat(rng, 0.15);
  std::array<Mat3, 3> D;
  for (int i = 0; i < 3; ++i) {
    Mat3 r = affine_only ? Mat3::zero() : rand_mat(rng, 0.05);
    D[i] = 0.5 * (r + transpose(r));
  }
  f.deformation = [=](const Vec3& X) {
    Vec3 y = X + m0 + M * X;
    for (int i = 0; i < 3; ++i) y[i] += dot(X, D[i] * X);
    return y;
  };
  f.deformation_grad = [=](const Vec3& X) {
    Mat3 F = Mat3::identity() + M;
    for (int i = 0; i < 3; ++i) {
      Vec3 gi = 2.0 * (D[i] * X);
      for (int j = 0; j < 3; ++j) F(i, j) += gi[j];
    }
    return F;
  };
  return f;
}

std::string check_lorentz_identity(Rng& rng, int samples) {
  const MaterialParams p = verification_material();
  double worst_affine = 0, worst_quadratic = 0;
  for (int s = 0; s < samples; ++s) {
    for (bool affine : {true, false}) {
      ManufacturedFields f = polynomial_fields(rng, affine);
      Vec3 X = rand_vec(rng, 0.4);
      if (det(f.deformation_grad(X)) < 0.3) continue;  // keep the sample well posed
      const double r = lorentz_identity_residual(f, X, p);
      (affine ? worst_affine : worst_quadratic) = std::max(
          affine ? worst_affine : worst_quadratic, std::abs(r));
    }
  }
  enforce(worst_affine, 1e-8, "max affine-field residual");
  enforce(worst_quadratic, 1e-5, "max quadratic-field residual");
  return bound_detail("max quadratic-field residual", worst_quadratic, 1e-5) + ", affine " +
         fmt(worst_affine);
}

std::string check_uniform_state_patch(Rng& rng, int) {
  const HexMesh mesh = build_box_mesh(BoxMeshSpec{});
  const Vec3 E = rand_vec(rng, 0.8);
  const Mat3 F = rand_F(rng);
  const Species<Vec3> order{rand_vec(rng, 0.6), rand_vec(rng, 0.6)};

  FieldState state = make_reference_state(mesh);
  for (size_t n = 0; n < mesh.nodes.size(); ++n) {
    state.potential[n] = -dot(E, mesh.nodes[n]);
    state.order_trans[n] = order.trans;
    state.order_cis[n] = order.cis;
    state.position[n] = F * mesh.nodes[n];
  }

  double worst = 0;
  for (int c = 0; c < int(mesh.cells.size()); ++c)
    for (const Vec3& xi : hex_gauss_points()) {
      const ShapeData sd = hex_shape_data(mesh, c, xi, 1.0);
      const PointFields pf = evaluate_fields(mesh, c, sd, state);
      worst = std::max(worst, norm(pf.E - E) / std::max(1.0, norm(E)));
      worst = std::max(worst, norm(pf.F - F) / std::max(1.0, norm(F)));
      worst = std::max(worst, norm(pf.order.trans - order.trans));
      worst = std::max(worst, norm(pf.order_grad.trans));
      worst = std::max(worst, norm(pf.order_grad.cis));
    }
  enforce(worst, 1e-12, "max interpolation deviation from uniform fields");
  return bound_detail("max interpolation deviation from uniform fields", worst, 1e-12);
}

std::string check_interface_jumps(Rng& rng, int) {
  BoxMeshSpec spec;
  spec.shell_cells = 1;
  spec.shell_thickness = 0.5;
  const HexMesh mesh = build_box_mesh(spec);
  MaterialParams p = verification_material();
  p.omega0 = {0, 0};  // matched permittivity, no polarization jump

  const Vec3 E = rand_vec(rng, 0.8);
  FieldState state = make_reference_state(mesh);
  for (size_t n = 0; n < mesh.nodes.size(); ++n) state.potential[n] = -dot(E, mesh.nodes[n]);

  double worst = 0;
  for (const FacetJump& jump : interface_jump_check(mesh, p, {}, state)) {
    worst = std::max(worst, std::abs(jump.flux_residual));
    worst = std::max(worst, norm(jump.traction_residual));
  }
  enforce(worst, 1e-10, "max interface jump residual");
  return bound_detail("max interface jump residual", worst, 1e-10);
}

std::string check_discrete_gradient(Rng& rng, int probes) {
  BoxMeshSpec spec;
  spec.matter_cells = {2, 2, 2};
  spec.shell_cells = 1;
  spec.shell_thickness = 0.5;
  const HexMesh mesh = build_box_mesh(spec);
  const DofLayout layout = build_dof_layout(mesh, {});
  const MaterialParams p = verification_material();

  DiscreteLoads loads;
  loads.bulk.free_charge = 0.2;
  loads.bulk.electronic_force = {Vec3{0.1, -0.2, 0.3}, Vec3{-0.1, 0.1, 0.2}};
  loads.bulk.body_force = Vec3{0.05, 0.1, -0.08};
  SurfacePatchLoad patch;
  patch.face = 1;
  patch.loads.surface_charge = 0.3;
  patch.loads.traction = Vec3{0.02, 0, 0.05};
  loads.surface.push_back(patch);

  FieldState state = make_reference_state(mesh);
  for (size_t n = 0; n < mesh.nodes.size(); ++n) {
    state.potential[n] += unif(rng, -0.3, 0.3);
    state.order_trans[n] = rand_vec(rng, 0.3);
    state.order_cis[n] = rand_vec(rng, 0.3);
    state.position[n] += rand_vec(rng, 0.01);
  }

  const Eigen::VectorXd r = assemble_quasistatic_residual(mesh, layout, p, loads, state);
  Eigen::VectorXd x = gather(layout, state);
  FieldState work = state;
  double worst = 0;
  const double scale = std::max(1.0, r.lpNorm<Eigen::Infinity>());
  std::uniform_int_distribution<int> pick(0, layout.count - 1);
  for (int q = 0; q < probes; ++q) {
    const int dof = pick(rng);
    auto energy_at = [&](double h) {
      Eigen::VectorXd xh = x;
      xh[dof] += h;
      scatter(layout, xh, work);
      return discrete_energy(mesh, p, loads, work).total();
    };
    const double fd = (energy_at(kFdStep) - energy_at(-kFdStep)) / (2 * kFdStep);
    worst = std::max(worst, std::abs(fd - r[dof]) / scale);
  }
  enforce(worst, 1e-5, "max relative residual-gradient deviation");
  return bound_detail("max relative residual-gradient deviation", worst, 1e-5) + ", " +
         std::to_string(probes) + " probes";
}

double max_state_deviation(const FieldState& a, const FieldState& b) {
  double m = 0;
  for (size_t n = 0; n < a.potential.size(); ++n) {
    m = std::max(m, std::abs(a.potential[n] - b.potential[n]));
    m = std::max(m, norm(a.position[n] - b.position[n]));
    m = std::max(m, norm(a.order_trans[n] - b.order_trans[n]));
    m = std::max(m, norm(a.order_cis[n] - b.order_cis[n]));
  }
  return m;
}

std::string check_cross_formulation(Rng&, int steps) {
  Problem pr;
  pr.mesh = build_box_mesh(BoxMeshSpec{});
  std::vector<BoundaryCondition> bcs;
  BoundaryCondition ground;
  ground.field = Field::Potential;
  ground.face = 0;
  bcs.push_back(ground);
  BoundaryCondition clamp;
  clamp.field = Field::Deformation;
  clamp.face = 4;
  clamp.gradient = Mat3::identity();
  bcs.push_back(clamp);
  pr.layout = build_dof_layout(pr.mesh, bcs);
  pr.material.beta = {0.3, 0.1};
  pr.material.electronic_inertia = 0.7;
  DiscreteLoads loads;
  loads.bulk.electronic_force = {Vec3{0.3, 0.1, -0.2}, Vec3{-0.1, 0.2, 0.1}};
  loads.bulk.body_force = Vec3{0.05, -0.02, 0.08};
  loads.bulk.free_charge = 0.1;
  pr.loads_at = [loads](double) { return loads; };

  SolverConfig cfg;
  cfg.dt = 0.02;
  cfg.t_end = steps * cfg.dt;
  const FieldState start = initial_state(pr);
  const Trajectory lag = solve_dynamic_lagrangian(pr, cfg, start);
  const Trajectory ham = solve_dynamic_hamiltonian(pr, cfg, start);
  double worst = 0;
  for (size_t k = 0; k < lag.states.size(); ++k)
    worst = std::max(worst, max_state_deviation(lag.states[k], ham.states[k]));
  enforce(worst, 1e-6, "max nodal trajectory deviation");
  return bound_detail("max nodal trajectory deviation", worst, 1e-6) + ", " +
         std::to_string(steps) + " steps";
}

// Single matter cube with potential and deformation frozen: electronic modes
// form the exact scalar systems the dynamic oracles assume.
Problem frozen_field_problem(const Vec3& E, const MaterialParams& mat) {
  Problem pr;
  pr.mesh = build_box_mesh(BoxMeshSpec{});
  std::vector<BoundaryCondition> bcs;
  BoundaryCondition pot;
  pot.field = Field::Potential;
  for (int i = 0; i < 3; ++i) pot.gradient(0, i) = -E[i];
  bcs.push_back(pot);
  BoundaryCondition clamp;
  clamp.field = Field::Deformation;
  clamp.gradient = Mat3::identity();
  bcs.push_back(clamp);
  pr.layout = build_dof_layout(pr.mesh, bcs);
  pr.material = mat;
  return pr;
}

std::string check_oscillator_period(Rng&, int) {
  MaterialParams mat;
  mat.a = {2.0, 2.0};
  mat.beta = {0.5, 0.5};
  mat.gamma0 = 0.0;
  mat.electronic_inertia = 1.0;
  const Vec3 E{0.4, 0, 0};
  Problem pr = frozen_field_problem(E, mat);

  const double a_eff = 2.5;  // a + beta at F = I
  const double period = 2 * M_PI * std::sqrt(mat.electronic_inertia / a_eff);
  SolverConfig cfg;
  cfg.dt = period / 200;
  cfg.t_end = 2 * period;
  const Trajectory traj = solve_dynamic_lagrangian(pr, cfg, initial_state(pr));

  const double target = mat.omega0.trans * E[0] / a_eff;
  std::vector<double> crossings;
  for (size_t k = 1; k < traj.states.size(); ++k) {
    const double f0 = traj.states[k - 1].order_trans[0][0] - target;
    const double f1 = traj.states[k].order_trans[0][0] - target;
    if (f0 < 0 != f1 < 0)
      crossings.push_back(traj.diagnostics[k - 1].time + cfg.dt * f0 / (f0 - f1));
  }
  if (crossings.size() < 3) throw CheckFailure("fewer than 3 mean crossings observed");
  double mean_half = 0;
  for (size_t i = 1; i < crossings.size(); ++i) mean_half += crossings[i] - crossings[i - 1];
  mean_half /= double(crossings.size() - 1);
  const double period_err = std::abs(2 * mean_half - period) / period;

  const double h0 = traj.diagnostics.front().kinetic + traj.diagnostics.front().potential;
  const double h1 = traj.diagnostics.back().kinetic + traj.diagnostics.back().potential;
  const double drift = std::abs(h1 - h0) / std::abs(h0);
  enforce(period_err, 0.01, "relative period error");
  enforce(drift, 1e-4, "relative energy drift");
  return bound_detail("relative period error", period_err, 0.01) + ", drift " + fmt(drift);
}

std::string check_dissipative_balance(Rng&, int steps) {
  MaterialParams mat;
  mat.a = {0.5, 0.5};
  mat.beta = {0.5, 0.5};
  mat.gamma0 = 1.0;
  mat.electronic_inertia = 0.1;
  const Vec3 E{0.6, 0, 0};
  Problem pr = frozen_field_problem(E, mat);

  SolverConfig cfg;
  cfg.integrator = Integrator::BackwardEuler;
  cfg.dissipative = true;
  cfg.dt = 5e-5;
  cfg.t_end = steps * cfg.dt;
  FieldState start = initial_state(pr);
  for (size_t n = 0; n < start.order_trans_rate.size(); ++n) {
    start.order_trans_rate[n] = (mat.omega0.trans / mat.gamma0) * E;
    start.order_cis_rate[n] = (mat.omega0.cis / mat.gamma0) * E;
  }
  const Trajectory traj = solve_dynamic_hamiltonian(pr, cfg, start);

  const auto& d = traj.diagnostics;
  double max_dd = 0;
  for (size_t k = 1; k < d.size(); ++k)
    max_dd = std::max(max_dd, d[k].dissipated_cum - d[k - 1].dissipated_cum);
  double worst = 0, monotone_defect = 0;
  for (size_t k = 2; k < d.size(); ++k) {
    const double de =
        (d[k].kinetic + d[k].potential) - (d[k - 1].kinetic + d[k - 1].potential);
    const double dd = d[k].dissipated_cum - d[k - 1].dissipated_cum;
    worst = std::max(worst, std::abs(de + dd) / std::max(dd, 1e-6 * max_dd));
    monotone_defect = std::max(monotone_defect, de);
  }
  enforce(worst, 1e-3, "max per-step relative balance defect");
  enforce(monotone_defect, 1e-14, "max energy increase without external work");
  return bound_detail("max per-step relative balance defect", worst, 1e-3);
}

std::string check_relaxation_oracle(Rng&, int steps) {
  MaterialParams mat;
  mat.a = {0.8, 1.4};
  mat.beta = {0.4, 0.2};
  mat.gamma0 = 2.0;
  mat.omega0 = {1.0, 0.6};
  const Vec3 E{0.5, 0, 0};
  Problem pr = frozen_field_problem(E, mat);

  SolverConfig cfg;
  cfg.dissipative = true;
  cfg.dt = 0.05;
  cfg.t_end = steps * cfg.dt;
  const Trajectory traj = solve_quasistatic(pr, cfg);

  const double a_eff = mat.a.trans + mat.beta.trans;
  const Vec3 target = (mat.omega0.trans / a_eff) * E;
  const double ratio = 1.0 / (1.0 + cfg.dt * a_eff / mat.gamma0);
  double worst = 0;
  Vec3 prev{};
  for (size_t k = 1; k < traj.states.size(); ++k) {
    const Vec3 y = traj.states[k].order_trans[0];
    const Vec3 want = ratio * prev + (1.0 - ratio) * target;
    worst = std::max(worst, norm(y - want));
    prev = y;
  }
  enforce(worst, 1e-10, "max deviation from the scalar recursion");

  // Fitted relaxation time from the step-decay ratio of the first transient.
  const Vec3 y1 = traj.states[1].order_trans[0], y2 = traj.states[2].order_trans[0];
  const double r_obs = norm(y2 - target) / norm(y1 - target);
  const double tau_fit = cfg.dt / (1.0 / r_obs - 1.0);
  const double tau = mat.gamma0 / a_eff;
  const double tau_err = std::abs(tau_fit - tau) / tau;
  enforce(tau_err, 0.02, "relative relaxation-time error");
  return bound_detail("max deviation from the scalar recursion", worst, 1e-10) +
         ", relaxation-time error " + fmt(tau_err);
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  const bool full = opt.level == VerifyLevel::Full;
  struct Entry {
    const char* name;
    int samples;
    std::function<std::string(Rng&, int)> body;
    bool enabled = true;
  };

  const std::vector<Entry> entries = {
      {"kinematic-derivatives", full ? 300 : 100,
       [](Rng& rng, int n) { return check_kinematic_derivatives(rng, n); }},
      {"constitutive-gradients", full ? 300 : 100,
       [](Rng& rng, int n) { return check_constitutive_gradients(rng, n); }},
      {"energy-momentum-equivalence", full ? 300 : 100,
       [&](Rng& rng, int n) {
         return check_energy_momentum_equivalence(rng, n, opt.flip_coupling_stress_sign);
       }},
      {"piola-transforms", full ? 300 : 100,
       [](Rng& rng, int n) { return check_piola_transforms(rng, n); }},
      {"legendre-duality", full ? 150 : 60,
       [](Rng& rng, int n) { return check_legendre_duality(rng, n); }},
      {"lorentz-identity", full ? 30 : 10,
       [](Rng& rng, int n) { return check_lorentz_identity(rng, n); }},
      {"uniform-state-patch", 1,
       [](Rng& rng, int n) { return check_uniform_state_patch(rng, n); }},
      {"interface-jumps", 1, [](Rng& rng, int n) { return check_interface_jumps(rng, n); }},
      {"discrete-gradient", full ? 40 : 0,
       [](Rng& rng, int n) { return check_discrete_gradient(rng, n); }, full},
      {"cross-formulation", full ? 100 : 40,
       [](Rng& rng, int n) { return check_cross_formulation(rng, n); }},
      {"oscillator-period", 1, [](Rng& rng, int n) { return check_oscillator_period(rng, n); }},
      {"dissipative-balance", full ? 1000 : 300,
       [](Rng& rng, int n) { return check_dissipative_balance(rng, n); }},
      {"relaxation-oracle", full ? 100 : 30,
       [](Rng& rng, int n) { return check_relaxation_oracle(rng, n); }},
  };

  std::vector<CheckResult> results;
  unsigned long stream = 0;
  for (const Entry& e : entries) {
    ++stream;
    if (!e.enabled) continue;
    Rng rng(opt.seed + 1000003 * stream);  // independent stream per check
    CheckResult r;
    r.name = e.name;
    try {
      r.detail = e.body(rng, e.samples);
      r.passed = true;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = ex.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.passed) return false;
  return true;
}

std::string verification_report_json(const VerifyOptions& opt,
                                     const std::vector<CheckResult>& results) {
  nlohmann::json j;
  j["level"] = opt.level == VerifyLevel::Full ? "full" : "fast";
  j["seed"] = opt.seed;
  j["mutation_canary"] = opt.flip_coupling_stress_sign;
  j["all_passed"] = all_passed(results);
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : results)
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

}  // namespace photomech
