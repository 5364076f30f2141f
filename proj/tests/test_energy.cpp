#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "photomech/energy.hpp"
#include "photomech/errors.hpp"

using namespace photomech;
using testutil::rel_err;

namespace {

Mat3 diag(double a, double b, double c) {
  Mat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Mat3 rotation(const Vec3& axis_raw, double angle) {
  Vec3 n = (1.0 / norm(axis_raw)) * axis_raw;
  Mat3 nx;  // cross-product matrix
  nx(0, 1) = -n[2];
  nx(0, 2) = n[1];
  nx(1, 0) = n[2];
  nx(1, 2) = -n[0];
  nx(2, 0) = -n[1];
  nx(2, 1) = n[0];
  return Mat3::identity() + std::sin(angle) * nx + (1 - std::cos(angle)) * (nx * nx);
}

struct RandomState {
  Vec3 E;
  Species<Vec3> order;
  Species<Mat3> grad;
  Kinematics kin;
};

RandomState random_state(std::mt19937_64& rng) {
  RandomState s;
  s.E = testutil::random_vec(rng);
  s.order = {testutil::random_vec(rng), testutil::random_vec(rng)};
  s.grad = {testutil::random_mat(rng), testutil::random_mat(rng)};
  s.kin = build_kinematics(testutil::random_def_gradient(rng));
  return s;
}

MaterialParams generic_params(std::mt19937_64& rng) {
  MaterialParams p;
  p.epsilon0 = testutil::uniform(rng, 0.5, 2.0);
  p.omega0 = {testutil::uniform(rng, 0.2, 1.5), testutil::uniform(rng, 0.2, 1.5)};
  p.gamma0 = testutil::uniform(rng, 0.1, 2.0);
  p.mu = testutil::uniform(rng, 0.5, 2.0);
  p.lambda = testutil::uniform(rng, 0.5, 2.0);
  p.a = {testutil::uniform(rng, 0.5, 2.0), testutil::uniform(rng, 0.5, 2.0)};
  p.beta = {testutil::uniform(rng, 0.2, 1.0), testutil::uniform(rng, 0.2, 1.0)};
  p.kappa = {testutil::uniform(rng, 0.5, 2.0), testutil::uniform(rng, 0.5, 2.0)};
  return p;
}

}  // namespace

TEST_CASE("electric energy reference values") {
  MaterialParams p;
  Kinematics id = build_kinematics(Mat3::identity());
  CHECK(electric_energy(Vec3{}, id, p) == 0.0);
  CHECK(electric_energy(Vec3{1, 0, 0}, id, p) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("electric energy equals direct contraction and is nonpositive") {
  auto rng = testutil::make_rng(301);
  for (int rep = 0; rep < 50; ++rep) {
    RandomState s = random_state(rng);
    MaterialParams p = generic_params(rng);
    // Direct -1/2 eps0 E.f.K.E via tensor module only.
    double want = -0.5 * p.epsilon0 * dot(s.E * s.kin.f * s.kin.K, s.E);
    double got = electric_energy(s.E, s.kin, p);
    CHECK(rel_err(got, want) < 1e-12);
    CHECK(got <= 0.0);
    // Spatial density oracle: e_s = -1/2 eps0 |e|^2 = j * e_m.
    Vec3 e = s.E * s.kin.f;
    CHECK(rel_err(s.kin.j * got, -0.5 * p.epsilon0 * dot(e, e)) < 1e-12);
  }
}

TEST_CASE("coupling energy reference values") {
  MaterialParams p;
  p.omega0 = {1.0, 0.0};
  Kinematics id = build_kinematics(Mat3::identity());
  Species<Vec3> order{Vec3{1, 0, 0}, Vec3{}};
  CHECK(coupling_energy({Vec3{}, Vec3{}}, Vec3{2, 0, 0}, id, p) == 0.0);
  CHECK(coupling_energy(order, Vec3{2, 0, 0}, id, p) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("coupling energy equals push-forward form") {
  auto rng = testutil::make_rng(302);
  for (int rep = 0; rep < 50; ++rep) {
    RandomState s = random_state(rng);
    MaterialParams p = generic_params(rng);
    Vec3 e = s.E * s.kin.f;
    double want = -s.kin.J * (p.omega0.trans * dot(s.order.trans, e) +
                              p.omega0.cis * dot(s.order.cis, e));
    CHECK(rel_err(coupling_energy(s.order, s.E, s.kin, p), want) < 1e-12);
  }
}

TEST_CASE("stored energy reference values") {
  MaterialParams p;
  Kinematics id = build_kinematics(Mat3::identity());
  CHECK(stored_energy({Vec3{}, Vec3{}}, {Mat3::zero(), Mat3::zero()}, id, p) == 0.0);

  MaterialParams mech;
  mech.mu = 1.0;
  mech.lambda = 0.0;
  mech.a = mech.beta = {0.0, 0.0};
  mech.kappa = {0.0, 0.0};
  Kinematics kin = build_kinematics(diag(2, 1, 1));
  double want = 0.5 * (6.0 - 3.0 - 2.0 * std::log(2.0));
  CHECK(rel_err(stored_energy({Vec3{}, Vec3{}}, {Mat3::zero(), Mat3::zero()}, kin, mech),
                want) < 1e-15);

  MaterialParams gradp;
  gradp.kappa = {2.0, 0.0};
  Species<Mat3> grad{outer(Vec3{1, 0, 0}, Vec3{1, 0, 0}), Mat3::zero()};
  CHECK(gradient_stored_energy(grad, gradp) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("external potentials are linear evaluations") {
  BulkLoads zero;
  CHECK(external_potential_bulk(3.0, {Vec3{1, 1, 1}, Vec3{}}, Vec3{1, 2, 3}, zero) == 0.0);

  BulkLoads charge;
  charge.free_charge = 2.0;
  CHECK(external_potential_bulk(3.0, {Vec3{}, Vec3{}}, Vec3{}, charge) == 6.0);

  BulkLoads body;
  body.body_force = Vec3{1, 0, 0};
  CHECK(external_potential_bulk(0.0, {Vec3{}, Vec3{}}, Vec3{2, 0, 0}, body) == -2.0);

  SurfaceLoads surf;
  surf.surface_charge = 0.5;
  surf.traction = Vec3{0, 1, 0};
  CHECK(external_potential_surface(2.0, {Vec3{}, Vec3{}}, Vec3{0, 3, 0}, surf) ==
        doctest::Approx(1.0 - 3.0));
}

TEST_CASE("kinetic densities") {
  MaterialParams p;
  CHECK(kinetic_densities({Vec3{}, Vec3{}}, Vec3{}, p).electronic == 0.0);
  CHECK(kinetic_densities({Vec3{}, Vec3{}}, Vec3{}, p).mechanical == 0.0);

  p.electronic_inertia = 2.0;
  CHECK(kinetic_densities({Vec3{1, 0, 0}, Vec3{}}, Vec3{}, p).electronic ==
        doctest::Approx(1.0));

  Vec3 v{0.3, -0.4, 0.5};
  double k1 = kinetic_densities({Vec3{}, Vec3{}}, v, p).mechanical;
  double k2 = kinetic_densities({Vec3{}, Vec3{}}, 2.0 * v, p).mechanical;
  CHECK(rel_err(k2, 4.0 * k1) < 1e-15);
  CHECK(k1 >= 0.0);
}

TEST_CASE("dissipation potential") {
  MaterialParams p;
  p.gamma0 = 3.0;
  Kinematics id = build_kinematics(Mat3::identity());
  CHECK(dissipation_potential({Vec3{}, Vec3{}}, id, p) == 0.0);
  CHECK(dissipation_potential({Vec3{1, 0, 0}, Vec3{}}, id, p) == doctest::Approx(1.5));

  Kinematics doubled = build_kinematics(diag(2, 1, 1));
  CHECK(dissipation_potential({Vec3{1, 0, 0}, Vec3{}}, doubled, p) == doctest::Approx(3.0));
  auto rng = testutil::make_rng(303);
  Species<Vec3> v{testutil::random_vec(rng), testutil::random_vec(rng)};
  CHECK(dissipation_potential(v, id, p) >= 0.0);
}

TEST_CASE("free-space energy and fictitious term") {
  MaterialParams p;
  Kinematics id = build_kinematics(Mat3::identity());
  CHECK(free_space_energy(Vec3{}, id, p) == 0.0);

  auto rng = testutil::make_rng(304);
  for (int rep = 0; rep < 20; ++rep) {
    Vec3 E = testutil::random_vec(rng);
    Kinematics kin = build_kinematics(testutil::random_def_gradient(rng));

    MaterialParams off = p;
    off.eta = 0.0;  // parameter limit: reduces exactly to the electric energy
    CHECK(free_space_energy(E, kin, off) == electric_energy(E, kin, off));

    MaterialParams on = p;
    on.eta = 1e-6;
    double lnJ = std::log(kin.J);
    double nh = 0.5 * (ddot(kin.F, kin.F) - 3.0) - lnJ + 0.5 * lnJ * lnJ;
    CHECK(rel_err(free_space_energy(E, kin, on) - electric_energy(E, kin, on), 1e-6 * nh) <
          1e-9);
  }
}

TEST_CASE("material densities are J times spatial densities") {
  auto rng = testutil::make_rng(305);
  for (int rep = 0; rep < 20; ++rep) {
    RandomState s = random_state(rng);
    MaterialParams p = generic_params(rng);
    Vec3 e = s.E * s.kin.f;
    // Independent spatial forms for the electric and coupling densities.
    double e_s = -0.5 * p.epsilon0 * dot(e, e);
    double c_s = -(p.omega0.trans * dot(s.order.trans, e) + p.omega0.cis * dot(s.order.cis, e));
    CHECK(rel_err(electric_energy(s.E, s.kin, p), s.kin.J * e_s) < 1e-12);
    CHECK(rel_err(coupling_energy(s.order, s.E, s.kin, p), s.kin.J * c_s) < 1e-12);
    // Dissipation: linear in J by construction.
    Species<Vec3> v{testutil::random_vec(rng), testutil::random_vec(rng)};
    double pot = dissipation_potential(v, s.kin, p);
    Kinematics scaled = build_kinematics(std::cbrt(2.0) * s.kin.F);
    CHECK(rel_err(dissipation_potential(v, scaled, p), 2.0 * pot) < 1e-12);
  }
}

TEST_CASE("frame behavior of the local stored energy") {
  auto rng = testutil::make_rng(306);
  Mat3 F = testutil::random_def_gradient(rng);
  Species<Vec3> order{testutil::random_vec(rng), testutil::random_vec(rng)};
  Mat3 Q = rotation(Vec3{0.3, -1.0, 0.7}, 0.9);

  MaterialParams coupled = generic_params(rng);
  MaterialParams uncoupled = coupled;
  uncoupled.beta = {0.0, 0.0};

  Kinematics kin = build_kinematics(F);
  Kinematics spatial_rot = build_kinematics(Q * F);
  Kinematics material_rot = build_kinematics(F * Q);

  // Spatial rotation: objective for every beta.
  CHECK(rel_err(local_stored_energy(order, spatial_rot, coupled),
                local_stored_energy(order, kin, coupled)) < 1e-12);
  // Material rotation: invariant iff the order coupling is off.
  CHECK(rel_err(local_stored_energy(order, material_rot, uncoupled),
                local_stored_energy(order, kin, uncoupled)) < 1e-12);
  CHECK(std::abs(local_stored_energy(order, material_rot, coupled) -
                 local_stored_energy(order, kin, coupled)) > 1e-3);
}

TEST_CASE("parameter validation") {
  MaterialParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon0 = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = MaterialParams{};
  p.eta = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = MaterialParams{};
  p.gamma0 = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
