#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "photomech/constitutive.hpp"

using namespace photomech;
using testutil::rel_err;

namespace {

constexpr double kStep = 1e-6;

Mat3 diag(double a, double b, double c) {
  Mat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("electric flux reference values and invariants") {
  MaterialParams p;
  Kinematics id = build_kinematics(Mat3::identity());
  MatterPoint zero{};
  ElectricState z = electric_flux(zero, id, p);
  CHECK(norm(z.flux_total) == 0.0);
  CHECK(norm(z.true_flux_total) == 0.0);

  MatterPoint pt{};
  pt.E = Vec3{1, 0, 0};
  ElectricState s = electric_flux(pt, id, p);
  CHECK(rel_err(s.flux_total, Vec3{1, 0, 0}) < 1e-15);
  CHECK(rel_err(s.true_flux_total, Vec3{1, 0, 0}) < 1e-15);
}

TEST_CASE("electric flux matches FD of the field energies") {
  auto rng = testutil::make_rng(401);
  for (int rep = 0; rep < 100; ++rep) {
    MatterPoint pt = testutil::random_matter_point(rng);
    Kinematics kin = build_kinematics(testutil::random_def_gradient(rng));
    MaterialParams p = testutil::random_material_params(rng);
    ElectricState s = electric_flux(pt, kin, p);

    Vec3 fd_free, fd_pol;
    for (int i = 0; i < 3; ++i) {
      Vec3 Ep = pt.E, Em = pt.E;
      Ep[i] += kStep;
      Em[i] -= kStep;
      fd_free[i] = -(electric_energy(Ep, kin, p) - electric_energy(Em, kin, p)) / (2 * kStep);
      fd_pol[i] = -(coupling_energy(pt.order, Ep, kin, p) -
                    coupling_energy(pt.order, Em, kin, p)) /
                  (2 * kStep);
    }
    CHECK(rel_err(s.flux_free, fd_free) < 1e-6);
    CHECK(rel_err(s.polarization, fd_pol) < 1e-6);

    CHECK(rel_err(s.flux_total, s.flux_free + s.polarization) < 1e-15);
    CHECK(rel_err(s.true_flux_free, p.epsilon0 * (pt.E * kin.f)) < 1e-14);
    CHECK(rel_err(s.true_polarization,
                  p.omega0.trans * pt.order.trans + p.omega0.cis * pt.order.cis) < 1e-15);
  }
}

TEST_CASE("electronic stress and sources reference values") {
  MaterialParams p;
  p.kappa = {2.0, 1.0};
  Kinematics id = build_kinematics(Mat3::identity());

  MatterPoint zero{};
  ElectronicState z = electronic_state(zero, id, p);
  CHECK(norm(z.stress.trans) == 0.0);
  CHECK(norm(z.source_total.trans) == 0.0);
  CHECK(norm(z.ext_source_total.cis) == 0.0);

  MatterPoint pt{};
  pt.order_grad.trans = outer(Vec3{1, 0, 0}, Vec3{0, 1, 0});
  ElectronicState s = electronic_state(pt, id, p);
  CHECK(rel_err(s.stress.trans, 2.0 * outer(Vec3{1, 0, 0}, Vec3{0, 1, 0})) < 1e-15);
}

TEST_CASE("electronic quantities match FD of their potentials") {
  auto rng = testutil::make_rng(402);
  for (int rep = 0; rep < 100; ++rep) {
    MatterPoint pt = testutil::random_matter_point(rng);
    Kinematics kin = build_kinematics(testutil::random_def_gradient(rng));
    MaterialParams p = testutil::random_material_params(rng);
    ElectronicState s = electronic_state(pt, kin, p);

    // stress = d(gradient stored energy)/d(grad), species-wise.
    Mat3 fd_stress_t, fd_stress_c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Species<Mat3> gp = pt.order_grad, gm = pt.order_grad;
        gp.trans(i, j) += kStep;
        gm.trans(i, j) -= kStep;
        fd_stress_t(i, j) =
            (gradient_stored_energy(gp, p) - gradient_stored_energy(gm, p)) / (2 * kStep);
        gp = gm = pt.order_grad;
        gp.cis(i, j) += kStep;
        gm.cis(i, j) -= kStep;
        fd_stress_c(i, j) =
            (gradient_stored_energy(gp, p) - gradient_stored_energy(gm, p)) / (2 * kStep);
      }
    CHECK(rel_err(s.stress.trans, fd_stress_t) < 1e-6);
    CHECK(rel_err(s.stress.cis, fd_stress_c) < 1e-6);

    // energetic source = d(local stored)/d(order); interior external source =
    // -d(coupling)/d(order); dissipative source = d(dissipation)/d(rate).
    Vec3 fd_en_t, fd_int_t, fd_diss_t;
    for (int i = 0; i < 3; ++i) {
      Species<Vec3> op = pt.order, om = pt.order;
      op.trans[i] += kStep;
      om.trans[i] -= kStep;
      fd_en_t[i] =
          (local_stored_energy(op, kin, p) - local_stored_energy(om, kin, p)) / (2 * kStep);
      fd_int_t[i] = -(coupling_energy(op, pt.E, kin, p) - coupling_energy(om, pt.E, kin, p)) /
                    (2 * kStep);
      Species<Vec3> rp = pt.order_rate, rm = pt.order_rate;
      rp.trans[i] += kStep;
      rm.trans[i] -= kStep;
      fd_diss_t[i] =
          (dissipation_potential(rp, kin, p) - dissipation_potential(rm, kin, p)) / (2 * kStep);
    }
    CHECK(rel_err(s.source_energetic.trans, fd_en_t) < 1e-6);
    CHECK(rel_err(s.ext_source_interior.trans, fd_int_t) < 1e-6);
    CHECK(rel_err(s.source_dissipative.trans, fd_diss_t) < 1e-6);

    CHECK(rel_err(s.source_total.trans, s.source_energetic.trans + s.source_dissipative.trans) <
          1e-15);
    CHECK(rel_err(s.momentum.trans, p.electronic_inertia * pt.order_rate.trans) < 1e-15);
  }
}

TEST_CASE("total stress reference values") {
  MaterialParams p;
  p.beta = {0.0, 0.0};
  Kinematics id = build_kinematics(Mat3::identity());

  MatterPoint ref{};
  StressState z = total_stress(ref, id, p);
  CHECK(norm(z.total) == 0.0);

  MatterPoint pt{};
  pt.E = Vec3{1, 0, 0};
  StressState s = total_stress(pt, id, p);
  CHECK(rel_err(s.true_electric, diag(0.5, -0.5, -0.5)) < 1e-15);
}

TEST_CASE("total stress matches FD of the internal energy") {
  auto rng = testutil::make_rng(403);
  for (int rep = 0; rep < 100; ++rep) {
    MatterPoint pt = testutil::random_matter_point(rng);
    Mat3 F = testutil::random_def_gradient(rng);
    MaterialParams p = testutil::random_material_params(rng);
    StressState s = total_stress(pt, build_kinematics(F), p);

    Mat3 fd;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        Mat3 Fp = F, Fm = F;
        Fp(m, n) += kStep;
        Fm(m, n) -= kStep;
        fd(m, n) = (internal_energy(pt.E, pt.order, pt.order_grad, build_kinematics(Fp), p) -
                    internal_energy(pt.E, pt.order, pt.order_grad, build_kinematics(Fm), p)) /
                   (2 * kStep);
      }
    CHECK(rel_err(s.total, fd) < 1e-6);
    CHECK(rel_err(s.total, s.electric + s.coupling + s.mechanical) < 1e-15);
  }
}

TEST_CASE("energy-momentum forms equal the chain-rule derivatives") {
  auto rng = testutil::make_rng(404);
  for (int rep = 0; rep < 100; ++rep) {
    MatterPoint pt = testutil::random_matter_point(rng);
    Kinematics kin = build_kinematics(testutil::random_def_gradient(rng));
    MaterialParams p = testutil::random_material_params(rng);
    StressState s = total_stress(pt, kin, p);

    CHECK(rel_err(s.electric, electric_stress_chain_rule(pt.E, kin, p)) < 1e-12);
    CHECK(rel_err(s.coupling, coupling_stress_chain_rule(pt.order, pt.E, kin, p)) < 1e-12);
  }
}

TEST_CASE("Piola transforms are exact") {
  auto rng = testutil::make_rng(405);
  for (int rep = 0; rep < 100; ++rep) {
    MatterPoint pt = testutil::random_matter_point(rng);
    Kinematics kin = build_kinematics(testutil::random_def_gradient(rng));
    MaterialParams p = testutil::random_material_params(rng);

    ElectricState el = electric_flux(pt, kin, p);
    CHECK(rel_err(el.true_flux_total, el.flux_total * kin.k) < 1e-12);

    ElectronicState tr = electronic_state(pt, kin, p);
    CHECK(rel_err(tr.true_stress.trans, tr.stress.trans * kin.k) < 1e-15);
    CHECK(rel_err(tr.true_stress.cis, tr.stress.cis * kin.k) < 1e-15);

    StressState st = total_stress(pt, kin, p);
    CHECK(rel_err(st.true_total, st.total * kin.k) < 1e-12);
    // Cauchy = j P F^T is the same transform written with the area map expanded.
    CHECK(rel_err(st.true_total, kin.j * (st.total * transpose(kin.F))) < 1e-12);
    CHECK(rel_err(st.true_mechanical, st.mechanical * kin.k) < 1e-15);
  }
}

TEST_CASE("momenta and Legendre duality") {
  MaterialParams p;
  p.mass_density = 2.0;
  Momenta z = momenta({Vec3{}, Vec3{}}, Vec3{}, p);
  CHECK(norm(z.mechanical) == 0.0);

  Momenta m = momenta({Vec3{}, Vec3{}}, Vec3{0, 1, 0}, p);
  CHECK(rel_err(m.mechanical, Vec3{0, 2, 0}) < 1e-15);

  auto rng = testutil::make_rng(406);
  for (int rep = 0; rep < 50; ++rep) {
    MaterialParams pr = testutil::random_material_params(rng);
    Species<Vec3> w{testutil::random_vec(rng), testutil::random_vec(rng)};
    Vec3 v = testutil::random_vec(rng);
    Momenta mm = momenta(w, v, pr);
    KineticDensities k = kinetic_densities(w, v, pr);
    double pairing = dot(mm.electronic.trans, w.trans) + dot(mm.electronic.cis, w.cis) +
                     dot(mm.mechanical, v);
    CHECK(rel_err(dual_kinetic(mm, pr) + k.electronic + k.mechanical, pairing) < 1e-14);
  }
}

TEST_CASE("dual kinetic reference values and the massless limit") {
  MaterialParams p;
  p.mass_density = 2.0;
  Momenta m{{Vec3{}, Vec3{}}, Vec3{2, 0, 0}};
  CHECK(dual_kinetic(m, p) == doctest::Approx(1.0).epsilon(1e-15));

  MaterialParams massless = p;
  massless.electronic_inertia = 0.0;
  Momenta me{{Vec3{1, 0, 0}, Vec3{}}, Vec3{}};
  CHECK(dual_kinetic(me, massless) == 0.0);  // electronic term dropped
}

TEST_CASE("kinetic supremum sits at the momentum-matched velocity") {
  auto rng = testutil::make_rng(407);
  MaterialParams p = testutil::random_material_params(rng);
  Species<Vec3> w{testutil::random_vec(rng), testutil::random_vec(rng)};
  Vec3 v = testutil::random_vec(rng);
  Momenta m = momenta(w, v, p);

  auto legendre_gap = [&](const Species<Vec3>& wt, const Vec3& vt) {
    KineticDensities k = kinetic_densities(wt, vt, p);
    return dot(m.electronic.trans, wt.trans) + dot(m.electronic.cis, wt.cis) +
           dot(m.mechanical, vt) - k.electronic - k.mechanical;
  };

  const double best = legendre_gap(w, v);
  CHECK(rel_err(best, dual_kinetic(m, p)) < 1e-13);
  // Grid search along random rays through the optimum: no direction improves.
  for (int dir = 0; dir < 12; ++dir) {
    Species<Vec3> dw{testutil::random_vec(rng), testutil::random_vec(rng)};
    Vec3 dv = testutil::random_vec(rng);
    for (double step : {-0.2, -0.1, 0.1, 0.2}) {
      Species<Vec3> wt{w.trans + step * dw.trans, w.cis + step * dw.cis};
      CHECK(legendre_gap(wt, v + step * dv) < best + 1e-14);
    }
  }
}

TEST_CASE("free-space state functions match FD of the free-space energy") {
  auto rng = testutil::make_rng(408);
  for (int rep = 0; rep < 50; ++rep) {
    Vec3 E = testutil::random_vec(rng);
    Mat3 F = testutil::random_def_gradient(rng);
    MaterialParams p = testutil::random_material_params(rng);
    p.eta = 1e-3;  // exaggerated so the fictitious term is visible to FD
    Kinematics kin = build_kinematics(F);

    Vec3 flux = free_space_flux(E, kin, p);
    Vec3 fd_flux;
    for (int i = 0; i < 3; ++i) {
      Vec3 Ep = E, Em = E;
      Ep[i] += kStep;
      Em[i] -= kStep;
      fd_flux[i] = -(free_space_energy(Ep, kin, p) - free_space_energy(Em, kin, p)) / (2 * kStep);
    }
    CHECK(rel_err(flux, fd_flux) < 1e-6);

    Mat3 stress = free_space_stress(E, kin, p);
    Mat3 fd_stress;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        Mat3 Fp = F, Fm = F;
        Fp(m, n) += kStep;
        Fm(m, n) -= kStep;
        fd_stress(m, n) = (free_space_energy(E, build_kinematics(Fp), p) -
                           free_space_energy(E, build_kinematics(Fm), p)) /
                          (2 * kStep);
      }
    CHECK(rel_err(stress, fd_stress) < 1e-6);
  }
}

TEST_CASE("point tangent blocks match FD of the state functions") {
  auto rng = testutil::make_rng(409);
  for (int rep = 0; rep < 25; ++rep) {
    MatterPoint pt = testutil::random_matter_point(rng);
    Mat3 F = testutil::random_def_gradient(rng);
    MaterialParams p = testutil::random_material_params(rng);
    Kinematics kin = build_kinematics(F);
    PointTangent t = matter_point_tangent(pt, kin, p);

    // du/dE = -flux_total, du/dF = total stress, du/dOrder = energetic - interior.
    auto flux = [&](const MatterPoint& q, const Kinematics& k2) {
      return electric_flux(q, k2, p).flux_total;
    };
    auto stress = [&](const MatterPoint& q, const Kinematics& k2) {
      return total_stress(q, k2, p).total;
    };
    auto order_force = [&](const MatterPoint& q, const Kinematics& k2) {
      ElectronicState s = electronic_state(q, k2, p);
      return Species<Vec3>{s.source_energetic.trans - s.ext_source_interior.trans,
                           s.source_energetic.cis - s.ext_source_interior.cis};
    };

    Mat3 fd_EE;
    Species<Mat3> fd_Ey;
    ThirdOrder fd_EF;
    for (int i = 0; i < 3; ++i) {
      MatterPoint qp = pt, qm = pt;
      qp.E[i] += kStep;
      qm.E[i] -= kStep;
      Vec3 dflux = (1.0 / (2 * kStep)) * (flux(qp, kin) - flux(qm, kin));
      for (int j = 0; j < 3; ++j) fd_EE(i, j) = -dflux[j];
      Species<Vec3> dof = (1.0 / (2 * kStep)) * (order_force(qp, kin) - order_force(qm, kin));
      for (int j = 0; j < 3; ++j) {
        fd_Ey.trans(i, j) = dof.trans[j];
        fd_Ey.cis(i, j) = dof.cis[j];
      }
      fd_EF[i] = (1.0 / (2 * kStep)) * (stress(qp, kin) - stress(qm, kin));
    }
    CHECK(rel_err(t.EE, fd_EE) < 1e-6);
    CHECK(rel_err(t.Ey.trans, fd_Ey.trans) < 1e-6);
    CHECK(rel_err(t.Ey.cis, fd_Ey.cis) < 1e-6);
    for (int i = 0; i < 3; ++i) CHECK(rel_err(t.EF[i], fd_EF[i]) < 1e-6);

    Species<Mat3> fd_yy;
    Species<ThirdOrder> fd_yF;
    for (int i = 0; i < 3; ++i) {
      MatterPoint qp = pt, qm = pt;
      qp.order.trans[i] += kStep;
      qm.order.trans[i] -= kStep;
      Species<Vec3> d1 = (1.0 / (2 * kStep)) * (order_force(qp, kin) - order_force(qm, kin));
      for (int j = 0; j < 3; ++j) fd_yy.trans(i, j) = d1.trans[j];
      CHECK(norm(d1.cis) < 1e-8);  // no trans-cis coupling
      fd_yF.trans[i] = (1.0 / (2 * kStep)) * (stress(qp, kin) - stress(qm, kin));

      qp = qm = pt;
      qp.order.cis[i] += kStep;
      qm.order.cis[i] -= kStep;
      Species<Vec3> d2 = (1.0 / (2 * kStep)) * (order_force(qp, kin) - order_force(qm, kin));
      for (int j = 0; j < 3; ++j) fd_yy.cis(i, j) = d2.cis[j];
      fd_yF.cis[i] = (1.0 / (2 * kStep)) * (stress(qp, kin) - stress(qm, kin));
    }
    CHECK(rel_err(t.yy.trans, fd_yy.trans) < 1e-6);
    CHECK(rel_err(t.yy.cis, fd_yy.cis) < 1e-6);
    for (int i = 0; i < 3; ++i) {
      CHECK(rel_err(t.yF.trans[i], fd_yF.trans[i]) < 1e-6);
      CHECK(rel_err(t.yF.cis[i], fd_yF.cis[i]) < 1e-6);
    }

    Tensor4 fd_FF;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        Mat3 Fp = F, Fm = F;
        Fp(m, n) += kStep;
        Fm(m, n) -= kStep;
        Mat3 ds = (1.0 / (2 * kStep)) *
                  (stress(pt, build_kinematics(Fp)) - stress(pt, build_kinematics(Fm)));
        for (int q = 0; q < 3; ++q)
          for (int r = 0; r < 3; ++r) fd_FF(q, r, m, n) = ds(q, r);
      }
    CHECK(rel_err(t.FF, fd_FF) < 1e-6);

    // Symmetry of the full Hessian across blocks.
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        for (int q = 0; q < 3; ++q)
          for (int r = 0; r < 3; ++r)
            CHECK(t.FF(m, n, q, r) == doctest::Approx(t.FF(q, r, m, n)).epsilon(1e-12));
  }
}

TEST_CASE("free-space tangent blocks match FD") {
  auto rng = testutil::make_rng(410);
  for (int rep = 0; rep < 10; ++rep) {
    Vec3 E = testutil::random_vec(rng);
    Mat3 F = testutil::random_def_gradient(rng);
    MaterialParams p = testutil::random_material_params(rng);
    p.eta = 1e-3;
    Kinematics kin = build_kinematics(F);
    PointTangent t = free_space_point_tangent(E, kin, p);

    Mat3 fd_EE;
    ThirdOrder fd_EF;
    for (int i = 0; i < 3; ++i) {
      Vec3 Ep = E, Em = E;
      Ep[i] += kStep;
      Em[i] -= kStep;
      Vec3 dflux = (1.0 / (2 * kStep)) * (free_space_flux(Ep, kin, p) - free_space_flux(Em, kin, p));
      for (int j = 0; j < 3; ++j) fd_EE(i, j) = -dflux[j];
      fd_EF[i] =
          (1.0 / (2 * kStep)) * (free_space_stress(Ep, kin, p) - free_space_stress(Em, kin, p));
    }
    CHECK(rel_err(t.EE, fd_EE) < 1e-6);
    for (int i = 0; i < 3; ++i) CHECK(rel_err(t.EF[i], fd_EF[i]) < 1e-6);

    Tensor4 fd_FF;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        Mat3 Fp = F, Fm = F;
        Fp(m, n) += kStep;
        Fm(m, n) -= kStep;
        Mat3 ds = (1.0 / (2 * kStep)) * (free_space_stress(E, build_kinematics(Fp), p) -
                                         free_space_stress(E, build_kinematics(Fm), p));
        for (int q = 0; q < 3; ++q)
          for (int r = 0; r < 3; ++r) fd_FF(q, r, m, n) = ds(q, r);
      }
    CHECK(rel_err(t.FF, fd_FF) < 1e-6);
  }
}

namespace {

// Polynomial manufactured fields with analytic gradients.
ManufacturedFields polynomial_fields(bool affine_only) {
  ManufacturedFields mf;
  const Vec3 g{0.4, -0.25, 0.15};
  Mat3 A;  // symmetric quadratic part of the potential
  A(0, 0) = 0.2;
  A(1, 1) = -0.1;
  A(2, 2) = 0.15;
  A(0, 1) = A(1, 0) = 0.05;
  A(1, 2) = A(2, 1) = -0.08;
  A(0, 2) = A(2, 0) = 0.03;
  if (affine_only) A = Mat3::zero();

  mf.potential = [=](const Vec3& X) { return dot(g, X) + 0.5 * dot(X, A * X); };
  mf.potential_grad = [=](const Vec3& X) { return g + A * X; };

  Mat3 Bt, Bc;
  Bt(0, 0) = 0.2;
  Bt(0, 1) = -0.1;
  Bt(1, 2) = 0.15;
  Bt(2, 0) = 0.05;
  Bc(1, 1) = -0.12;
  Bc(2, 1) = 0.07;
  Bc(0, 2) = 0.09;
  Vec3 qt{0.08, -0.05, 0.06};  // quadratic coefficient per component: 1/2 q_i |X|^2
  Vec3 qc{-0.04, 0.03, 0.05};
  if (affine_only) qt = qc = Vec3{};
  Vec3 y0t{0.5, -0.2, 0.3}, y0c{-0.1, 0.4, 0.2};

  mf.order = [=](const Vec3& X) {
    double xx = dot(X, X);
    Species<Vec3> s;
    s.trans = y0t + Bt * X + 0.5 * xx * qt;
    s.cis = y0c + Bc * X + 0.5 * xx * qc;
    return s;
  };
  mf.order_grad = [=](const Vec3& X) {
    Species<Mat3> s;
    s.trans = Bt + outer(qt, X);
    s.cis = Bc + outer(qc, X);
    return s;
  };

  Mat3 L;  // linear part of the displacement
  L(0, 0) = 0.08;
  L(0, 1) = 0.05;
  L(1, 1) = -0.06;
  L(1, 2) = 0.04;
  L(2, 0) = -0.03;
  L(2, 2) = 0.07;
  Vec3 qm{0.05, -0.04, 0.03};
  if (affine_only) qm = Vec3{};

  mf.deformation = [=](const Vec3& X) {
    double xx = dot(X, X);
    return X + L * X + 0.5 * xx * qm;
  };
  mf.deformation_grad = [=](const Vec3& X) {
    return Mat3::identity() + L + outer(qm, X);
  };
  return mf;
}

}  // namespace

TEST_CASE("Lorentz identity residual") {
  MaterialParams p;
  p.beta = {0.3, 0.2};

  SUBCASE("uniform state vanishes exactly") {
    ManufacturedFields mf;
    mf.potential = [](const Vec3&) { return 0.7; };
    mf.potential_grad = [](const Vec3&) { return Vec3{}; };
    mf.order = [](const Vec3&) { return Species<Vec3>{Vec3{0.5, 0.1, -0.2}, Vec3{0.3, 0, 0}}; };
    mf.order_grad = [](const Vec3&) { return Species<Mat3>{}; };
    mf.deformation = [](const Vec3& X) { return X; };
    mf.deformation_grad = [](const Vec3&) { return Mat3::identity(); };
    CHECK(lorentz_identity_residual(mf, Vec3{0.2, 0.3, 0.1}, p) == 0.0);
  }

  SUBCASE("affine fields are resolved to near machine precision") {
    ManufacturedFields mf = polynomial_fields(true);
    CHECK(lorentz_identity_residual(mf, Vec3{0.2, -0.1, 0.3}, p) < 1e-8);
  }

  SUBCASE("smooth polynomial fields on a point cloud") {
    ManufacturedFields mf = polynomial_fields(false);
    auto rng = testutil::make_rng(411);
    for (int rep = 0; rep < 20; ++rep) {
      Vec3 X = testutil::random_vec(rng, 0.4);
      CHECK(lorentz_identity_residual(mf, X, p, 1e-5) < 1e-5);
    }
  }
}
