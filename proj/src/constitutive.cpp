#include "photomech/constitutive.hpp"

#include <cmath>

namespace photomech {

namespace {

Vec3 total_polarization_true(const Species<Vec3>& order, const MaterialParams& p) {
  return p.omega0.trans * order.trans + p.omega0.cis * order.cis;
}

}  // namespace

ElectricState electric_flux(const MatterPoint& pt, const Kinematics& kin,
                            const MaterialParams& p) {
  ElectricState s;
  Vec3 e = pt.E * kin.f;
  s.true_flux_free = p.epsilon0 * e;
  s.true_polarization = total_polarization_true(pt.order, p);
  s.true_flux_total = s.true_flux_free + s.true_polarization;
  s.flux_free = s.true_flux_free * kin.K;
  s.polarization = s.true_polarization * kin.K;
  s.flux_total = s.flux_free + s.polarization;
  return s;
}

ElectronicState electronic_state(const MatterPoint& pt, const Kinematics& kin,
                                 const MaterialParams& p, const BulkLoads& loads) {
  ElectronicState s;
  s.stress = {p.kappa.trans * pt.order_grad.trans, p.kappa.cis * pt.order_grad.cis};
  s.true_stress = {s.stress.trans * kin.k, s.stress.cis * kin.k};

  // d(stored)/d(order) = a order + beta F^T F order.
  Mat3 FtF = transpose(kin.F) * kin.F;
  s.source_energetic = {p.a.trans * pt.order.trans + p.beta.trans * (FtF * pt.order.trans),
                        p.a.cis * pt.order.cis + p.beta.cis * (FtF * pt.order.cis)};
  s.source_dissipative = {kin.J * p.gamma0 * pt.order_rate.trans,
                          kin.J * p.gamma0 * pt.order_rate.cis};
  s.source_total = s.source_energetic + s.source_dissipative;

  Vec3 e = pt.E * kin.f;
  s.ext_source_interior = {kin.J * p.omega0.trans * e, kin.J * p.omega0.cis * e};
  s.ext_source_exterior = loads.electronic_force;
  s.ext_source_total = s.ext_source_interior + s.ext_source_exterior;

  s.momentum = {p.electronic_inertia * pt.order_rate.trans,
                p.electronic_inertia * pt.order_rate.cis};
  return s;
}

StressState total_stress(const MatterPoint& pt, const Kinematics& kin,
                         const MaterialParams& p) {
  StressState s;
  Vec3 e = pt.E * kin.f;
  Vec3 pol = total_polarization_true(pt.order, p);
  const double e_s = -0.5 * p.epsilon0 * dot(e, e);
  const double c_s = -dot(pol, e);

  // Energy-momentum (Maxwell) format, pulled back with the cofactor.
  s.true_electric = e_s * Mat3::identity() + outer(e, p.epsilon0 * e);
  s.true_coupling = c_s * Mat3::identity() + outer(e, pol);
  s.electric = s.true_electric * kin.K;
  s.coupling = s.true_coupling * kin.K;

  const double lnJ = std::log(kin.J);
  Mat3 ft = transpose(kin.f);
  s.mechanical = p.mu * (kin.F - ft) + (p.lambda * lnJ) * ft;
  Vec3 Ft = kin.F * pt.order.trans;
  Vec3 Fc = kin.F * pt.order.cis;
  s.mechanical += p.beta.trans * outer(Ft, pt.order.trans);
  s.mechanical += p.beta.cis * outer(Fc, pt.order.cis);

  s.total = s.electric + s.coupling + s.mechanical;
  s.true_mechanical = s.mechanical * kin.k;
  s.true_total = s.total * kin.k;
  s.momentum = p.mass_density * pt.velocity;
  return s;
}

Vec3 free_space_flux(const Vec3& E, const Kinematics& kin, const MaterialParams& p) {
  return (p.epsilon0 * (E * kin.f)) * kin.K;
}

Mat3 free_space_stress(const Vec3& E, const Kinematics& kin, const MaterialParams& p) {
  Vec3 e = E * kin.f;
  Mat3 maxwell =
      (-0.5 * p.epsilon0 * dot(e, e)) * Mat3::identity() + outer(e, p.epsilon0 * e);
  Mat3 ft = transpose(kin.f);
  Mat3 fict = kin.F - ft + std::log(kin.J) * ft;
  return maxwell * kin.K + p.eta * fict;
}

Mat3 electric_stress_chain_rule(const Vec3& E, const Kinematics& kin,
                                const MaterialParams& p) {
  Tensor4 df = df_dF(kin);
  Tensor4 dK = dK_dF(kin);
  Mat3 out;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            s += E[i] * (df(i, k, m, n) * kin.K(k, j) + kin.f(i, k) * dK(k, j, m, n)) * E[j];
      out(m, n) = -0.5 * p.epsilon0 * s;
    }
  return out;
}

Mat3 coupling_stress_chain_rule(const Species<Vec3>& order, const Vec3& E,
                                const Kinematics& kin, const MaterialParams& p) {
  Tensor4 dK = dK_dF(kin);
  Vec3 weighted = total_polarization_true(order, p);
  Mat3 out;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += weighted[i] * dK(i, j, m, n) * E[j];
      out(m, n) = -s;
    }
  return out;
}

Momenta momenta(const Species<Vec3>& order_rate, const Vec3& velocity,
                const MaterialParams& p) {
  return {{p.electronic_inertia * order_rate.trans, p.electronic_inertia * order_rate.cis},
          p.mass_density * velocity};
}

double dual_kinetic(const Momenta& m, const MaterialParams& p) {
  double t = 0.5 * dot(m.mechanical, m.mechanical) / p.mass_density;
  if (p.electronic_inertia > 0.0)
    t += 0.5 * (dot(m.electronic.trans, m.electronic.trans) +
                dot(m.electronic.cis, m.electronic.cis)) /
         p.electronic_inertia;
  return t;
}

PointTangent matter_point_tangent(const MatterPoint& pt, const Kinematics& kin,
                                  const MaterialParams& p) {
  PointTangent t;
  const Mat3& f = kin.f;
  const double J = kin.J;
  Vec3 e = pt.E * f;
  Vec3 pol = total_polarization_true(pt.order, p);
  Vec3 fe = f * e;    // (fe)_n = f_ni e_i
  Vec3 fp = f * pol;  // (fp)_n = f_ni pol_i
  Mat3 ffT = f * transpose(f);
  const double ee = dot(e, e);
  const double pe = dot(pol, e);
  const double lnJ = std::log(J);

  // d2u/dEdE = -eps0 J f f^T (electric part only).
  t.EE = (-p.epsilon0 * J) * ffT;

  // d2u/dE_i dOrder^s_j = -J omega0^s f_ij (coupling part only).
  t.Ey = {(-J * p.omega0.trans) * f, (-J * p.omega0.cis) * f};

  // d2u/dE_i dF_mn, electric + coupling parts.
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        double elec =
            -p.epsilon0 * J * (f(n, m) * fe[i] - f(i, m) * fe[n] - e[m] * ffT(i, n));
        double coup = -J * f(n, m) * fp[i] + J * f(i, m) * fp[n];
        t.EF[i](m, n) = elec + coup;
      }

  // d2u/dOrder dOrder = a I + beta F^T F, per species.
  Mat3 FtF = transpose(kin.F) * kin.F;
  t.yy = {p.a.trans * Mat3::identity() + p.beta.trans * FtF,
          p.a.cis * Mat3::identity() + p.beta.cis * FtF};

  // d2u/dOrder^s_i dF_mn: coupling + |F order|^2 parts.
  Vec3 Ft = kin.F * pt.order.trans;
  Vec3 Fc = kin.F * pt.order.cis;
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        double coup = f(n, m) * e[i] - e[m] * f(n, i);
        t.yF.trans[i](m, n) = -p.omega0.trans * J * coup +
                              p.beta.trans * ((i == n ? Ft[m] : 0.0) +
                                              kin.F(m, i) * pt.order.trans[n]);
        t.yF.cis[i](m, n) = -p.omega0.cis * J * coup +
                            p.beta.cis * ((i == n ? Fc[m] : 0.0) +
                                          kin.F(m, i) * pt.order.cis[n]);
      }

  // d2u/dF dF: electric + coupling + stored parts.
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r) {
          // (q,r) plays the role of the second index pair (p,q) in the notes.
          double antisym = f(r, q) * f(n, m) - f(n, q) * f(r, m);
          double elec =
              -0.5 * p.epsilon0 * J * ee * antisym +
              p.epsilon0 * J *
                  (f(n, m) * e[q] * fe[r] + f(r, q) * e[m] * fe[n] -
                   e[q] * f(r, m) * fe[n] - e[m] * f(n, q) * fe[r] -
                   e[m] * e[q] * ffT(n, r));
          double coup = -J * pe * antisym +
                        J * (f(n, m) * e[q] * fp[r] + f(r, q) * e[m] * fp[n] -
                             e[q] * f(r, m) * fp[n] - e[m] * f(n, q) * fp[r]);
          double mech = p.mu * ((m == q && n == r ? 1.0 : 0.0) + f(n, q) * f(r, m)) +
                        p.lambda * (f(n, m) * f(r, q) - lnJ * f(n, q) * f(r, m));
          if (m == q)
            mech += p.beta.trans * pt.order.trans[n] * pt.order.trans[r] +
                    p.beta.cis * pt.order.cis[n] * pt.order.cis[r];
          t.FF(m, n, q, r) = elec + coup + mech;
        }

  t.grad_diag = p.kappa;
  return t;
}

PointTangent free_space_point_tangent(const Vec3& E, const Kinematics& kin,
                                      const MaterialParams& p) {
  PointTangent t;
  const Mat3& f = kin.f;
  const double J = kin.J;
  Vec3 e = E * f;
  Vec3 fe = f * e;
  Mat3 ffT = f * transpose(f);
  const double ee = dot(e, e);
  const double lnJ = std::log(J);

  t.EE = (-p.epsilon0 * J) * ffT;
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        t.EF[i](m, n) =
            -p.epsilon0 * J * (f(n, m) * fe[i] - f(i, m) * fe[n] - e[m] * ffT(i, n));

  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r) {
          double antisym = f(r, q) * f(n, m) - f(n, q) * f(r, m);
          double elec =
              -0.5 * p.epsilon0 * J * ee * antisym +
              p.epsilon0 * J *
                  (f(n, m) * e[q] * fe[r] + f(r, q) * e[m] * fe[n] -
                   e[q] * f(r, m) * fe[n] - e[m] * f(n, q) * fe[r] -
                   e[m] * e[q] * ffT(n, r));
          double fict = p.eta * ((m == q && n == r ? 1.0 : 0.0) + f(n, q) * f(r, m) +
                                 f(n, m) * f(r, q) - lnJ * f(n, q) * f(r, m));
          t.FF(m, n, q, r) = elec + fict;
        }
  return t;
}

namespace {

// Spatial (Cauchy-type) quantities entering the divergence identity.
struct SpatialBundle {
  Mat3 cauchy_total;
  Mat3 cauchy_mech;
  double c_s = 0.0;
  Vec3 e;
  Vec3 d;    // true total flux
  Vec3 pol;  // true polarization
};

SpatialBundle eval_bundle(const ManufacturedFields& fields, const Vec3& X,
                          const MaterialParams& p) {
  MatterPoint pt;
  pt.E = -fields.potential_grad(X);
  pt.order = fields.order(X);
  pt.order_grad = fields.order_grad(X);
  Kinematics kin = build_kinematics(fields.deformation_grad(X));

  SpatialBundle b;
  StressState st = total_stress(pt, kin, p);
  ElectricState el = electric_flux(pt, kin, p);
  b.cauchy_total = st.true_total;
  b.cauchy_mech = st.true_mechanical;
  b.c_s = kin.j * coupling_energy(pt.order, pt.E, kin, p);
  b.e = pt.E * kin.f;
  b.d = el.true_flux_total;
  b.pol = el.true_polarization;
  return b;
}

}  // namespace

double lorentz_identity_residual(const ManufacturedFields& fields, const Vec3& X,
                                 const MaterialParams& p, double fd_step) {
  const double h = fd_step;
  Kinematics kin0 = build_kinematics(fields.deformation_grad(X));
  SpatialBundle base = eval_bundle(fields, X, p);

  // Material-direction central differences of all bundle members.
  SpatialBundle dX[3];
  for (int k = 0; k < 3; ++k) {
    Vec3 Xp = X, Xm = X;
    Xp[k] += h;
    Xm[k] -= h;
    SpatialBundle bp = eval_bundle(fields, Xp, p);
    SpatialBundle bm = eval_bundle(fields, Xm, p);
    dX[k].cauchy_total = (1.0 / (2 * h)) * (bp.cauchy_total - bm.cauchy_total);
    dX[k].cauchy_mech = (1.0 / (2 * h)) * (bp.cauchy_mech - bm.cauchy_mech);
    dX[k].c_s = (bp.c_s - bm.c_s) / (2 * h);
    dX[k].e = (1.0 / (2 * h)) * (bp.e - bm.e);
    dX[k].d = (1.0 / (2 * h)) * (bp.d - bm.d);
  }

  // Spatial derivative chain rule: d/dx_j = f_kj d/dX_k.
  const Mat3& f = kin0.f;
  Vec3 div_total, div_mech, grad_cs, grad_e_dot_pol;
  double q_s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        div_total[i] += dX[k].cauchy_total(i, j) * f(k, j);
        div_mech[i] += dX[k].cauchy_mech(i, j) * f(k, j);
      }
    for (int k = 0; k < 3; ++k) grad_cs[i] += dX[k].c_s * f(k, i);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        grad_e_dot_pol[i] += dX[k].e[i] * f(k, j) * base.pol[j];
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) q_s += dX[k].d[i] * f(k, i);

  Vec3 residual = div_total - grad_cs - div_mech - grad_e_dot_pol - q_s * base.e;
  return norm(residual);
}

}  // namespace photomech
