#pragma once

#include <array>
#include <functional>

#include "photomech/energy.hpp"

namespace photomech {

// Pointwise solution state in matter. Rates default to zero; they only feed
// the dissipative source and the momenta.
struct MatterPoint {
  Vec3 E;
  Species<Vec3> order;
  Species<Mat3> order_grad;
  Species<Vec3> order_rate;
  Vec3 velocity;
};

// Electric flux package. Nominal quantities are per unit reference area,
// true quantities per unit current area; related by the inverse cofactor k.
struct ElectricState {
  Vec3 flux_free;          // -d(electric_energy)/dE = eps0 e.K
  Vec3 polarization;       // -d(coupling_energy)/dE = sum_s omega0^s order^s.K
  Vec3 flux_total;
  Vec3 true_flux_free;     // eps0 e
  Vec3 true_polarization;  // sum_s omega0^s order^s
  Vec3 true_flux_total;
};

ElectricState electric_flux(const MatterPoint& pt, const Kinematics& kin,
                            const MaterialParams& p);

struct ElectronicState {
  Species<Mat3> stress;              // d(stored)/d(order_grad) = kappa grad
  Species<Mat3> true_stress;         // stress.k
  Species<Vec3> source_energetic;    // d(stored)/d(order)
  Species<Vec3> source_dissipative;  // d(dissipation)/d(rate) = J gamma0 rate
  Species<Vec3> source_total;
  Species<Vec3> ext_source_interior;  // -d(coupling)/d(order) = J omega0 e
  Species<Vec3> ext_source_exterior;  // prescribed bulk load
  Species<Vec3> ext_source_total;
  Species<Vec3> momentum;  // electronic_inertia * rate
};

ElectronicState electronic_state(const MatterPoint& pt, const Kinematics& kin,
                                 const MaterialParams& p, const BulkLoads& loads = {});

// Piola stresses in energy-momentum form plus their Cauchy counterparts.
struct StressState {
  Mat3 electric;    // [e_s i + e (x) eps0 e].K
  Mat3 coupling;    // [c_s i + e (x) polarization].K
  Mat3 mechanical;  // d(stored)/dF
  Mat3 total;
  Mat3 true_electric, true_coupling, true_mechanical, true_total;
  Vec3 momentum;  // mass_density * velocity
};

StressState total_stress(const MatterPoint& pt, const Kinematics& kin,
                         const MaterialParams& p);

// Free-space state functions (no electronic fields there).
Vec3 free_space_flux(const Vec3& E, const Kinematics& kin, const MaterialParams& p);
Mat3 free_space_stress(const Vec3& E, const Kinematics& kin, const MaterialParams& p);

// Independent recomputation of the electric/coupling Piola stresses through the
// kinematic derivative tensors dK_dF and df_dF (chain rule on the contracted
// energy expressions). Used to cross-check the energy-momentum forms.
Mat3 electric_stress_chain_rule(const Vec3& E, const Kinematics& kin,
                                const MaterialParams& p);
Mat3 coupling_stress_chain_rule(const Species<Vec3>& order, const Vec3& E,
                                const Kinematics& kin, const MaterialParams& p);

struct Momenta {
  Species<Vec3> electronic;
  Vec3 mechanical;
};

Momenta momenta(const Species<Vec3>& order_rate, const Vec3& velocity,
                const MaterialParams& p);

// Legendre-dual kinetic energy in terms of momenta. The electronic term is
// dropped when electronic_inertia = 0 (massless modes carry no momentum).
double dual_kinetic(const Momenta& m, const MaterialParams& p);

// Second derivatives of the internal energy density at a point, grouped by
// variable pair. Blocks absent from the structure vanish identically
// (E-grad, order-grad cross terms, trans-cis coupling).
using ThirdOrder = std::array<Mat3, 3>;

struct PointTangent {
  Mat3 EE;                   // (i,j)    = d2u/dE_i dE_j
  Species<Mat3> Ey;          // [s](i,j) = d2u/dE_i dOrder^s_j
  ThirdOrder EF;             // [i](m,n) = d2u/dE_i dF_mn
  Species<Mat3> yy;          // [s](i,j) = d2u/dOrder^s_i dOrder^s_j
  Species<ThirdOrder> yF;    // [s][i](m,n) = d2u/dOrder^s_i dF_mn
  Tensor4 FF;                // (m,n,p,q) = d2u/dF_mn dF_pq
  Species<double> grad_diag; // kappa^s times identity on the gradient block
};

PointTangent matter_point_tangent(const MatterPoint& pt, const Kinematics& kin,
                                  const MaterialParams& p);
PointTangent free_space_point_tangent(const Vec3& E, const Kinematics& kin,
                                      const MaterialParams& p);

// Smooth manufactured fields with analytic material gradients. The divergence
// identity below differentiates these numerically over material coordinates.
struct ManufacturedFields {
  std::function<double(const Vec3&)> potential;
  std::function<Vec3(const Vec3&)> potential_grad;
  std::function<Species<Vec3>(const Vec3&)> order;
  std::function<Species<Mat3>(const Vec3&)> order_grad;
  std::function<Vec3(const Vec3&)> deformation;
  std::function<Mat3(const Vec3&)> deformation_grad;
};

// Residual of the spatial identity
//   div_x s = div_x(c_s i + s_mech) + (grad_x e).p + q_s e,   q_s := div_x d,
// evaluated at material point X with central differences of step fd_step.
double lorentz_identity_residual(const ManufacturedFields& fields, const Vec3& X,
                                 const MaterialParams& p, double fd_step = 1e-5);

}  // namespace photomech
