#pragma once

#include "photomech/kinematics.hpp"
#include "photomech/material.hpp"

namespace photomech {

// Electric field energy density (material description):
//   -1/2 J eps0 |e|^2  with  e = E.f;  always <= 0.
double electric_energy(const Vec3& E, const Kinematics& kin, const MaterialParams& p);

// Electro-electronic coupling density: sum_s -omega0^s order^s . K . E.
double coupling_energy(const Species<Vec3>& order, const Vec3& E, const Kinematics& kin,
                       const MaterialParams& p);

// Stored mechanical + electronic energy, local part:
//   mu/2 [F:F - 3 - 2 ln J] + lambda/2 ln^2 J
//   + sum_s [a^s/2 |order^s|^2 + beta^s/2 |F.order^s|^2].
double local_stored_energy(const Species<Vec3>& order, const Kinematics& kin,
                           const MaterialParams& p);

// Stored gradient energy: sum_s kappa^s/2 grad^s : grad^s.
double gradient_stored_energy(const Species<Mat3>& grad, const MaterialParams& p);

// Total stored energy (local + gradient parts).
double stored_energy(const Species<Vec3>& order, const Species<Mat3>& grad,
                     const Kinematics& kin, const MaterialParams& p);

// External potential densities, linear in the solution fields.
double external_potential_bulk(double potential, const Species<Vec3>& order,
                               const Vec3& position, const BulkLoads& loads);
double external_potential_surface(double potential, const Species<Vec3>& order,
                                  const Vec3& position, const SurfaceLoads& loads);

struct KineticDensities {
  double electronic = 0.0;
  double mechanical = 0.0;
};

KineticDensities kinetic_densities(const Species<Vec3>& order_rate, const Vec3& velocity,
                                   const MaterialParams& p);

// Convex rate potential 1/2 J gamma0 |order_rate|^2 (summed over species).
double dissipation_potential(const Species<Vec3>& order_rate, const Kinematics& kin,
                             const MaterialParams& p);

// Free-space density: electric energy plus a small fictitious elastic term
// eta * [1/2 (F:F - 3) - ln J + 1/2 ln^2 J] regularizing the deformation
// extension into the surrounding shell.
double free_space_energy(const Vec3& E, const Kinematics& kin, const MaterialParams& p);

// Total internal density in matter (electric + coupling + stored).
double internal_energy(const Vec3& E, const Species<Vec3>& order, const Species<Mat3>& grad,
                       const Kinematics& kin, const MaterialParams& p);

}  // namespace photomech
