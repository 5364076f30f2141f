#pragma once

#include "photomech/species.hpp"
#include "photomech/tensor.hpp"

namespace photomech {

// All parameters are nondimensional by default (unit system chosen in the
// scenario config); epsilon0 is configurable rather than fixed to SI.
struct MaterialParams {
  double epsilon0 = 1.0;                 // permittivity of free space
  Species<double> omega0{1.0, 1.0};      // effective charge density per species
  double gamma0 = 0.0;                   // electronic damping
  double electronic_inertia = 1.0;       // density governing electronic modes
  double mass_density = 1.0;             // mechanical mass density
  double mu = 1.0;                       // Neo-Hookean shear modulus
  double lambda = 1.0;                   // Neo-Hookean volumetric modulus
  Species<double> a{1.0, 1.0};           // local electronic stiffness
  Species<double> beta{0.0, 0.0};        // |F.order|^2 coupling modulus
  Species<double> kappa{1.0, 1.0};       // order-gradient penalty
  double eta = 1e-6;                     // fictitious free-space stiffness

  // Throws ConfigError on violated parameter bounds.
  void validate() const;
};

// Pointwise bulk load densities (per unit reference volume).
struct BulkLoads {
  double free_charge = 0.0;          // prescribed free charge
  Species<Vec3> electronic_force{};  // external electronic source
  Vec3 body_force{};                 // mechanical body force
};

// Pointwise surface load densities (per unit reference area) on the matter
// boundary.
struct SurfaceLoads {
  double surface_charge = 0.0;       // prescribed free surface charge
  Species<Vec3> electronic_flux{};   // external electronic surface source
  Vec3 traction{};                   // mechanical surface traction
};

struct LoadData {
  BulkLoads bulk;
  SurfaceLoads surface;
};

}  // namespace photomech
