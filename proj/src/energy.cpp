#include "photomech/energy.hpp"

#include <cmath>

#include "photomech/errors.hpp"

namespace photomech {

void MaterialParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(epsilon0 > 0.0, "material.epsilon0 must be > 0");
  require(gamma0 >= 0.0, "material.gamma0 must be >= 0");
  require(electronic_inertia >= 0.0, "material.electronic_inertia must be >= 0");
  require(mass_density > 0.0, "material.mass_density must be > 0");
  require(mu >= 0.0, "material.mu must be >= 0");
  require(lambda >= 0.0, "material.lambda must be >= 0");
  require(a.trans >= 0.0 && a.cis >= 0.0, "material.a must be >= 0");
  require(kappa.trans >= 0.0 && kappa.cis >= 0.0, "material.kappa must be >= 0");
  require(eta > 0.0 && eta < 1.0, "material.eta must lie in (0, 1)");
}

double electric_energy(const Vec3& E, const Kinematics& kin, const MaterialParams& p) {
  Vec3 e = E * kin.f;
  return -0.5 * kin.J * p.epsilon0 * dot(e, e);
}

double coupling_energy(const Species<Vec3>& order, const Vec3& E, const Kinematics& kin,
                       const MaterialParams& p) {
  Vec3 KE = kin.K * E;
  return -p.omega0.trans * dot(order.trans, KE) - p.omega0.cis * dot(order.cis, KE);
}

double local_stored_energy(const Species<Vec3>& order, const Kinematics& kin,
                           const MaterialParams& p) {
  const double lnJ = std::log(kin.J);
  double w = 0.5 * p.mu * (ddot(kin.F, kin.F) - 3.0 - 2.0 * lnJ) +
             0.5 * p.lambda * lnJ * lnJ;
  Vec3 Ft = kin.F * order.trans;
  Vec3 Fc = kin.F * order.cis;
  w += 0.5 * p.a.trans * dot(order.trans, order.trans) + 0.5 * p.beta.trans * dot(Ft, Ft);
  w += 0.5 * p.a.cis * dot(order.cis, order.cis) + 0.5 * p.beta.cis * dot(Fc, Fc);
  return w;
}

double gradient_stored_energy(const Species<Mat3>& grad, const MaterialParams& p) {
  return 0.5 * p.kappa.trans * ddot(grad.trans, grad.trans) +
         0.5 * p.kappa.cis * ddot(grad.cis, grad.cis);
}

double stored_energy(const Species<Vec3>& order, const Species<Mat3>& grad,
                     const Kinematics& kin, const MaterialParams& p) {
  return local_stored_energy(order, kin, p) + gradient_stored_energy(grad, p);
}

double external_potential_bulk(double potential, const Species<Vec3>& order,
                               const Vec3& position, const BulkLoads& loads) {
  return loads.free_charge * potential - dot(loads.electronic_force.trans, order.trans) -
         dot(loads.electronic_force.cis, order.cis) - dot(loads.body_force, position);
}

double external_potential_surface(double potential, const Species<Vec3>& order,
                                  const Vec3& position, const SurfaceLoads& loads) {
  return loads.surface_charge * potential - dot(loads.electronic_flux.trans, order.trans) -
         dot(loads.electronic_flux.cis, order.cis) - dot(loads.traction, position);
}

KineticDensities kinetic_densities(const Species<Vec3>& order_rate, const Vec3& velocity,
                                   const MaterialParams& p) {
  KineticDensities k;
  k.electronic = 0.5 * p.electronic_inertia *
                 (dot(order_rate.trans, order_rate.trans) + dot(order_rate.cis, order_rate.cis));
  k.mechanical = 0.5 * p.mass_density * dot(velocity, velocity);
  return k;
}

double dissipation_potential(const Species<Vec3>& order_rate, const Kinematics& kin,
                             const MaterialParams& p) {
  return 0.5 * kin.J * p.gamma0 *
         (dot(order_rate.trans, order_rate.trans) + dot(order_rate.cis, order_rate.cis));
}

double free_space_energy(const Vec3& E, const Kinematics& kin, const MaterialParams& p) {
  const double lnJ = std::log(kin.J);
  double fict = 0.5 * (ddot(kin.F, kin.F) - 3.0) - lnJ + 0.5 * lnJ * lnJ;
  return electric_energy(E, kin, p) + p.eta * fict;
}

double internal_energy(const Vec3& E, const Species<Vec3>& order, const Species<Mat3>& grad,
                       const Kinematics& kin, const MaterialParams& p) {
  return electric_energy(E, kin, p) + coupling_energy(order, E, kin, p) +
         stored_energy(order, grad, kin, p);
}

}  // namespace photomech
