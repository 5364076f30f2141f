#include "photomech/kinematics.hpp"

#include <cassert>
#include <cstdio>

#include "photomech/errors.hpp"

namespace photomech {

Kinematics build_kinematics(const Mat3& F) {
  const double J = det(F);
  if (J <= 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "det F = %.6g <= 0", J);
    throw NonPositiveJacobian(buf);
  }
  Kinematics kin;
  kin.F = F;
  kin.J = J;
  kin.j = 1.0 / J;
  kin.K = cof_raw(F);
  // F^-1 = adj(F)/det = K^t / J;  K^-1 = (J F^-t)^-1 = F^t / J.
  kin.f = kin.j * transpose(kin.K);
  kin.k = kin.j * transpose(F);
  return kin;
}

Mat3 dJ_dF(const Kinematics& kin) { return kin.K; }

Tensor4 df_dF(const Kinematics& kin) {
  return -1.0 * boxtimes(kin.f, transpose(kin.f));
}

Tensor4 dK_dF(const Kinematics& kin) {
  return dyad(transpose(kin.f), kin.K) - boxdot(kin.K, kin.f);
}

Vec3 push_forward_electric(const Vec3& E, const Kinematics& kin) { return E * kin.f; }

ElectricKinematics make_electric(const Vec3& E, const Kinematics& kin) {
  return {E, push_forward_electric(E, kin)};
}

Species<Mat3> push_forward_electronic(const Species<Mat3>& grad, const Kinematics& kin) {
  return {grad.trans * kin.f, grad.cis * kin.f};
}

ElectronicKinematics make_electronic(const Species<Vec3>& order, const Species<Mat3>& grad,
                                     const Kinematics& kin) {
  return {order, grad, push_forward_electronic(grad, kin)};
}

Vec3 gradient_from_nodal(std::span<const double> values, std::span<const Vec3> grads) {
  assert(values.size() == grads.size());
  Vec3 g;
  for (std::size_t a = 0; a < values.size(); ++a) g += values[a] * grads[a];
  return g;
}

Mat3 gradient_from_nodal(std::span<const Vec3> values, std::span<const Vec3> grads) {
  assert(values.size() == grads.size());
  Mat3 g;
  for (std::size_t a = 0; a < values.size(); ++a) g += outer(values[a], grads[a]);
  return g;
}

}  // namespace photomech
