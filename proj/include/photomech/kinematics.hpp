#pragma once

#include <span>

#include "photomech/species.hpp"
#include "photomech/tensor.hpp"

namespace photomech {

// Deformation-gradient package. Invariants established by build_kinematics:
//   J = det F > 0,  K = J f^t (cofactor/area map),  k = K^-1,  j = 1/J.
struct Kinematics {
  Mat3 F = Mat3::identity();
  Mat3 f = Mat3::identity();  // F^-1
  Mat3 K = Mat3::identity();  // cof F
  Mat3 k = Mat3::identity();  // K^-1
  double J = 1.0;
  double j = 1.0;
};

Kinematics build_kinematics(const Mat3& F);

// Analytic derivatives with respect to F.
Mat3 dJ_dF(const Kinematics& kin);      // = K
Tensor4 df_dF(const Kinematics& kin);   // = -f boxtimes f^t
Tensor4 dK_dF(const Kinematics& kin);   // = f^t dyad K - K boxdot f

// Nominal electric field E and its spatial push-forward e = E.f.
struct ElectricKinematics {
  Vec3 E;
  Vec3 e;
};

Vec3 push_forward_electric(const Vec3& E, const Kinematics& kin);
ElectricKinematics make_electric(const Vec3& E, const Kinematics& kin);

// Electronic order parameters with material and spatial gradients per species.
struct ElectronicKinematics {
  Species<Vec3> order;
  Species<Mat3> grad;          // material gradient
  Species<Mat3> spatial_grad;  // grad . f
};

Species<Mat3> push_forward_electronic(const Species<Mat3>& grad, const Kinematics& kin);
ElectronicKinematics make_electronic(const Species<Vec3>& order, const Species<Mat3>& grad,
                                     const Kinematics& kin);

// Discrete material gradient from nodal values and shape-function gradients.
// Exact for affine fields on affine elements.
Vec3 gradient_from_nodal(std::span<const double> values, std::span<const Vec3> grads);
Mat3 gradient_from_nodal(std::span<const Vec3> values, std::span<const Vec3> grads);

}  // namespace photomech
