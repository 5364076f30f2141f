#pragma once

#include <random>

#include "photomech/constitutive.hpp"
#include "photomech/tensor.hpp"

namespace testutil {

using photomech::Mat3;
using photomech::Tensor4;
using photomech::Vec3;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_vec(std::mt19937_64& rng, double amp = 1.0) {
  return {amp * uniform(rng), amp * uniform(rng), amp * uniform(rng)};
}

inline Mat3 random_mat(std::mt19937_64& rng, double amp = 1.0) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = amp * uniform(rng);
  return a;
}

// Perturbation of the identity; invertible with overwhelming margin at amp <= 0.3.
inline Mat3 near_identity(std::mt19937_64& rng, double amp = 0.3) {
  Mat3 a = Mat3::identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) += amp * uniform(rng);
  return a;
}

// Random deformation gradient with det in [0.5, 2], rejection sampled.
inline Mat3 random_def_gradient(std::mt19937_64& rng) {
  for (;;) {
    Mat3 f = near_identity(rng, 0.3);
    double d = det(f);
    if (d >= 0.5 && d <= 2.0) return f;
  }
}

inline double rel_err(double got, double want) {
  double scale = std::abs(want);
  if (scale < 1e-300) return std::abs(got - want);
  return std::abs(got - want) / scale;
}

inline double rel_err(const Vec3& got, const Vec3& want) {
  double scale = photomech::norm(want);
  if (scale < 1e-300) return photomech::norm(got - want);
  return photomech::norm(got - want) / scale;
}

inline double rel_err(const Mat3& got, const Mat3& want) {
  double scale = photomech::norm(want);
  if (scale < 1e-300) return photomech::norm(got - want);
  return photomech::norm(got - want) / scale;
}

inline double rel_err(const Tensor4& got, const Tensor4& want) {
  double scale = photomech::norm(want);
  if (scale < 1e-300) return photomech::norm(got - want);
  return photomech::norm(got - want) / scale;
}

// Generic coupled material with every modulus active.
inline photomech::MaterialParams random_material_params(std::mt19937_64& rng) {
  photomech::MaterialParams p;
  p.epsilon0 = uniform(rng, 0.5, 2.0);
  p.omega0 = {uniform(rng, 0.2, 1.5), uniform(rng, 0.2, 1.5)};
  p.gamma0 = uniform(rng, 0.1, 2.0);
  p.electronic_inertia = uniform(rng, 0.5, 2.0);
  p.mass_density = uniform(rng, 0.5, 2.0);
  p.mu = uniform(rng, 0.5, 2.0);
  p.lambda = uniform(rng, 0.5, 2.0);
  p.a = {uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)};
  p.beta = {uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0)};
  p.kappa = {uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)};
  return p;
}

inline photomech::MatterPoint random_matter_point(std::mt19937_64& rng) {
  photomech::MatterPoint pt;
  pt.E = random_vec(rng);
  pt.order = {random_vec(rng), random_vec(rng)};
  pt.order_grad = {random_mat(rng), random_mat(rng)};
  pt.order_rate = {random_vec(rng), random_vec(rng)};
  pt.velocity = random_vec(rng);
  return pt;
}

}  // namespace testutil
