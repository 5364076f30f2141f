#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "photomech/errors.hpp"

namespace photomech {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double x, double y, double z) : v{x, y, z} {}

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec3& operator*=(double s) {
    for (int i = 0; i < 3; ++i) v[i] *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Row-major 3x3 matrix with value semantics.
struct Mat3 {
  std::array<double, 9> m{};

  Mat3() = default;

  double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static Mat3 identity() {
    Mat3 a;
    a(0, 0) = a(1, 1) = a(2, 2) = 1.0;
    return a;
  }
  static Mat3 zero() { return Mat3{}; }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat3& operator*=(double s) {
    for (int i = 0; i < 9; ++i) m[i] *= s;
    return *this;
  }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
inline Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
inline Mat3 operator*(double s, Mat3 a) { return a *= s; }
inline Mat3 operator*(Mat3 a, double s) { return a *= s; }
inline Mat3 operator-(const Mat3& a) { return -1.0 * a; }

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Matrix acting on a column vector: (A v)_i = A_ij v_j.
inline Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 y;
  for (int i = 0; i < 3; ++i)
    y[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return y;
}

// Row vector acting from the left: (v A)_j = v_i A_ij.
inline Vec3 operator*(const Vec3& x, const Mat3& a) {
  Vec3 y;
  for (int j = 0; j < 3; ++j)
    y[j] = x[0] * a(0, j) + x[1] * a(1, j) + x[2] * a(2, j);
  return y;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
  return t;
}

inline double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline double ddot(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += a.m[i] * b.m[i];
  return s;
}

inline double norm(const Mat3& a) { return std::sqrt(ddot(a, a)); }

inline Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = a[i] * b[j];
  return c;
}

inline double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Cofactor matrix, no regularity requirement: cof(A)_ij = d det(A) / d A_ij.
inline Mat3 cof_raw(const Mat3& a) {
  Mat3 c;
  c(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  c(0, 1) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  c(0, 2) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  c(1, 0) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  c(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  c(1, 2) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  c(2, 0) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  c(2, 1) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  c(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return c;
}

inline Mat3 inv(const Mat3& a) {
  const double d = det(a);
  const double scale = norm(a);
  if (std::abs(d) <= 1e-12 * scale * scale * scale)
    throw SingularMatrix("matrix inverse: |det| below 1e-12 * |A|^3");
  return (1.0 / d) * transpose(cof_raw(a));
}

// Fourth-order tensor T_ijkl, row-major over (i,j,k,l).
struct Tensor4 {
  std::array<double, 81> t{};

  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return t[27 * i + 9 * j + 3 * k + l];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return t[27 * i + 9 * j + 3 * k + l];
  }

  Tensor4& operator+=(const Tensor4& o) {
    for (int i = 0; i < 81; ++i) t[i] += o.t[i];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    for (int i = 0; i < 81; ++i) t[i] -= o.t[i];
    return *this;
  }
  Tensor4& operator*=(double s) {
    for (int i = 0; i < 81; ++i) t[i] *= s;
    return *this;
  }
};

inline Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
inline Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
inline Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

inline double norm(const Tensor4& a) {
  double s = 0.0;
  for (double x : a.t) s += x * x;
  return std::sqrt(s);
}

// Standard dyadic: [A (x) B]_ijkl = A_ij B_kl.
inline Tensor4 dyad(const Mat3& a, const Mat3& b) {
  Tensor4 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) t(i, j, k, l) = a(i, j) * b(k, l);
  return t;
}

// Overlaid dyadic: [A boxtimes B]_ijkl = A_ik B_jl.
inline Tensor4 boxtimes(const Mat3& a, const Mat3& b) {
  Tensor4 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) t(i, j, k, l) = a(i, k) * b(j, l);
  return t;
}

// Crossed dyadic: [A boxdot B]_ijkl = A_il B_jk.
inline Tensor4 boxdot(const Mat3& a, const Mat3& b) {
  Tensor4 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) t(i, j, k, l) = a(i, l) * b(j, k);
  return t;
}

// Double contraction on the trailing slots: (T : C)_ij = T_ijkl C_kl.
inline Mat3 contract(const Tensor4& t, const Mat3& c) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += t(i, j, k, l) * c(k, l);
      r(i, j) = s;
    }
  return r;
}

// Double contraction on the leading slots: (C : T)_kl = C_ij T_ijkl.
inline Mat3 contract_front(const Mat3& c, const Tensor4& t) {
  Mat3 r;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += c(i, j) * t(i, j, k, l);
      r(k, l) = s;
    }
  return r;
}

// Bilinear contraction on the second and fourth slots: R_ik = T_ijkl a_j b_l.
// This is the nodal-pair reduction used by element stiffness kernels.
inline Mat3 contract_24(const Tensor4& t, const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) s += t(i, j, k, l) * a[j] * b[l];
      r(i, k) = s;
    }
  return r;
}

}  // namespace photomech
