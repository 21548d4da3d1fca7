#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <stdexcept>

#include <Eigen/Dense>

namespace fueterlab {

/// Quaternion x = x0 + i x1 + j x2 + k x3 with componentwise storage.
///
/// Carries the two commuting triples of complex structures used throughout:
/// J_i (left multiplication by the imaginary units) and I_i (negated right
/// multiplication), together with the symplectic pairings omega_i.
struct Quat {
  double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

  Quat() = default;
  Quat(double a, double b, double c, double d) : x0(a), x1(b), x2(c), x3(d) {}

  static Quat one() { return {1, 0, 0, 0}; }
  static Quat unit(int axis);  // axis 1,2,3 -> i,j,k

  double operator[](int c) const {
    switch (c) {
      case 0: return x0;
      case 1: return x1;
      case 2: return x2;
      default: return x3;
    }
  }
  double& operator[](int c) {
    switch (c) {
      case 0: return x0;
      case 1: return x1;
      case 2: return x2;
      default: return x3;
    }
  }

  Quat operator+(const Quat& o) const { return {x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  Quat operator-(const Quat& o) const { return {x0 - o.x0, x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  Quat operator-() const { return {-x0, -x1, -x2, -x3}; }
  Quat operator*(double s) const { return {s * x0, s * x1, s * x2, s * x3}; }

  Quat conj() const { return {x0, -x1, -x2, -x3}; }
  double norm2() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
  double norm() const { return std::sqrt(norm2()); }

  Eigen::Vector4d vec() const { return {x0, x1, x2, x3}; }
  static Quat from_vec(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

inline Quat operator*(double s, const Quat& q) { return q * s; }

/// Hamilton product.
inline Quat qmul(const Quat& a, const Quat& b) {
  return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
}

inline double qdot(const Quat& a, const Quat& b) {
  return a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

void check_axis(int i);

/// J_i x = e_i x (left multiplication by i, j, k for axis = 1, 2, 3).
inline Quat apply_J(int axis, const Quat& x) {
  check_axis(axis);
  return qmul(Quat::unit(axis), x);
}

/// I_i x = -x e_i (negated right multiplication; commutes with every J).
inline Quat apply_I(int axis, const Quat& x) {
  check_axis(axis);
  return -qmul(x, Quat::unit(axis));
}

/// omega_i(u, v) = <J_i u, v>.  Coincides with the 2-form
/// dx0^dxi + dxj^dxk on R^4 (cyclic i,j,k); see omega_form_eval.
inline double omega(int axis, const Quat& u, const Quat& v) {
  return qdot(apply_J(axis, u), v);
}

/// omega_i evaluated from its components dx0^dxi + dxj^dxk.  Kept as an
/// independent route so the sign conventions of the two formulas stay pinned
/// to each other.
double omega_form_eval(int axis, const Quat& u, const Quat& v);

/// 4x4 matrix of left multiplication by q acting on component vectors.
Eigen::Matrix4d left_mult_matrix(const Quat& q);

/// 4x4 matrix of J_i.
Eigen::Matrix4d J_matrix(int axis);

/// 4x4 matrix of I_i.
Eigen::Matrix4d I_matrix(int axis);

std::ostream& operator<<(std::ostream& os, const Quat& q);

}  // namespace fueterlab
