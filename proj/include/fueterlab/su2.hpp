#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fueterlab/quat.hpp"

namespace fueterlab {

// ---------------------------------------------------------------------------
// SU(2) irreducibles.  Spins are passed around as twoj = 2j to keep
// half-integers exact.  Basis |j,m>, m ascending from -j to j.
// ---------------------------------------------------------------------------

int su2_dim(int twoj);  // 2j+1

/// Angular momentum matrices J_z, J_x, J_y (hermitian, Condon-Shortley).
Eigen::MatrixXcd su2_jz(int twoj);
Eigen::MatrixXcd su2_jx(int twoj);
Eigen::MatrixXcd su2_jy(int twoj);

/// Derived representation of an imaginary quaternion u = u1 i + u2 j + u3 k:
///   dpi(u) = 2i (u1 Jz + u2 Jy + u3 Jx),
/// an anti-hermitian (2j+1)x(2j+1) matrix with dpi([u,v]) = [dpi(u), dpi(v)]
/// for the quaternion commutator bracket.  At twoj = 1 this is left
/// multiplication by u on H identified with C^2.
Eigen::MatrixXcd su2_dpi(int twoj, const Eigen::Vector3d& u);

/// Representation matrix pi_j(y) of a unit quaternion y, evaluated as
/// exp(dpi(log y)).  Matrix entries, as functions of y, are the harmonic
/// polynomials of degree 2j on the 3-sphere.
Eigen::MatrixXcd su2_wigner(int twoj, const Quat& y);

/// Realification [[Re A, -Im A], [Im A, Re A]] acting on stacked
/// (Re, Im) coordinates.
Eigen::MatrixXd realify(const Eigen::MatrixXcd& a);

/// Isometry T from the reduced real coordinates of the self-conjugate
/// column n = 0 (integer j only) into complex coefficient space.  Columns are
/// orthonormal; the reduced derivative matrix is T^H dpi(u)^T T and is real.
Eigen::MatrixXcd su2_column0_isometry(int twoj);

/// Reduced (2j+1)x(2j+1) real coefficient matrix of d/dt along u on the
/// column-0 real span.  Throws if twoj is odd.
Eigen::MatrixXd su2_column0_action(int twoj, const Eigen::Vector3d& u);

// ---------------------------------------------------------------------------
// Real spherical harmonics on S^2.  Index layout per degree l:
// [m=0, (c,1), (s,1), ..., (c,l), (s,l)], degrees stacked so that the block
// of degree l starts at offset l*l; (L+1)^2 functions up to degree L.
// Orthonormal for the *unnormalized* round measure (total area 4 pi).
// ---------------------------------------------------------------------------

int sph_index(int l, int kind, int m);  // kind: 0 m=0, 1 cos, 2 sin
int sph_count(int lmax);

/// Evaluate all real spherical harmonics up to degree lmax at unit y.
Eigen::VectorXd sph_eval(int lmax, const Eigen::Vector3d& y);

/// Galerkin matrices <Y_A, R_a Y_B> of the rotation generators
/// R_a = (e_a x y) . grad, a = 1,2,3.  Block diagonal per degree, skew.
std::array<Eigen::MatrixXd, 3> sph_rotation_generators(int lmax);

/// Galerkin matrices <Y_A, y_a Y_B> of coordinate multiplication, computed by
/// Gauss-Legendre x uniform-azimuth quadrature exact for the integrands.
std::array<Eigen::MatrixXd, 3> sph_coordinate_mult(int lmax);

/// S^2 quadrature nodes/weights (weights sum to 4 pi), exact for polynomials
/// of degree <= deg.
void sph_quadrature(int deg, std::vector<Eigen::Vector3d>& nodes, std::vector<double>& weights);

}  // namespace fueterlab
