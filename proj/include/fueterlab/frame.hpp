#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "fueterlab/quat.hpp"

namespace fueterlab {

enum class Manifold { Torus3, Sphere3, ProductS1S2 };

std::string manifold_name(Manifold m);
Manifold manifold_from_name(const std::string& s);

/// Point on one of the three catalog manifolds.  Chart layout of x:
///   Torus3       (y1, y2, y3, 0),  y in [0,1)^3
///   Sphere3      (y0, y1, y2, y3), |y| = 1
///   ProductS1S2  (theta, y1, y2, y3), |y| = 1
struct ManifoldPoint {
  Manifold manifold;
  Eigen::Vector4d x;
};

/// Tangent vectors and covectors share the chart layout of the point; on the
/// spheres they are ambient vectors orthogonal to the radial direction, and
/// covectors pair by the Euclidean dot product.
using TangentVec = Eigen::Vector4d;
using CoVec = Eigen::Vector4d;

/// One of the catalog divergence-free frames.
///
/// Torus3: columns of U are the constant fields in the coordinate basis.
/// Sphere3: columns u_i of U generate the invariant fields v_i(y) = u_i y
/// (imaginary-quaternion left multiplication).  ProductS1S2 carries the one
/// fixed catalog frame v_i = y_i d/dtheta + (e_i x y) . grad and U must be
/// the identity.
class FrameSpec {
 public:
  FrameSpec(Manifold m, const Eigen::Matrix3d& U);

  Manifold manifold() const { return manifold_; }
  const Eigen::Matrix3d& U() const { return u_; }

  static FrameSpec from_json(const std::string& text);
  std::string to_json() const;

 private:
  Manifold manifold_;
  Eigen::Matrix3d u_;
};

ManifoldPoint make_point_t3(const Eigen::Vector3d& y);
ManifoldPoint make_point_s3(const Eigen::Vector4d& y);
ManifoldPoint make_point_s1s2(double theta, const Eigen::Vector3d& y);

void check_point(const FrameSpec& f, const ManifoldPoint& p);
ManifoldPoint random_point(Manifold m, std::mt19937_64& rng);

/// The three frame fields at p.
std::array<TangentVec, 3> frame_vectors(const FrameSpec& f, const ManifoldPoint& p);

/// Dual coframe alpha_i with alpha_i(v_j) = delta_ij.
std::array<CoVec, 3> dual_coframe(const FrameSpec& f, const ManifoldPoint& p);

/// lambda(p) = dvol(v1, v2, v3).
double volume_density(const FrameSpec& f, const ManifoldPoint& p);

/// True iff lambda is identically 1 on a sample grid (tolerance 1e-10).
bool is_normal(const FrameSpec& f);

/// Bracket fields w1 = [v2,v3], w2 = [v3,v1], w3 = [v1,v2] in the sign
/// convention L_[u,v] = -[L_u, L_v], i.e. [X,Y] = DX[Y] - DY[X].
std::array<TangentVec, 3> bracket_fields(const FrameSpec& f, const ManifoldPoint& p);

/// Finite-difference bracket oracle (central differences, second order).
/// Evaluates the fields through the retraction only, independently of the
/// analytic bracket formulas.  Throws if halving the step changes the answer
/// by more than half its size (step too large).
std::array<TangentVec, 3> bracket_oracle(const FrameSpec& f, const ManifoldPoint& p, double h);

/// Quadrature estimate of max_i |d iota(v_i) dvol| over a test grid, via
/// central differences of the contracted volume form in ambient coordinates.
double divergence_residual(const FrameSpec& f);

/// Frame metric <a,b> = sum_i alpha_i(a) alpha_i(b).
double metric_eval(const FrameSpec& f, const ManifoldPoint& p, const TangentVec& a,
                   const TangentVec& b);

/// Scalar shift of the frame spin structure's Dirac operator:
/// lambda = (1/4) sum_i alpha_i([v_j, v_k]).
double spinc_lambda(const FrameSpec& f, const ManifoldPoint& p);

// Catalog frames used throughout the tests.
FrameSpec standard_t3_frame();
FrameSpec standard_s3_frame();
FrameSpec singular_s3_frame();  // diag(2^{2/3}, -2^{-1/3}, -2^{-1/3})
FrameSpec catalog_s1s2_frame();

/// Random U in GL+(3) with singular values bounded away from zero.
Eigen::Matrix3d random_glplus(std::mt19937_64& rng);

}  // namespace fueterlab
