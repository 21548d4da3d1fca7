#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fueterlab/frame.hpp"
#include "fueterlab/quadrature.hpp"

namespace fueterlab {

/// Orthonormal real scalar basis on a catalog manifold.
///
/// Torus3: 1, sqrt(2) cos(2 pi k.y), sqrt(2) sin(2 pi k.y) over canonical
/// modes (first nonzero entry positive), |k|_inf <= kmax.
///
/// Sphere3: real and imaginary parts of the matrix-coefficient columns of the
/// spin-j representations, j <= jmax, one column per conjugate pair plus the
/// reduced self-conjugate column for integer j.  Frame derivatives act
/// blockwise per column.
///
/// ProductS1S2: trig(theta) x real spherical harmonics, |m| <= mmax,
/// l <= lmax.
class Basis {
 public:
  static Basis torus(int kmax);
  static Basis sphere(int twoj_max);
  static Basis product(int lmax, int mmax);

  Manifold manifold() const { return manifold_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  /// Values of every basis function at p.
  Eigen::VectorXd eval(const ManifoldPoint& p) const;

  /// Coefficient transform of the frame derivative along v_i (i = 0,1,2).
  /// Galerkin-exact on Torus3/Sphere3; on ProductS1S2 exact unless the input
  /// has support at the degree cut l = lmax.
  Eigen::MatrixXd apply_deriv(const FrameSpec& f, int i, const Eigen::MatrixXd& coeff) const;

  /// True when coefficients touch the S1xS2 degree cut, so apply_deriv would
  /// silently project.
  bool deriv_truncates(const Eigen::MatrixXd& coeff, double tol = 1e-14) const;

  // truncation parameters (unused entries are -1)
  int kmax() const { return kmax_; }
  int twoj_max() const { return twoj_max_; }
  int lmax() const { return lmax_; }
  int mmax() const { return mmax_; }

  /// Index of the constant function.
  int constant_index() const { return 0; }

 private:
  Basis() = default;

  Manifold manifold_ = Manifold::Torus3;
  int kmax_ = -1, twoj_max_ = -1, lmax_ = -1, mmax_ = -1;
  std::vector<std::string> names_;

  // Torus3
  std::vector<Eigen::Vector3i> modes_;

  // Sphere3 column blocks
  struct S3Block {
    int twoj;
    int col;     // wigner column index, or -1 for the reduced column 0
    int offset;  // first basis index
    int size;
  };
  std::vector<S3Block> s3_blocks_;

  // ProductS1S2 cached operator pieces
  std::shared_ptr<const std::array<Eigen::MatrixXd, 3>> rot_, ymult_;

  friend class SpectralAssembler;
};

/// Band-limited map M -> H^n stored as one quaternion tuple per basis
/// function: coeff is (basis.size() x 4n).
struct FieldExpansion {
  Basis basis;
  Eigen::MatrixXd coeff;

  int ncomp() const { return static_cast<int>(coeff.cols()); }

  Eigen::VectorXd eval(const ManifoldPoint& p) const { return coeff.transpose() * basis.eval(p); }

  /// Frame-directional derivative d/d v_i as a new expansion.
  FieldExpansion deriv(const FrameSpec& f, int i) const {
    return {basis, basis.apply_deriv(f, i, coeff)};
  }

  /// L2 inner product; exact because the basis is orthonormal.
  double inner(const FieldExpansion& other) const {
    return (coeff.array() * other.coeff.array()).sum();
  }
  double norm2() const { return inner(*this); }

  /// Expand a pointwise function by discrete projection with the given rule
  /// (exact when the rule's degree covers basis x function products).
  static FieldExpansion project(const Basis& basis, int ncomp,
                                const std::function<Eigen::VectorXd(const ManifoldPoint&)>& fn,
                                const QuadratureRule& rule);

  /// Gaussian random coefficients; optionally zero mean (constant removed).
  static FieldExpansion random(const Basis& basis, int ncomp, std::mt19937_64& rng,
                               bool mean_zero);
};

}  // namespace fueterlab
