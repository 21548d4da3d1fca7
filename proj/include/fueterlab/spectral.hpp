#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fueterlab/field.hpp"
#include "fueterlab/frame.hpp"

namespace fueterlab {

/// Failure modes that the command-line driver maps onto its exit codes.
struct UncertifiedTruncation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SpectralGapAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Identifies one invariant block of the operator.
struct BlockLabel {
  Manifold manifold;
  Eigen::Vector3i k = Eigen::Vector3i::Zero();  // Torus3 mode
  int twoj = 0;                                 // Sphere3 spin (2j)
  int lmax = 0, mmax = 0;                       // ProductS1S2 truncation

  std::string str() const;
};

/// One finite-dimensional invariant block: real symmetric matrix over the
/// named basis functions.  A block eigenvalue occurs in the full operator
/// with multiplicity (mult_num / mult_den) times its block multiplicity.
struct SpectralBlock {
  BlockLabel label;
  Eigen::MatrixXd matrix;
  std::vector<std::string> basis;
  long mult_num = 1;
  long mult_den = 1;
};

/// Cutoffs for block sweeps.
struct SweepCutoffs {
  int kmax = 8;      // Torus3: |k|_inf <= kmax
  int twoj_max = 12; // Sphere3: j <= 6
  int lmax = 8;      // ProductS1S2 truncation
  int mmax = 2;
};

/// 8x8 block of the operator on span{cos(2 pi k.y), sin(2 pi k.y)} x H
/// (zero 4x4 constant block for k = 0).  Spectrum is +-2 pi |U^T k|, each
/// with multiplicity four.
SpectralBlock t3_block(const Eigen::Matrix3d& U, const Eigen::Vector3i& k);

/// Block of side 8(2j+1) on H tensor the realified spin-j space (one
/// conjugate-pair multiplicity copy); the reduced zero 4x4 block for j = 0.
SpectralBlock s3_block(const Eigen::Matrix3d& U, int twoj);

/// Reduced self-conjugate column block of side 4(2j+1), integer j; the full
/// block of s3_block carries each of its eigenvalues twice.
SpectralBlock s3_block_reduced(const Eigen::Matrix3d& U, int twoj);

/// Galerkin matrix on trig(theta) x spherical harmonics x H for the fixed
/// product-frame; sparse-structured symmetric, side 4 (2 mmax + 1)(lmax+1)^2.
SpectralBlock s1s2_operator(int lmax, int mmax);

/// All blocks swept for a frame at the given cutoffs.
std::vector<BlockLabel> block_labels(const FrameSpec& f, const SweepCutoffs& cut);
SpectralBlock assemble_block(const FrameSpec& f, const BlockLabel& label);

/// Certified lower bound on |eigenvalues| of every neglected block
/// (Torus3/Sphere3).  Returns 0 when no rigorous bound holds.
double neglected_block_bound(const FrameSpec& f, const SweepCutoffs& cut);

/// Truncation-aware tolerance used for ProductS1S2 kernel counting.
double s1s2_kernel_tol(int lmax);

struct KernelReport {
  int dim = 0;            // eigenvalues below tol, full multiplicities
  double tol = 0.0;       // tolerance actually used
  double cluster_max = 0; // largest |eigenvalue| accepted
  double next_min = 0;    // smallest |eigenvalue| rejected
  double neglected_bound = 0;
};

/// Kernel dimension of the assembled operator.  Throws UncertifiedTruncation
/// if the neglected blocks cannot be certified above tol, and
/// SpectralGapAmbiguity if tol does not sit inside a factor-100 spectral gap.
KernelReport kernel_dimension(const FrameSpec& f, const SweepCutoffs& cut, double tol = 1e-8);

enum class Classification { Regular, Singular };
Classification classify(const FrameSpec& f, const SweepCutoffs& cut = {});

/// Max-norm residual of D^2 + L + W on the block, the three operators
/// assembled independently (D the block, L the frame Laplacian, W the
/// bracket-field operator).  On ProductS1S2 the residual is evaluated on
/// columns with degree headroom, where the truncated products are exact.
double verify_dd2(const FrameSpec& f, const BlockLabel& label);

/// Coefficients of the operator applied to a band-limited field.
FieldExpansion apply_fueter(const FrameSpec& f, const FieldExpansion& g);

/// Eigenvalues of the block shifted by the frame's constant spin-c scalar.
Eigen::VectorXd dirac_spectrum_shift(const FrameSpec& f, const BlockLabel& label);

/// Ascending eigenvalues / eigenvectors of a symmetric block.
Eigen::VectorXd block_eigenvalues(const SpectralBlock& b);

/// Galerkin matrices of the three scalar frame derivatives on the block's
/// function basis (the block equals sum_i kron(T_i, J_i)).
std::array<Eigen::MatrixXd, 3> block_scalar_derivs(const FrameSpec& f, const BlockLabel& label);

/// Raw block assembly from an arbitrary frame matrix.  The assembly is linear
/// in U on Torus3/Sphere3, which makes this the analytic path derivative when
/// called with dU/ds.  No positivity check.
Eigen::MatrixXd block_matrix_from_U(Manifold m, const Eigen::Matrix3d& U, const BlockLabel& label);

}  // namespace fueterlab
