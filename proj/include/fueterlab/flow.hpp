#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fueterlab/spectral.hpp"

namespace fueterlab {

struct DegenerateCrossing : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MatchingAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A differentiable path of real symmetric matrices on [s0, s1].
struct OperatorPath {
  double s0 = 0.0, s1 = 1.0;
  std::function<Eigen::MatrixXd(double)> matrix_at;
  std::function<Eigen::MatrixXd(double)> derivative_at;
  std::string label;

  /// Wraps a matrix family with a central-difference derivative
  /// (h = 1e-5, step-halving consistency check).
  static OperatorPath with_fd_derivative(double s0, double s1,
                                         std::function<Eigen::MatrixXd(double)> m,
                                         std::string label);
};

/// Path of catalog frames s -> FrameSpec(manifold, U(s)) with det U(s) > 0.
struct FramePath {
  Manifold manifold = Manifold::Sphere3;
  double s0 = 0.0, s1 = 1.0;
  std::function<Eigen::Matrix3d(double)> U_at;
  std::function<Eigen::Matrix3d(double)> dU_at;  // empty -> finite differences

  FrameSpec frame_at(double s) const { return FrameSpec(manifold, U_at(s)); }
  FramePath reversed() const;
  FramePath restricted(double a, double b) const;

  /// Block family along the path; analytic derivative when dU_at is set.
  OperatorPath block_path(const BlockLabel& label) const;

  static FramePath linear(Manifold m, const Eigen::Matrix3d& U0, const Eigen::Matrix3d& U1,
                          double s0, double s1);
  /// diag(2^{2s/3}, 2^{-s/3}, 2^{-s/3}) R_1(pi s): the unit-volume sphere
  /// path that passes through the singular catalog frame at s = 1.
  static FramePath s3_singular_sweep(double s0, double s1);
};

/// Eigenvalue curves matched across samples by maximal eigenvector overlap.
struct EigenCurves {
  Eigen::VectorXd s;
  Eigen::MatrixXd curves;  // row = curve, column = sample
  double max_jump = 0.0;   // continuity residual after matching
};

EigenCurves eigencurves(const OperatorPath& path, int nsamples);

struct CrossingReport {
  double s_star = 0.0;
  std::string block;
  Eigen::MatrixXd kernel_basis;  // orthonormal columns
  Eigen::MatrixXd gamma;         // K^T D'(s*) K
  Eigen::VectorXd gamma_eigs;
  Eigen::VectorXd slopes;        // finite-difference eigenvalue slopes
  int signature = 0;
};

/// Crossing form at a user-supplied location.  Throws if the kernel is
/// numerically empty or the form is degenerate.
CrossingReport crossing_form(const OperatorPath& path, double s_star, double kernel_tol = 1e-6);

/// Max relative discrepancy between the crossing slopes and the eigenvalues
/// of the crossing form.
double slope_vs_gamma(const CrossingReport& report);

struct FlowResult {
  int flow = 0;         // sum of crossing-form signatures
  int curve_count = 0;  // signed zero-crossing count of the eigenvalue curves
  std::vector<CrossingReport> crossings;
};

/// Spectral flow of one block family; crossings located by bisection on the
/// negative-eigenvalue count, tolerance 1e-10 in s.
FlowResult spectral_flow(const OperatorPath& path, int grid = 64);

/// Sum over blocks of a frame path (mean-zero by default: constant blocks
/// excluded unless include_constants).
FlowResult spectral_flow(const FramePath& path, const std::vector<BlockLabel>& labels,
                         int grid = 64, bool include_constants = false);

/// Smallest certified bound for blocks outside the label sweep along the
/// path (min over samples).
double path_neglected_bound(const FramePath& path, const SweepCutoffs& cut, int nsamples = 33);

}  // namespace fueterlab
