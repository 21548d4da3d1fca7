#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fueterlab/frame.hpp"

namespace fueterlab {

struct DegenerateCriticalPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite trigonometric Hamiltonian H: T^3 x R^{4n} -> R, periodic in the
/// target with period lattice Z^{4n}:
///   H(y, x) = sum_t coef_t trig(2 pi ky.y) trig(2 pi kx.x).
struct HamiltonianTerm {
  double coef = 0;
  Eigen::Vector3i ky = Eigen::Vector3i::Zero();
  bool ky_sin = false;
  Eigen::VectorXi kx;
  bool kx_sin = false;
};

struct HamiltonianSpec {
  int ncomp = 4;  // 4n
  std::vector<HamiltonianTerm> terms;

  double eval(const Eigen::Vector3d& y, const Eigen::VectorXd& x) const;
  Eigen::VectorXd grad(const Eigen::Vector3d& y, const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hess(const Eigen::Vector3d& y, const Eigen::VectorXd& x) const;

  static HamiltonianSpec separable_cosine(int n, double eps);
  static HamiltonianSpec from_json(const std::string& text);
  std::string to_json() const;
};

struct NewtonOptions {
  int max_iter = 60;
  double tol = 1e-11;
};

struct CriticalSolve {
  Eigen::VectorXd field;  // grid values, ((ix*N + iy)*N + iz)*ncomp + comp
  double residual = 0;    // max-norm of the collocation residual
  double sigma_min = 0;   // smallest singular value of the linearization
  bool converged = false;
};

/// Fourier collocation of the perturbed equation on the torus: the linear
/// part acts through its exact symbol on the N^3 grid interpolant, the
/// nonlinearity pointwise at the nodes.
class TorusCollocation {
 public:
  TorusCollocation(const FrameSpec& f, int n_grid, int ncomp);

  int grid() const { return n_; }
  int ncomp() const { return ncomp_; }
  int dim() const { return static_cast<int>(op_.rows()); }
  const FrameSpec& frame() const { return frame_; }
  Eigen::Vector3d node(int flat_point) const;
  const Eigen::MatrixXd& op() const { return op_; }  // J_i-twisted derivative

  Eigen::VectorXd residual(const HamiltonianSpec& h, const Eigen::VectorXd& z) const;
  Eigen::MatrixXd jacobian(const HamiltonianSpec& h, const Eigen::VectorXd& z) const;
  CriticalSolve solve_critical(const HamiltonianSpec& h, Eigen::VectorXd seed,
                               const NewtonOptions& opt = {}) const;

  /// Perturbed action (1/2)<z, Dz> - int H(y, z).
  double action(const HamiltonianSpec& h, const Eigen::VectorXd& z) const;

 private:
  FrameSpec frame_;
  int n_, ncomp_;
  Eigen::MatrixXd op_;
};

struct ArnoldOptions {
  int grid = 4;
  int random_starts = 20;
  std::uint64_t seed = 1;
  double dedup_tol = 1e-6;
  double residual_tol = 1e-10;
  double degenerate_tol = 1e-6;
};

struct ArnoldReport {
  int count = 0;
  bool degenerate_found = false;
  int rejected_unresolved = 0;  // sawtooth ghosts of the even grid
  std::vector<CriticalSolve> solutions;
};

/// Multistart count of distinct contractible solutions, deduplicated modulo
/// the target lattice.  Degenerate solutions are excluded and flagged.
ArnoldReport arnold_count(const FrameSpec& f, const HamiltonianSpec& h, const ArnoldOptions& opt);

struct TrajectoryOptions {
  double s_half_width = 6.0;  // trajectory lives on [-S, S]
  int n_slices = 81;
  int max_iter = 50;
  double tol = 1e-8;
  double endpoint_tol = 1e-8;
  // optional warm start (n_slices x dim), e.g. a coarser solution resampled
  Eigen::MatrixXd initial;
};

struct TrajectoryResult {
  Eigen::VectorXd s;       // slice locations
  Eigen::MatrixXd slices;  // n_slices x dim grid fields
  Eigen::VectorXd actions; // perturbed action per slice
  double residual = 0;     // interior equation max-norm
  double energy = 0;       // int int |d_s u|^2
  bool converged = false;
};

/// Space-time boundary value solver for the gradient-flow equation with
/// clamped endpoint fields (Newton on the full block-tridiagonal system).
TrajectoryResult floer_trajectory(const TorusCollocation& disc, const HamiltonianSpec& h,
                                  const Eigen::VectorXd& f_minus, const Eigen::VectorXd& f_plus,
                                  const TrajectoryOptions& opt = {});

/// |E(u) - (A_H(f-) - A_H(f+))| / max(1, E).
double floer_energy_residual(const TorusCollocation& disc, const HamiltonianSpec& h,
                             const TrajectoryResult& traj, const Eigen::VectorXd& f_minus,
                             const Eigen::VectorXd& f_plus);

}  // namespace fueterlab
