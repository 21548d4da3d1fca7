#pragma once

#include <optional>
#include <utility>

#include "fueterlab/field.hpp"
#include "fueterlab/spectral.hpp"

namespace fueterlab {

/// Pieces of the energy display: (1/2) int |dg|^2 equals
/// (1/2) int |Dg|^2 minus the coframe pullback term.
struct EnergyBreakdown {
  double dirichlet = 0;  // (1/2) int sum_i |d_{v_i} g|^2
  double fueter = 0;     // (1/2) int |D g|^2
  double pullback = 0;   // sum_i int alpha_i ^ g* omega_i

  double residual() const { return std::abs(dirichlet - (fueter - pullback)); }
};

EnergyBreakdown energy_identity(const FrameSpec& f, const FieldExpansion& g);
double energy_identity_residual(const FrameSpec& f, const FieldExpansion& g);

/// Action of a contractible band-limited field, through both displays:
/// inner_form = (1/2) <g, Dg>; beta_form = -sum_i int beta_i ^ g* omega_i for
/// the catalog primitives beta_i (absent on the torus, whose contracted
/// volume forms are not exact).
struct ActionValue {
  double inner_form = 0;
  std::optional<double> beta_form;
};

ActionValue action_value(const FrameSpec& f, const FieldExpansion& g);

/// Fourier loop S^1 -> H: rows const, cos(m t), sin(m t), quaternion columns.
struct FourierLoop {
  Eigen::MatrixXd coeff;

  int degree() const { return (static_cast<int>(coeff.rows()) - 1) / 2; }
  Quat eval(double theta) const;
  Quat deriv(double theta) const;

  static FourierLoop random(int deg, std::mt19937_64& rng);
  /// theta -> exp(-theta u_y) q0, the loop achieving equality at y.
  static FourierLoop extremal(const Eigen::Vector3d& y, const Quat& q0);
};

/// (lhs, rhs) of the loop inequality
/// (1/2) int omega_y(df, f) dtheta <= (1/2) int |df|^2 dtheta.
std::pair<double, double> isoperimetric_check(const Eigen::Vector3d& y, const FourierLoop& f);

/// Residual of the product-manifold energy display, with the loop-action term
/// evaluated through its double-integral form.
double s1s2_identity_residual(const FieldExpansion& g);

/// Empirical and sharp constants for int |dg|^2 <= c int |Dg|^2 over
/// mean-zero band-limited fields of a regular frame.
struct RegularEstimate {
  double sampled = 0;  // max Rayleigh quotient over random fields
  double sharp = 0;    // max generalized eigenvalue over swept blocks
};

RegularEstimate regular_estimate_constant(const FrameSpec& f, int sample_size,
                                          const SweepCutoffs& cut, std::uint64_t seed);

}  // namespace fueterlab
