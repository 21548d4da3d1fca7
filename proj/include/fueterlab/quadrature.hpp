#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fueterlab/frame.hpp"

namespace fueterlab {

/// Quadrature nodes and positive weights summing to the manifold volume
/// (1, 2 pi^2 and 8 pi^2 for the three catalog manifolds).  Each rule is
/// exact for the basis-function products up to its declared degree.
struct QuadratureRule {
  Manifold manifold;
  std::vector<ManifoldPoint> nodes;
  Eigen::VectorXd weights;
  int degree = 0;

  double volume() const { return weights.sum(); }
};

/// Tensor trapezoid rule, exact for trigonometric polynomials with per-axis
/// frequency up to max_freq.
QuadratureRule t3_quadrature(int max_freq);

/// Hopf-coordinate product rule (Gauss-Legendre radial factor, uniform
/// angles), exact for polynomials on R^4 of degree up to deg restricted
/// to the unit sphere.
QuadratureRule s3_quadrature(int deg);

/// Uniform circle x (Gauss-Legendre x uniform azimuth) product rule; exact
/// for trig degree deg_theta on the circle times polynomial degree deg_sphere
/// on the 2-sphere.
QuadratureRule s1s2_quadrature(int deg_theta, int deg_sphere);

/// Convenience dispatcher with a single degree parameter.
QuadratureRule default_quadrature(Manifold m, int deg);

}  // namespace fueterlab
