#include "fueterlab/quadrature.hpp"

#include <cmath>

#include "fueterlab/su2.hpp"

namespace fueterlab {

QuadratureRule t3_quadrature(int max_freq) {
  const int n = max_freq + 1;
  QuadratureRule r;
  r.manifold = Manifold::Torus3;
  r.degree = max_freq;
  r.nodes.reserve(n * n * n);
  const double w = 1.0 / (double(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        r.nodes.push_back(make_point_t3({double(a) / n, double(b) / n, double(c) / n}));
  r.weights = Eigen::VectorXd::Constant(static_cast<int>(r.nodes.size()), w);
  return r;
}

// Gauss-Legendre on [-1,1], textbook Newton iteration.
static void gl_nodes(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

QuadratureRule s3_quadrature(int deg) {
  // Hopf coordinates y = (cos(eta) e^{i xi1}, sin(eta) e^{i xi2}),
  // dvol = cos(eta) sin(eta) d(eta) d(xi1) d(xi2) = (1/4) dt d(xi1) d(xi2)
  // with t = cos(2 eta).
  const int nxi = deg + 2;
  const int nt = deg / 2 + 2;
  Eigen::VectorXd t, wt;
  gl_nodes(nt, t, wt);
  QuadratureRule r;
  r.manifold = Manifold::Sphere3;
  r.degree = deg;
  const double wxi = 2.0 * M_PI / nxi;
  r.weights.resize(nt * nxi * nxi);
  int idx = 0;
  for (int it = 0; it < nt; ++it) {
    const double c = std::sqrt(0.5 * (1.0 + t[it]));
    const double s = std::sqrt(0.5 * (1.0 - t[it]));
    for (int a = 0; a < nxi; ++a) {
      const double x1 = 2.0 * M_PI * a / nxi;
      for (int b = 0; b < nxi; ++b) {
        const double x2 = 2.0 * M_PI * b / nxi;
        r.nodes.push_back(make_point_s3(
            {c * std::cos(x1), c * std::sin(x1), s * std::cos(x2), s * std::sin(x2)}));
        r.weights[idx++] = 0.25 * wt[it] * wxi * wxi;
      }
    }
  }
  return r;
}

QuadratureRule s1s2_quadrature(int deg_theta, int deg_sphere) {
  const int ntheta = deg_theta + 2;
  std::vector<Eigen::Vector3d> snodes;
  std::vector<double> sweights;
  sph_quadrature(deg_sphere, snodes, sweights);
  QuadratureRule r;
  r.manifold = Manifold::ProductS1S2;
  r.degree = std::min(deg_theta, deg_sphere);
  const double wth = 2.0 * M_PI / ntheta;
  const int ns = static_cast<int>(snodes.size());
  r.weights.resize(ntheta * ns);
  int idx = 0;
  for (int a = 0; a < ntheta; ++a) {
    const double theta = 2.0 * M_PI * a / ntheta;
    for (int q = 0; q < ns; ++q) {
      r.nodes.push_back(make_point_s1s2(theta, snodes[q]));
      r.weights[idx++] = wth * sweights[q];
    }
  }
  return r;
}

QuadratureRule default_quadrature(Manifold m, int deg) {
  switch (m) {
    case Manifold::Torus3: return t3_quadrature(deg);
    case Manifold::Sphere3: return s3_quadrature(deg);
    default: return s1s2_quadrature(deg, deg);
  }
}

}  // namespace fueterlab
