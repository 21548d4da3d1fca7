#include "fueterlab/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace fueterlab {

using cplx = std::complex<double>;
static constexpr cplx kI{0.0, 1.0};

int su2_dim(int twoj) {
  if (twoj < 0) throw std::invalid_argument("negative spin");
  return twoj + 1;
}

Eigen::MatrixXcd su2_jz(int twoj) {
  const int n = su2_dim(twoj);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < n; ++p) m(p, p) = 0.5 * (2 * p - twoj);
  return m;
}

// J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>, m = (2p - twoj)/2.
static Eigen::MatrixXcd su2_jplus(int twoj) {
  const int n = su2_dim(twoj);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const double j = 0.5 * twoj;
  for (int p = 0; p + 1 < n; ++p) {
    const double mm = 0.5 * (2 * p - twoj);
    m(p + 1, p) = std::sqrt(j * (j + 1) - mm * (mm + 1));
  }
  return m;
}

Eigen::MatrixXcd su2_jx(int twoj) {
  const Eigen::MatrixXcd jp = su2_jplus(twoj);
  return 0.5 * (jp + jp.adjoint());
}

Eigen::MatrixXcd su2_jy(int twoj) {
  const Eigen::MatrixXcd jp = su2_jplus(twoj);
  return -0.5 * kI * (jp - jp.adjoint());
}

Eigen::MatrixXcd su2_dpi(int twoj, const Eigen::Vector3d& u) {
  return 2.0 * kI * (u[0] * su2_jz(twoj) + u[1] * su2_jy(twoj) + u[2] * su2_jx(twoj));
}

Eigen::MatrixXcd su2_wigner(int twoj, const Quat& y) {
  const int n = su2_dim(twoj);
  const Eigen::Vector3d im{y.x1, y.x2, y.x3};
  const double s = im.norm();
  const double theta = std::atan2(s, y.x0);
  Eigen::Vector3d axis = s > 1e-300 ? Eigen::Vector3d(im / s) : Eigen::Vector3d(1, 0, 0);
  // H = axis . (Jz, Jy, Jx) has simple spectrum; pi(y) = V exp(2 i theta m) V^H.
  const Eigen::MatrixXcd h = axis[0] * su2_jz(twoj) + axis[1] * su2_jy(twoj) + axis[2] * su2_jx(twoj);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phase(n);
  for (int p = 0; p < n; ++p) phase[p] = std::exp(2.0 * kI * theta * es.eigenvalues()[p]);
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = a.real();
  r.topRightCorner(n, n) = -a.imag();
  r.bottomLeftCorner(n, n) = a.imag();
  r.bottomRightCorner(n, n) = a.real();
  return r;
}

Eigen::MatrixXcd su2_column0_isometry(int twoj) {
  if (twoj % 2 != 0) throw std::invalid_argument("column-0 reduction needs integer spin");
  const int n = su2_dim(twoj);
  const int j = twoj / 2;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  int col = 0;
  t(j, col++) = 1.0;  // m = 0 entry is real
  for (int m = 1; m <= j; ++m) {
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    // sqrt(2) Re phi_m and sqrt(2) Im phi_m, using conj(phi_m) = (-1)^m phi_{-m}
    t(j + m, col) = inv_sqrt2;
    t(j - m, col) = sgn * inv_sqrt2;
    ++col;
    t(j + m, col) = -kI * inv_sqrt2;
    t(j - m, col) = sgn * kI * inv_sqrt2;
    ++col;
  }
  return t;
}

Eigen::MatrixXd su2_column0_action(int twoj, const Eigen::Vector3d& u) {
  const Eigen::MatrixXcd t = su2_column0_isometry(twoj);
  const Eigen::MatrixXcd b = t.adjoint() * su2_dpi(twoj, u).transpose() * t;
  if (b.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw std::logic_error("column-0 action is not real; conjugation symmetry broken");
  return b.real();
}

// ---------------------------------------------------------------------------
// Real spherical harmonics.
// ---------------------------------------------------------------------------

int sph_index(int l, int kind, int m) {
  if (kind == 0) return l * l;
  return l * l + 2 * (m - 1) + kind;  // kind 1 = cos, 2 = sin
}

int sph_count(int lmax) { return (lmax + 1) * (lmax + 1); }

// Fully normalized associated Legendre P&#772;_l^m(x) for all l <= lmax, m <= l,
// with int_{S^2} (P&#772;_l^m cos(m phi) sqrt(2))^2 = 1.
static void legendre_table(int lmax, double x, Eigen::MatrixXd& p) {
  p.setZero(lmax + 1, lmax + 1);
  const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
  p(0, 0) = std::sqrt(1.0 / (4.0 * M_PI));
  for (int m = 1; m <= lmax; ++m)
    p(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sx * p(m - 1, m - 1);
  for (int m = 0; m < lmax; ++m) p(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * p(m, m);
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      p(l, m) = a * (x * p(l - 1, m) - b * p(l - 2, m));
    }
  }
}

Eigen::VectorXd sph_eval(int lmax, const Eigen::Vector3d& y) {
  const double r = y.norm();
  const double ct = y[2] / r;
  const double phi = std::atan2(y[1], y[0]);
  Eigen::MatrixXd p;
  legendre_table(lmax, ct, p);
  Eigen::VectorXd out(sph_count(lmax));
  const double sqrt2 = std::sqrt(2.0);
  for (int l = 0; l <= lmax; ++l) {
    out[sph_index(l, 0, 0)] = p(l, 0);
    for (int m = 1; m <= l; ++m) {
      out[sph_index(l, 1, m)] = sqrt2 * p(l, m) * std::cos(m * phi);
      out[sph_index(l, 2, m)] = sqrt2 * p(l, m) * std::sin(m * phi);
    }
  }
  return out;
}

// Gauss-Legendre on [-1,1] by Newton iteration on P_n.
static void gauss_legendre_nodes(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
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

void sph_quadrature(int deg, std::vector<Eigen::Vector3d>& nodes, std::vector<double>& weights) {
  const int ngl = deg / 2 + 1;
  const int nphi = deg + 2;
  Eigen::VectorXd x, w;
  gauss_legendre_nodes(ngl, x, w);
  nodes.clear();
  weights.clear();
  for (int i = 0; i < ngl; ++i) {
    const double ct = x[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int q = 0; q < nphi; ++q) {
      const double phi = 2.0 * M_PI * q / nphi;
      nodes.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
      weights.push_back(w[i] * 2.0 * M_PI / nphi);
    }
  }
}

std::array<Eigen::MatrixXd, 3> sph_coordinate_mult(int lmax) {
  const int n = sph_count(lmax);
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  sph_quadrature(2 * lmax + 2, nodes, weights);
  Eigen::MatrixXd vals(n, static_cast<int>(nodes.size()));
  for (int q = 0; q < static_cast<int>(nodes.size()); ++q) vals.col(q) = sph_eval(lmax, nodes[q]);
  std::array<Eigen::MatrixXd, 3> out;
  for (int a = 0; a < 3; ++a) {
    Eigen::VectorXd yw(static_cast<int>(nodes.size()));
    for (int q = 0; q < static_cast<int>(nodes.size()); ++q) yw[q] = nodes[q][a] * weights[q];
    out[a] = vals * yw.asDiagonal() * vals.transpose();
  }
  return out;
}

std::array<Eigen::MatrixXd, 3> sph_rotation_generators(int lmax) {
  const int n = sph_count(lmax);
  // R_3 = d/dphi is explicit on the real basis.
  Eigen::MatrixXd r3 = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l <= lmax; ++l)
    for (int m = 1; m <= l; ++m) {
      r3(sph_index(l, 2, m), sph_index(l, 1, m)) = -double(m);
      r3(sph_index(l, 1, m), sph_index(l, 2, m)) = double(m);
    }
  // Conjugate by the cyclic coordinate rotation sigma(y1,y2,y3) = (y3,y1,y2),
  // which carries axis 3 to axis 1.  P_{AB} = <Y_A, Y_B o sigma^{-1}>.
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  sph_quadrature(2 * lmax + 1, nodes, weights);
  const int nq = static_cast<int>(nodes.size());
  Eigen::MatrixXd vals(n, nq), vals_s(n, nq);
  for (int q = 0; q < nq; ++q) {
    vals.col(q) = sph_eval(lmax, nodes[q]);
    // sigma^{-1}(y) = (y2, y3, y1)
    vals_s.col(q) = sph_eval(lmax, Eigen::Vector3d(nodes[q][1], nodes[q][2], nodes[q][0]));
  }
  Eigen::VectorXd wv = Eigen::Map<Eigen::VectorXd>(weights.data(), nq);
  const Eigen::MatrixXd p = vals * wv.asDiagonal() * vals_s.transpose();
  std::array<Eigen::MatrixXd, 3> out;
  out[2] = r3;
  out[0] = p * r3 * p.transpose();
  out[1] = p * out[0] * p.transpose();
  return out;
}

}  // namespace fueterlab
