#include "fueterlab/variational.hpp"

#include <cmath>
#include <sstream>

namespace fueterlab {

namespace {

// quadrature sized to integrate products of two basis derivatives
QuadratureRule product_rule(const Basis& b) {
  switch (b.manifold()) {
    case Manifold::Torus3: return t3_quadrature(2 * b.kmax() + 1);
    case Manifold::Sphere3: return s3_quadrature(2 * b.twoj_max() + 2);
    default: return s1s2_quadrature(2 * b.mmax() + 2, 2 * b.lmax() + 4);
  }
}

Quat quat_slice(const Eigen::VectorXd& v, int blk) {
  return {v[4 * blk], v[4 * blk + 1], v[4 * blk + 2], v[4 * blk + 3]};
}

// sum over H^n factors of omega_i(a, b)
double omega_n(int axis, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = 0.0;
  for (int blk = 0; blk < a.size() / 4; ++blk)
    s += omega(axis, quat_slice(a, blk), quat_slice(b, blk));
  return s;
}

void require_headroom(const FieldExpansion& g) {
  if (g.basis.deriv_truncates(g.coeff))
    throw std::domain_error(
        "quadrature degree insufficient: field has support at the degree cut");
}

}  // namespace

EnergyBreakdown energy_identity(const FrameSpec& f, const FieldExpansion& g) {
  if (g.basis.manifold() != f.manifold())
    throw std::invalid_argument("field/frame manifold mismatch");
  require_headroom(g);
  EnergyBreakdown out;
  std::array<FieldExpansion, 3> dg{g.deriv(f, 0), g.deriv(f, 1), g.deriv(f, 2)};
  for (int i = 0; i < 3; ++i) out.dirichlet += 0.5 * dg[i].norm2();
  out.fueter = 0.5 * apply_fueter(f, g).norm2();
  // Pointwise the cross terms are sum_cyc omega_i(d_j g, d_k g); integrated
  // against dvol this is sum_i int lambda alpha_i ^ g* omega_i, which is the
  // coframe pullback term whenever the frame is normal.
  const QuadratureRule rule = product_rule(g.basis);
  double pull = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const ManifoldPoint& p = rule.nodes[q];
    std::array<Eigen::VectorXd, 3> dv;
    for (int i = 0; i < 3; ++i) dv[i] = dg[i].eval(p);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += omega_n(i + 1, dv[(i + 1) % 3], dv[(i + 2) % 3]);
    pull += rule.weights[static_cast<int>(q)] * s;
  }
  out.pullback = pull;
  return out;
}

double energy_identity_residual(const FrameSpec& f, const FieldExpansion& g) {
  return energy_identity(f, g).residual();
}

ActionValue action_value(const FrameSpec& f, const FieldExpansion& g) {
  if (g.basis.manifold() != f.manifold())
    throw std::invalid_argument("field/frame manifold mismatch");
  require_headroom(g);
  ActionValue out;
  out.inner_form = 0.5 * g.inner(apply_fueter(f, g));
  if (f.manifold() == Manifold::Torus3) return out;  // iota(v_i) dvol not exact
  if (f.manifold() == Manifold::Sphere3 &&
      !(f.U().transpose() * f.U()).isApprox(Eigen::Matrix3d::Identity(), 1e-12))
    return out;  // beta_i = alpha_i/2 is a primitive only for rotation frames

  std::array<FieldExpansion, 3> dg{g.deriv(f, 0), g.deriv(f, 1), g.deriv(f, 2)};
  const QuadratureRule rule = product_rule(g.basis);
  double val = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const ManifoldPoint& p = rule.nodes[q];
    const double lambda = volume_density(f, p);
    const auto v = frame_vectors(f, p);
    std::array<CoVec, 3> beta;
    if (f.manifold() == Manifold::Sphere3) {
      const auto alpha = dual_coframe(f, p);
      for (int i = 0; i < 3; ++i) beta[i] = 0.5 * alpha[i];
    } else {
      const Eigen::Vector3d y = p.x.tail<3>();
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d half_rot = 0.5 * Eigen::Vector3d::Unit(i).cross(y);
        beta[i] = {y[i], half_rot[0], half_rot[1], half_rot[2]};
      }
    }
    std::array<Eigen::VectorXd, 3> dv;
    for (int i = 0; i < 3; ++i) dv[i] = dg[i].eval(p);
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a)
        s += beta[i].dot(v[a]) * omega_n(i + 1, dv[(a + 1) % 3], dv[(a + 2) % 3]);
    val += rule.weights[static_cast<int>(q)] * s / lambda;
  }
  out.beta_form = -val;
  return out;
}

Quat FourierLoop::eval(double theta) const {
  Eigen::Vector4d v = coeff.row(0);
  for (int m = 1; m <= degree(); ++m) {
    v += std::cos(m * theta) * coeff.row(2 * m - 1).transpose();
    v += std::sin(m * theta) * coeff.row(2 * m).transpose();
  }
  return Quat::from_vec(v);
}

Quat FourierLoop::deriv(double theta) const {
  Eigen::Vector4d v = Eigen::Vector4d::Zero();
  for (int m = 1; m <= degree(); ++m) {
    v += -m * std::sin(m * theta) * coeff.row(2 * m - 1).transpose();
    v += m * std::cos(m * theta) * coeff.row(2 * m).transpose();
  }
  return Quat::from_vec(v);
}

FourierLoop FourierLoop::random(int deg, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FourierLoop l;
  l.coeff.resize(2 * deg + 1, 4);
  for (int r = 0; r < l.coeff.rows(); ++r)
    for (int c = 0; c < 4; ++c) l.coeff(r, c) = g(rng);
  return l;
}

FourierLoop FourierLoop::extremal(const Eigen::Vector3d& y, const Quat& q0) {
  const Eigen::Vector3d u = y / y.norm();
  const Quat uy{0.0, u[0], u[1], u[2]};
  FourierLoop l;
  l.coeff = Eigen::MatrixXd::Zero(3, 4);
  l.coeff.row(1) = q0.vec();
  l.coeff.row(2) = (-qmul(uy, q0)).vec();
  return l;
}

std::pair<double, double> isoperimetric_check(const Eigen::Vector3d& y, const FourierLoop& f) {
  if (std::abs(y.norm() - 1.0) > 1e-12) throw std::invalid_argument("y must lie on S^2");
  const int n = 4 * (f.degree() + 1);
  double lhs = 0.0, rhs = 0.0;
  for (int q = 0; q < n; ++q) {
    const double theta = 2.0 * M_PI * q / n;
    const Quat ft = f.eval(theta);
    const Quat dft = f.deriv(theta);
    double w = 0.0;
    for (int i = 0; i < 3; ++i) w += y[i] * omega(i + 1, dft, ft);
    lhs += w;
    rhs += dft.norm2();
  }
  const double scale = 0.5 * 2.0 * M_PI / n;
  return {scale * lhs, scale * rhs};
}

double s1s2_identity_residual(const FieldExpansion& g) {
  if (g.basis.manifold() != Manifold::ProductS1S2)
    throw std::invalid_argument("identity lives on the product manifold");
  require_headroom(g);
  const FrameSpec f = catalog_s1s2_frame();
  std::array<FieldExpansion, 3> dg{g.deriv(f, 0), g.deriv(f, 1), g.deriv(f, 2)};
  double dirichlet = 0.0;
  for (int i = 0; i < 3; ++i) dirichlet += 0.5 * dg[i].norm2();
  const FieldExpansion fg = apply_fueter(f, g);
  const double fueter = 0.5 * fg.norm2();
  const double cross = 0.5 * g.inner(fg);
  // loop action through the double integral: (1/2) int omega_y(d_theta g, g)
  const QuadratureRule rule = product_rule(g.basis);
  double ahat = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const ManifoldPoint& p = rule.nodes[q];
    const Eigen::Vector3d y = p.x.tail<3>();
    const Eigen::VectorXd gv = g.eval(p);
    Eigen::VectorXd dth = Eigen::VectorXd::Zero(gv.size());
    for (int i = 0; i < 3; ++i) dth += y[i] * dg[i].eval(p);
    double w = 0.0;
    for (int i = 0; i < 3; ++i) w += y[i] * omega_n(i + 1, dth, gv);
    ahat += 0.5 * rule.weights[static_cast<int>(q)] * w;
  }
  return std::abs(dirichlet - (fueter + cross + ahat));
}

RegularEstimate regular_estimate_constant(const FrameSpec& f, int sample_size,
                                          const SweepCutoffs& cut, std::uint64_t seed) {
  const KernelReport rep = kernel_dimension(f, cut);
  if (rep.dim != 4) {
    // name a block hosting a nonconstant kernel element as the witness
    std::string witness = "unknown block";
    for (const BlockLabel& lab : block_labels(f, cut)) {
      if ((lab.manifold == Manifold::Torus3 && lab.k == Eigen::Vector3i::Zero()) ||
          (lab.manifold == Manifold::Sphere3 && lab.twoj == 0))
        continue;
      const Eigen::VectorXd e = block_eigenvalues(assemble_block(f, lab));
      if (e.cwiseAbs().minCoeff() < rep.tol) {
        witness = lab.str();
        break;
      }
    }
    std::ostringstream os;
    os << "frame is singular (kernel dimension " << rep.dim
       << "); the Dirichlet/Fueter ratio is unbounded on the nonconstant kernel element in block "
       << witness;
    throw std::runtime_error(os.str());
  }
  RegularEstimate out;

  // sharp value: generalized Rayleigh quotient per mean-zero block
  for (const BlockLabel& lab : block_labels(f, cut)) {
    const SpectralBlock blk = assemble_block(f, lab);
    const auto t = block_scalar_derivs(f, lab);
    const int n = static_cast<int>(t[0].rows());
    if (f.manifold() != Manifold::ProductS1S2 && blk.matrix.cwiseAbs().maxCoeff() == 0.0)
      continue;  // constant block
    Eigen::MatrixXd gs = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < 3; ++i) gs += t[i].transpose() * t[i];
    Eigen::MatrixXd gq = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (gs(r, c) != 0.0) gq.block<4, 4>(4 * r, 4 * c) = gs(r, c) * Eigen::Matrix4d::Identity();
    Eigen::MatrixXd d2 = blk.matrix * blk.matrix;
    if (f.manifold() == Manifold::ProductS1S2) {
      // project out the four exact constants (scalar function 0)
      const int sz = 4 * n - 4;
      Eigen::MatrixXd gq2 = gq.bottomRightCorner(sz, sz);
      Eigen::MatrixXd d22 = d2.bottomRightCorner(sz, sz);
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(gq2, d22,
                                                                    Eigen::EigenvaluesOnly);
      out.sharp = std::max(out.sharp, ges.eigenvalues().maxCoeff());
      continue;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(gq, d2, Eigen::EigenvaluesOnly);
    out.sharp = std::max(out.sharp, ges.eigenvalues().maxCoeff());
  }

  // sampled value over random mean-zero band-limited fields
  Basis basis = [&] {
    switch (f.manifold()) {
      case Manifold::Torus3: return Basis::torus(std::min(cut.kmax, 4));
      case Manifold::Sphere3: return Basis::sphere(std::min(cut.twoj_max, 6));
      default: return Basis::product(cut.lmax, cut.mmax);
    }
  }();
  std::mt19937_64 rng(seed);
  for (int s = 0; s < sample_size; ++s) {
    FieldExpansion g = FieldExpansion::random(basis, 4, rng, true);
    if (basis.manifold() == Manifold::ProductS1S2) {
      const int nsh = (basis.lmax() + 1) * (basis.lmax() + 1);
      const int cut_idx = basis.lmax() * basis.lmax();
      for (int t = 0; t < 2 * basis.mmax() + 1; ++t)
        g.coeff.middleRows(t * nsh + cut_idx, nsh - cut_idx).setZero();
    }
    double dirichlet = 0.0;
    for (int i = 0; i < 3; ++i) dirichlet += g.deriv(f, i).norm2();
    const double fueter = apply_fueter(f, g).norm2();
    if (fueter > 0) out.sampled = std::max(out.sampled, dirichlet / fueter);
  }
  return out;
}

}  // namespace fueterlab
