#include "fueterlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "fueterlab/parallel.hpp"
#include "fueterlab/su2.hpp"

namespace fueterlab {

namespace {

std::string spin_str(int twoj) {
  std::ostringstream os;
  if (twoj % 2 == 0)
    os << twoj / 2;
  else
    os << twoj << "/2";
  return os.str();
}

// M = sum_i kron(T_i, J_i) on coefficients laid out 4*fn + component.
Eigen::MatrixXd quaternion_kron(const std::array<Eigen::MatrixXd, 3>& t) {
  const int n = static_cast<int>(t[0].rows());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int i = 0; i < 3; ++i) {
    const Eigen::Matrix4d j = J_matrix(i + 1);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (t[i](r, c) != 0.0) m.block<4, 4>(4 * r, 4 * c) += t[i](r, c) * j;
  }
  return m;
}

std::vector<std::string> tensor_names(const std::vector<std::string>& fn) {
  std::vector<std::string> out;
  out.reserve(4 * fn.size());
  for (const auto& s : fn)
    for (int c = 0; c < 4; ++c) out.push_back(s + " * e" + std::to_string(c));
  return out;
}

std::array<Eigen::MatrixXd, 3> t3_scalar_derivs(const Eigen::Matrix3d& U,
                                                const Eigen::Vector3i& k) {
  std::array<Eigen::MatrixXd, 3> t;
  const Eigen::Vector3d kappa = 2.0 * M_PI * (U.transpose() * k.cast<double>());
  for (int i = 0; i < 3; ++i) {
    t[i] = Eigen::MatrixXd::Zero(2, 2);
    t[i](0, 1) = kappa[i];
    t[i](1, 0) = -kappa[i];
  }
  return t;
}

std::array<Eigen::MatrixXd, 3> s3_scalar_derivs(const Eigen::Matrix3d& U, int twoj) {
  std::array<Eigen::MatrixXd, 3> t;
  for (int i = 0; i < 3; ++i) t[i] = realify(su2_dpi(twoj, U.col(i))).transpose();
  return t;
}

std::array<Eigen::MatrixXd, 3> s3_reduced_derivs(const Eigen::Matrix3d& U, int twoj) {
  std::array<Eigen::MatrixXd, 3> t;
  for (int i = 0; i < 3; ++i) t[i] = su2_column0_action(twoj, U.col(i));
  return t;
}

// Scalar Galerkin matrices of the product-frame derivatives on
// trig(theta) x spherical harmonics (theta-major layout).
std::array<Eigen::MatrixXd, 3> s1s2_scalar_derivs(int lmax, int mmax) {
  const auto rot = sph_rotation_generators(lmax);
  const auto ym = sph_coordinate_mult(lmax);
  const int nsh = sph_count(lmax);
  const int nth = 2 * mmax + 1;
  Eigen::MatrixXd dth = Eigen::MatrixXd::Zero(nth, nth);
  for (int m = 1; m <= mmax; ++m) {
    dth(2 * m - 1, 2 * m) = double(m);
    dth(2 * m, 2 * m - 1) = -double(m);
  }
  std::array<Eigen::MatrixXd, 3> t;
  for (int i = 0; i < 3; ++i) {
    t[i] = Eigen::MatrixXd::Zero(nth * nsh, nth * nsh);
    for (int a = 0; a < nth; ++a)
      for (int b = 0; b < nth; ++b) {
        if (dth(a, b) != 0.0) t[i].block(a * nsh, b * nsh, nsh, nsh) += dth(a, b) * ym[i];
        if (a == b) t[i].block(a * nsh, b * nsh, nsh, nsh) += rot[i];
      }
  }
  return t;
}

std::vector<std::string> s1s2_scalar_names(int lmax, int mmax) {
  std::vector<std::string> tnames{"1"};
  for (int m = 1; m <= mmax; ++m) {
    tnames.push_back("cos" + std::to_string(m));
    tnames.push_back("sin" + std::to_string(m));
  }
  std::vector<std::string> snames(sph_count(lmax));
  for (int l = 0; l <= lmax; ++l) {
    snames[sph_index(l, 0, 0)] = "l=" + std::to_string(l) + ",0";
    for (int m = 1; m <= l; ++m) {
      snames[sph_index(l, 1, m)] = "l=" + std::to_string(l) + "," + std::to_string(m) + "c";
      snames[sph_index(l, 2, m)] = "l=" + std::to_string(l) + "," + std::to_string(m) + "s";
    }
  }
  std::vector<std::string> out;
  out.reserve(tnames.size() * snames.size());
  for (const auto& tn : tnames)
    for (const auto& sn : snames) out.push_back("theta:" + tn + " " + sn);
  return out;
}

}  // namespace

std::string BlockLabel::str() const {
  std::ostringstream os;
  switch (manifold) {
    case Manifold::Torus3:
      os << "t3 k=(" << k[0] << "," << k[1] << "," << k[2] << ")";
      break;
    case Manifold::Sphere3:
      os << "s3 j=" << spin_str(twoj);
      break;
    default:
      os << "s1s2 L=" << lmax << " M=" << mmax;
      break;
  }
  return os.str();
}

SpectralBlock t3_block(const Eigen::Matrix3d& U, const Eigen::Vector3i& k) {
  if (U.determinant() <= 0) throw std::invalid_argument("det U must be positive");
  SpectralBlock b;
  b.label = {Manifold::Torus3, k, 0, 0, 0};
  if (k == Eigen::Vector3i::Zero()) {
    b.matrix = Eigen::MatrixXd::Zero(4, 4);
    b.basis = tensor_names({"const"});
    return b;
  }
  b.matrix = quaternion_kron(t3_scalar_derivs(U, k));
  std::ostringstream c, s;
  c << "cos k=(" << k[0] << "," << k[1] << "," << k[2] << ")";
  s << "sin k=(" << k[0] << "," << k[1] << "," << k[2] << ")";
  b.basis = tensor_names({c.str(), s.str()});
  return b;
}

SpectralBlock s3_block(const Eigen::Matrix3d& U, int twoj) {
  if (U.determinant() <= 0) throw std::invalid_argument("det U must be positive");
  if (twoj < 0) throw std::invalid_argument("negative spin");
  SpectralBlock b;
  b.label = {Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0};
  if (twoj == 0) {
    b.matrix = Eigen::MatrixXd::Zero(4, 4);
    b.basis = tensor_names({"const"});
    return b;
  }
  b.matrix = quaternion_kron(s3_scalar_derivs(U, twoj));
  std::vector<std::string> fn;
  for (int part = 0; part < 2; ++part)
    for (int p = 0; p <= twoj; ++p) {
      std::ostringstream os;
      os << "s3 j=" << spin_str(twoj) << (part == 0 ? " re" : " im") << " p=" << p;
      fn.push_back(os.str());
    }
  b.basis = tensor_names(fn);
  // each conjugate-pair copy counts once; (2j+1) wigner columns pair up
  b.mult_num = twoj + 1;
  b.mult_den = 2;
  return b;
}

SpectralBlock s3_block_reduced(const Eigen::Matrix3d& U, int twoj) {
  if (twoj % 2 != 0) throw std::invalid_argument("reduced block needs integer spin");
  SpectralBlock b;
  b.label = {Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0};
  if (twoj == 0) {
    b.matrix = Eigen::MatrixXd::Zero(4, 4);
    b.basis = tensor_names({"const"});
    return b;
  }
  b.matrix = quaternion_kron(s3_reduced_derivs(U, twoj));
  std::vector<std::string> fn;
  for (int q = 0; q <= twoj; ++q) {
    std::ostringstream os;
    os << "s3 j=" << spin_str(twoj) << " col0 q=" << q;
    fn.push_back(os.str());
  }
  b.basis = tensor_names(fn);
  b.mult_num = twoj + 1;
  b.mult_den = 1;
  return b;
}

SpectralBlock s1s2_operator(int lmax, int mmax) {
  if (lmax < 2) throw std::invalid_argument("truncation too small: need lmax >= 2");
  if (mmax < 1) throw std::invalid_argument("need mmax >= 1");
  SpectralBlock b;
  b.label = {Manifold::ProductS1S2, Eigen::Vector3i::Zero(), 0, lmax, mmax};
  b.matrix = quaternion_kron(s1s2_scalar_derivs(lmax, mmax));
  b.basis = tensor_names(s1s2_scalar_names(lmax, mmax));
  return b;
}

std::vector<BlockLabel> block_labels(const FrameSpec& f, const SweepCutoffs& cut) {
  std::vector<BlockLabel> labels;
  switch (f.manifold()) {
    case Manifold::Torus3: {
      labels.push_back({Manifold::Torus3, Eigen::Vector3i::Zero(), 0, 0, 0});
      for (int a = -cut.kmax; a <= cut.kmax; ++a)
        for (int b = -cut.kmax; b <= cut.kmax; ++b)
          for (int c = -cut.kmax; c <= cut.kmax; ++c) {
            const Eigen::Vector3i k{a, b, c};
            if (k == Eigen::Vector3i::Zero()) continue;
            const int lead = k[0] != 0 ? k[0] : (k[1] != 0 ? k[1] : k[2]);
            if (lead > 0) labels.push_back({Manifold::Torus3, k, 0, 0, 0});
          }
      break;
    }
    case Manifold::Sphere3:
      for (int twoj = 0; twoj <= cut.twoj_max; ++twoj)
        labels.push_back({Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0});
      break;
    default:
      labels.push_back({Manifold::ProductS1S2, Eigen::Vector3i::Zero(), 0, cut.lmax, cut.mmax});
      break;
  }
  return labels;
}

SpectralBlock assemble_block(const FrameSpec& f, const BlockLabel& label) {
  if (label.manifold != f.manifold()) throw std::invalid_argument("label/frame manifold mismatch");
  switch (label.manifold) {
    case Manifold::Torus3: return t3_block(f.U(), label.k);
    case Manifold::Sphere3: return s3_block(f.U(), label.twoj);
    default: return s1s2_operator(label.lmax, label.mmax);
  }
}

double neglected_block_bound(const FrameSpec& f, const SweepCutoffs& cut) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(f.U().transpose() * f.U());
  const double smin = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
  switch (f.manifold()) {
    case Manifold::Torus3:
      return 2.0 * M_PI * smin * (cut.kmax + 1);
    case Manifold::Sphere3: {
      // |M_j|^2 >= 4 smin^2 j(j+1) - 4 j X with X = sum_i |u_j x u_k|,
      // from D^2 = -L - W and the Casimir lower bound for -L.
      double x = 0.0;
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d uj = f.U().col((i + 1) % 3), uk = f.U().col((i + 2) % 3);
        x += uj.cross(uk).norm();
      }
      auto bound_at = [&](double j) {
        return std::sqrt(std::max(0.0, 4.0 * smin * smin * j * (j + 1.0) - 4.0 * j * x));
      };
      const double jq = 0.5 * (cut.twoj_max + 1);
      const double vertex = (x - smin * smin) / (2.0 * smin * smin);
      if (jq < vertex) return 0.0;  // bound not yet monotone; refuse to certify
      return bound_at(jq);
    }
    default:
      return 0.0;  // no rigorous bound for the Galerkin truncation
  }
}

double s1s2_kernel_tol(int lmax) { return std::pow(10.0, -(0.5 * lmax + 3.0)); }

Eigen::VectorXd block_eigenvalues(const SpectralBlock& b) {
  if (b.label.manifold == Manifold::ProductS1S2) {
    // theta-frequency sectors decouple exactly; solve per sector
    const int nsh = sph_count(b.label.lmax);
    std::vector<double> eigs;
    eigs.reserve(b.matrix.rows());
    auto solve_range = [&](int fn_begin, int fn_count) {
      const int off = 4 * fn_begin * nsh;
      const int sz = 4 * fn_count * nsh;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.matrix.block(off, off, sz, sz),
                                                        Eigen::EigenvaluesOnly);
      for (int i = 0; i < sz; ++i) eigs.push_back(es.eigenvalues()[i]);
    };
    // verify the sector structure before using it
    for (int m1 = 0; m1 <= b.label.mmax; ++m1)
      for (int m2 = m1 + 1; m2 <= b.label.mmax; ++m2) {
        const int o1 = 4 * (m1 == 0 ? 0 : 2 * m1 - 1) * nsh;
        const int s1 = 4 * (m1 == 0 ? 1 : 2) * nsh;
        const int o2 = 4 * (2 * m2 - 1) * nsh;
        const int s2 = 8 * nsh;
        if (b.matrix.block(o1, o2, s1, s2).cwiseAbs().maxCoeff() > 0.0)
          throw std::logic_error("theta sectors unexpectedly coupled");
      }
    solve_range(0, 1);
    for (int m = 1; m <= b.label.mmax; ++m) solve_range(2 * m - 1, 2);
    std::sort(eigs.begin(), eigs.end());
    return Eigen::Map<Eigen::VectorXd>(eigs.data(), static_cast<int>(eigs.size()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

KernelReport kernel_dimension(const FrameSpec& f, const SweepCutoffs& cut, double tol) {
  KernelReport rep;
  const bool product = f.manifold() == Manifold::ProductS1S2;
  rep.tol = product ? s1s2_kernel_tol(cut.lmax) : tol;
  rep.neglected_bound = neglected_block_bound(f, cut);
  if (!product && rep.neglected_bound <= rep.tol) {
    std::ostringstream os;
    os << "uncertified truncation: neglected-block bound " << rep.neglected_bound
       << " does not exceed tol " << rep.tol << "; raise the cutoff";
    throw UncertifiedTruncation(os.str());
  }
  const auto labels = block_labels(f, cut);
  std::vector<Eigen::VectorXd> spectra(labels.size());
  std::vector<std::pair<long, long>> mults(labels.size());
  parallel_for(static_cast<int>(labels.size()), [&](int i) {
    const SpectralBlock blk = assemble_block(f, labels[i]);
    spectra[i] = block_eigenvalues(blk);
    mults[i] = {blk.mult_num, blk.mult_den};
  });
  long counted = 0;
  double cluster_max = 0.0;
  double next_min = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < labels.size(); ++i) {
    long in_cluster = 0;
    for (int e = 0; e < spectra[i].size(); ++e) {
      const double a = std::abs(spectra[i][e]);
      if (a < rep.tol) {
        ++in_cluster;
        cluster_max = std::max(cluster_max, a);
      } else {
        next_min = std::min(next_min, a);
      }
    }
    const long num = in_cluster * mults[i].first;
    if (num % mults[i].second != 0)
      throw std::logic_error("block kernel count incompatible with multiplicity factor");
    counted += num / mults[i].second;
  }
  rep.cluster_max = cluster_max;
  rep.next_min = next_min;
  if (next_min < 100.0 * rep.tol || next_min < 100.0 * cluster_max) {
    std::ostringstream os;
    os << "tolerance " << rep.tol << " sits inside the numerical gap: kernel cluster reaches "
       << cluster_max << ", next eigenvalue " << next_min << " (need a factor-100 gap)";
    throw SpectralGapAmbiguity(os.str());
  }
  if (counted < 4 || counted % 4 != 0)
    throw std::logic_error("kernel dimension must be a positive multiple of four");
  rep.dim = static_cast<int>(counted);
  return rep;
}

Classification classify(const FrameSpec& f, const SweepCutoffs& cut) {
  return kernel_dimension(f, cut).dim == 4 ? Classification::Regular : Classification::Singular;
}

double verify_dd2(const FrameSpec& f, const BlockLabel& label) {
  switch (f.manifold()) {
    case Manifold::Torus3: {
      if (label.k == Eigen::Vector3i::Zero()) return 0.0;
      const auto t = t3_scalar_derivs(f.U(), label.k);
      const Eigen::MatrixXd d = quaternion_kron(t);
      Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(2, 2);
      for (int i = 0; i < 3; ++i) lap += t[i] * t[i];
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(8, 8);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          l.block<4, 4>(4 * r, 4 * c) = lap(r, c) * Eigen::Matrix4d::Identity();
      // bracket fields vanish identically, so W = 0
      return (d * d + l).cwiseAbs().maxCoeff();
    }
    case Manifold::Sphere3: {
      if (label.twoj == 0) return 0.0;
      const auto t = s3_scalar_derivs(f.U(), label.twoj);
      const Eigen::MatrixXd d = quaternion_kron(t);
      const int n = static_cast<int>(t[0].rows());
      Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < 3; ++i) lap += t[i] * t[i];
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(4 * n, 4 * n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (lap(r, c) != 0.0) l.block<4, 4>(4 * r, 4 * c) = lap(r, c) * Eigen::Matrix4d::Identity();
      std::array<Eigen::MatrixXd, 3> tw;
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const Quat uj{0, f.U()(0, j), f.U()(1, j), f.U()(2, j)};
        const Quat uk{0, f.U()(0, k), f.U()(1, k), f.U()(2, k)};
        const Quat gen = qmul(uj, uk) - qmul(uk, uj);
        tw[i] = realify(su2_dpi(label.twoj, {gen.x1, gen.x2, gen.x3})).transpose();
      }
      const Eigen::MatrixXd w = quaternion_kron(tw);
      return (d * d + l + w).cwiseAbs().maxCoeff();
    }
    default: {
      const int lmax = label.lmax, mmax = label.mmax;
      const auto t = s1s2_scalar_derivs(lmax, mmax);
      const Eigen::MatrixXd d = quaternion_kron(t);
      const int n = static_cast<int>(t[0].rows());
      Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < 3; ++i) lap += t[i] * t[i];
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(4 * n, 4 * n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (lap(r, c) != 0.0) l.block<4, 4>(4 * r, 4 * c) = lap(r, c) * Eigen::Matrix4d::Identity();
      // w_i = 2 y_i d/dtheta + rotation_i
      const auto rot = sph_rotation_generators(lmax);
      const auto ym = sph_coordinate_mult(lmax);
      const int nsh = sph_count(lmax);
      const int nth = 2 * mmax + 1;
      Eigen::MatrixXd dth = Eigen::MatrixXd::Zero(nth, nth);
      for (int m = 1; m <= mmax; ++m) {
        dth(2 * m - 1, 2 * m) = double(m);
        dth(2 * m, 2 * m - 1) = -double(m);
      }
      std::array<Eigen::MatrixXd, 3> twm;
      for (int i = 0; i < 3; ++i) {
        twm[i] = Eigen::MatrixXd::Zero(n, n);
        for (int a = 0; a < nth; ++a)
          for (int b = 0; b < nth; ++b) {
            if (dth(a, b) != 0.0)
              twm[i].block(a * nsh, b * nsh, nsh, nsh) += 2.0 * dth(a, b) * ym[i];
            if (a == b) twm[i].block(a * nsh, b * nsh, nsh, nsh) += rot[i];
          }
      }
      const Eigen::MatrixXd w = quaternion_kron(twm);
      Eigen::MatrixXd res = d * d + l + w;
      // the identity is exact away from the degree cut; restrict to columns
      // whose composition stays inside the truncation
      const int keep = sph_count(lmax - 2);
      double worst = 0.0;
      for (int th = 0; th < nth; ++th)
        for (int s = 0; s < keep; ++s)
          worst = std::max(worst,
                           res.middleCols(4 * (th * nsh + s), 4).cwiseAbs().maxCoeff());
      return worst;
    }
  }
}

FieldExpansion apply_fueter(const FrameSpec& f, const FieldExpansion& g) {
  if (g.basis.manifold() != f.manifold())
    throw std::invalid_argument("field/frame manifold mismatch");
  if (g.ncomp() % 4 != 0) throw std::invalid_argument("field must be H^n valued");
  if (g.basis.deriv_truncates(g.coeff))
    throw std::domain_error("truncation overflow: field has support at the degree cut");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.coeff.rows(), g.coeff.cols());
  for (int i = 0; i < 3; ++i) {
    const Eigen::MatrixXd di = g.basis.apply_deriv(f, i, g.coeff);
    const Eigen::Matrix4d j = J_matrix(i + 1);
    for (int blk = 0; blk < g.ncomp() / 4; ++blk)
      out.middleCols(4 * blk, 4) += di.middleCols(4 * blk, 4) * j.transpose();
  }
  return {g.basis, std::move(out)};
}

std::array<Eigen::MatrixXd, 3> block_scalar_derivs(const FrameSpec& f, const BlockLabel& label) {
  if (label.manifold != f.manifold()) throw std::invalid_argument("label/frame manifold mismatch");
  switch (label.manifold) {
    case Manifold::Torus3:
      if (label.k == Eigen::Vector3i::Zero()) {
        std::array<Eigen::MatrixXd, 3> t;
        for (auto& m : t) m = Eigen::MatrixXd::Zero(1, 1);
        return t;
      }
      return t3_scalar_derivs(f.U(), label.k);
    case Manifold::Sphere3:
      if (label.twoj == 0) {
        std::array<Eigen::MatrixXd, 3> t;
        for (auto& m : t) m = Eigen::MatrixXd::Zero(1, 1);
        return t;
      }
      return s3_scalar_derivs(f.U(), label.twoj);
    default:
      return s1s2_scalar_derivs(label.lmax, label.mmax);
  }
}

Eigen::MatrixXd block_matrix_from_U(Manifold m, const Eigen::Matrix3d& U, const BlockLabel& label) {
  switch (m) {
    case Manifold::Torus3:
      if (label.k == Eigen::Vector3i::Zero()) return Eigen::MatrixXd::Zero(4, 4);
      return quaternion_kron(t3_scalar_derivs(U, label.k));
    case Manifold::Sphere3:
      if (label.twoj == 0) return Eigen::MatrixXd::Zero(4, 4);
      return quaternion_kron(s3_scalar_derivs(U, label.twoj));
    default:
      return quaternion_kron(s1s2_scalar_derivs(label.lmax, label.mmax));
  }
}

Eigen::VectorXd dirac_spectrum_shift(const FrameSpec& f, const BlockLabel& label) {
  std::mt19937_64 rng(0x5417ULL);
  double lo = 1e300, hi = -1e300;
  for (int it = 0; it < 8; ++it) {
    const double l = spinc_lambda(f, random_point(f.manifold(), rng));
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  if (hi - lo > 1e-10) throw std::logic_error("spin-c shift is not constant on this frame");
  const Eigen::VectorXd eigs = block_eigenvalues(assemble_block(f, label));
  return eigs.array() + 0.5 * (lo + hi);
}

}  // namespace fueterlab
