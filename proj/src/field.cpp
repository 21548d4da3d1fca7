#include "fueterlab/field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fueterlab/su2.hpp"

namespace fueterlab {

namespace {

std::string mode_str(const Eigen::Vector3i& k) {
  std::ostringstream os;
  os << "(" << k[0] << "," << k[1] << "," << k[2] << ")";
  return os.str();
}

std::string spin_str(int twoj) {
  std::ostringstream os;
  if (twoj % 2 == 0)
    os << twoj / 2;
  else
    os << twoj << "/2";
  return os.str();
}

}  // namespace

// Canonical nonzero torus modes: first nonzero component positive.
static std::vector<Eigen::Vector3i> canonical_modes(int kmax) {
  std::vector<Eigen::Vector3i> modes;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -kmax; b <= kmax; ++b)
      for (int c = -kmax; c <= kmax; ++c) {
        const Eigen::Vector3i k{a, b, c};
        if (k == Eigen::Vector3i::Zero()) continue;
        const int lead = k[0] != 0 ? k[0] : (k[1] != 0 ? k[1] : k[2]);
        if (lead > 0) modes.push_back(k);
      }
  return modes;
}

Basis Basis::torus(int kmax) {
  Basis b;
  b.manifold_ = Manifold::Torus3;
  b.kmax_ = kmax;
  b.modes_ = canonical_modes(kmax);
  b.names_.push_back("const");
  for (const auto& k : b.modes_) {
    b.names_.push_back("cos k=" + mode_str(k));
    b.names_.push_back("sin k=" + mode_str(k));
  }
  return b;
}

Basis Basis::sphere(int twoj_max) {
  Basis b;
  b.manifold_ = Manifold::Sphere3;
  b.twoj_max_ = twoj_max;
  for (int twoj = 0; twoj <= twoj_max; ++twoj) {
    const int n = twoj + 1;
    if (twoj % 2 == 0) {
      S3Block blk{twoj, -1, static_cast<int>(b.names_.size()), n};
      b.s3_blocks_.push_back(blk);
      for (int q = 0; q < n; ++q) {
        std::ostringstream os;
        os << "s3 j=" << spin_str(twoj) << " col0 q=" << q;
        b.names_.push_back(os.str());
      }
    }
    // one wigner column per conjugate pair (positive column index n > 0)
    for (int col = twoj / 2 + 1; col <= twoj; ++col) {
      S3Block blk{twoj, col, static_cast<int>(b.names_.size()), 2 * n};
      b.s3_blocks_.push_back(blk);
      for (int part = 0; part < 2; ++part)
        for (int p = 0; p < n; ++p) {
          std::ostringstream os;
          os << "s3 j=" << spin_str(twoj) << " col=" << col << (part == 0 ? " re" : " im")
             << " p=" << p;
          b.names_.push_back(os.str());
        }
    }
  }
  return b;
}

Basis Basis::product(int lmax, int mmax) {
  Basis b;
  b.manifold_ = Manifold::ProductS1S2;
  b.lmax_ = lmax;
  b.mmax_ = mmax;
  const int nsh = sph_count(lmax);
  std::vector<std::string> tnames;
  tnames.push_back("1");
  for (int m = 1; m <= mmax; ++m) {
    tnames.push_back("cos" + std::to_string(m));
    tnames.push_back("sin" + std::to_string(m));
  }
  std::vector<std::string> snames(nsh);
  for (int l = 0; l <= lmax; ++l) {
    snames[sph_index(l, 0, 0)] = "l=" + std::to_string(l) + ",0";
    for (int m = 1; m <= l; ++m) {
      snames[sph_index(l, 1, m)] = "l=" + std::to_string(l) + "," + std::to_string(m) + "c";
      snames[sph_index(l, 2, m)] = "l=" + std::to_string(l) + "," + std::to_string(m) + "s";
    }
  }
  for (const auto& tn : tnames)
    for (const auto& sn : snames) b.names_.push_back("theta:" + tn + " " + sn);
  b.rot_ = std::make_shared<std::array<Eigen::MatrixXd, 3>>(sph_rotation_generators(lmax));
  b.ymult_ = std::make_shared<std::array<Eigen::MatrixXd, 3>>(sph_coordinate_mult(lmax));
  return b;
}

Eigen::VectorXd Basis::eval(const ManifoldPoint& p) const {
  if (p.manifold != manifold_) throw std::invalid_argument("basis/point manifold mismatch");
  Eigen::VectorXd out(size());
  switch (manifold_) {
    case Manifold::Torus3: {
      out[0] = 1.0;
      const Eigen::Vector3d y = p.x.head<3>();
      int idx = 1;
      const double s2 = std::sqrt(2.0);
      for (const auto& k : modes_) {
        const double ph = 2.0 * M_PI * (k[0] * y[0] + k[1] * y[1] + k[2] * y[2]);
        out[idx++] = s2 * std::cos(ph);
        out[idx++] = s2 * std::sin(ph);
      }
      return out;
    }
    case Manifold::Sphere3: {
      const Quat y = Quat::from_vec(p.x);
      int cached_twoj = -1;
      Eigen::MatrixXcd w;
      for (const auto& blk : s3_blocks_) {
        if (blk.twoj != cached_twoj) {
          w = su2_wigner(blk.twoj, y);
          cached_twoj = blk.twoj;
        }
        const int n = blk.twoj + 1;
        if (blk.col < 0) {
          const double nrm = std::sqrt((blk.twoj + 1) / (2.0 * M_PI * M_PI));
          const Eigen::VectorXcd chi =
              su2_column0_isometry(blk.twoj).transpose() * w.col(blk.twoj / 2);
          for (int q = 0; q < n; ++q) out[blk.offset + q] = nrm * chi[q].real();
        } else {
          const double nrm = std::sqrt(double(blk.twoj + 1)) / M_PI;
          for (int pdx = 0; pdx < n; ++pdx) {
            out[blk.offset + pdx] = nrm * w(pdx, blk.col).real();
            out[blk.offset + n + pdx] = nrm * w(pdx, blk.col).imag();
          }
        }
      }
      return out;
    }
    default: {
      const int nsh = sph_count(lmax_);
      const Eigen::VectorXd sv = sph_eval(lmax_, p.x.tail<3>());
      const double theta = p.x[0];
      const double c = 1.0 / std::sqrt(2.0 * M_PI);
      const double cc = 1.0 / std::sqrt(M_PI);
      out.segment(0, nsh) = c * sv;
      int t = 1;
      for (int m = 1; m <= mmax_; ++m) {
        out.segment(t * nsh, nsh) = cc * std::cos(m * theta) * sv;
        out.segment((t + 1) * nsh, nsh) = cc * std::sin(m * theta) * sv;
        t += 2;
      }
      return out;
    }
  }
}

Eigen::MatrixXd Basis::apply_deriv(const FrameSpec& f, int i, const Eigen::MatrixXd& coeff) const {
  if (f.manifold() != manifold_) throw std::invalid_argument("basis/frame manifold mismatch");
  if (coeff.rows() != size()) throw std::invalid_argument("coefficient size mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coeff.rows(), coeff.cols());
  switch (manifold_) {
    case Manifold::Torus3: {
      int idx = 1;
      for (const auto& k : modes_) {
        const double kappa =
            2.0 * M_PI * (f.U()(0, i) * k[0] + f.U()(1, i) * k[1] + f.U()(2, i) * k[2]);
        out.row(idx) = kappa * coeff.row(idx + 1);
        out.row(idx + 1) = -kappa * coeff.row(idx);
        idx += 2;
      }
      return out;
    }
    case Manifold::Sphere3: {
      const Eigen::Vector3d u = f.U().col(i);
      for (const auto& blk : s3_blocks_) {
        if (blk.col < 0) {
          if (blk.twoj == 0) continue;
          const Eigen::MatrixXd b = su2_column0_action(blk.twoj, u);
          out.middleRows(blk.offset, blk.size) = b * coeff.middleRows(blk.offset, blk.size);
        } else {
          const Eigen::MatrixXd c = realify(su2_dpi(blk.twoj, u)).transpose();
          out.middleRows(blk.offset, blk.size) = c * coeff.middleRows(blk.offset, blk.size);
        }
      }
      return out;
    }
    default: {
      const int nsh = sph_count(lmax_);
      const int nth = 2 * mmax_ + 1;
      const auto& ym = (*ymult_)[i];
      const auto& rot = (*rot_)[i];
      for (int col = 0; col < coeff.cols(); ++col) {
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            cmat(coeff.col(col).data(), nth, nsh);
        Eigen::MatrixXd dth = Eigen::MatrixXd::Zero(nth, nsh);
        for (int m = 1; m <= mmax_; ++m) {
          dth.row(2 * m - 1) = double(m) * cmat.row(2 * m);
          dth.row(2 * m) = -double(m) * cmat.row(2 * m - 1);
        }
        const Eigen::MatrixXd res = dth * ym.transpose() + cmat * rot.transpose();
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            out.col(col).data(), nth, nsh) = res;
      }
      return out;
    }
  }
}

bool Basis::deriv_truncates(const Eigen::MatrixXd& coeff, double tol) const {
  if (manifold_ != Manifold::ProductS1S2) return false;
  const int nsh = sph_count(lmax_);
  const int nth = 2 * mmax_ + 1;
  const int cut = sph_count(lmax_ - 1);
  for (int col = 0; col < coeff.cols(); ++col)
    for (int t = 0; t < nth; ++t)
      for (int s = cut; s < nsh; ++s)
        if (std::abs(coeff(t * nsh + s, col)) > tol) return true;
  return false;
}

FieldExpansion FieldExpansion::project(
    const Basis& basis, int ncomp, const std::function<Eigen::VectorXd(const ManifoldPoint&)>& fn,
    const QuadratureRule& rule) {
  if (rule.manifold != basis.manifold())
    throw std::invalid_argument("quadrature/basis manifold mismatch");
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(basis.size(), ncomp);
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const Eigen::VectorXd vals = basis.eval(rule.nodes[q]);
    const Eigen::VectorXd fv = fn(rule.nodes[q]);
    coeff += rule.weights[static_cast<int>(q)] * vals * fv.transpose();
  }
  return {basis, std::move(coeff)};
}

FieldExpansion FieldExpansion::random(const Basis& basis, int ncomp, std::mt19937_64& rng,
                                      bool mean_zero) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd coeff(basis.size(), ncomp);
  for (int r = 0; r < coeff.rows(); ++r)
    for (int c = 0; c < coeff.cols(); ++c) coeff(r, c) = g(rng);
  if (mean_zero) coeff.row(basis.constant_index()).setZero();
  return {basis, std::move(coeff)};
}

}  // namespace fueterlab
