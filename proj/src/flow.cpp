#include "fueterlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fueterlab {

OperatorPath OperatorPath::with_fd_derivative(double s0, double s1,
                                              std::function<Eigen::MatrixXd(double)> m,
                                              std::string label) {
  OperatorPath p;
  p.s0 = s0;
  p.s1 = s1;
  p.matrix_at = m;
  p.label = std::move(label);
  p.derivative_at = [m](double s) {
    const double h = 1e-5;
    const Eigen::MatrixXd full = (m(s + h) - m(s - h)) / (2 * h);
    const Eigen::MatrixXd half = (m(s + h / 2) - m(s - h / 2)) / h;
    const double scale = std::max(1.0, half.cwiseAbs().maxCoeff());
    if ((full - half).cwiseAbs().maxCoeff() > 1e-3 * scale)
      throw std::runtime_error("path derivative did not pass the step-halving check");
    return half;
  };
  return p;
}

FramePath FramePath::reversed() const {
  FramePath p = *this;
  const double a = s0, b = s1;
  const auto u = U_at;
  p.U_at = [u, a, b](double s) { return u(a + b - s); };
  if (dU_at) {
    const auto du = dU_at;
    p.dU_at = [du, a, b](double s) { return Eigen::Matrix3d(-du(a + b - s)); };
  }
  return p;
}

FramePath FramePath::restricted(double a, double b) const {
  FramePath p = *this;
  p.s0 = a;
  p.s1 = b;
  return p;
}

OperatorPath FramePath::block_path(const BlockLabel& label) const {
  OperatorPath p;
  p.s0 = s0;
  p.s1 = s1;
  p.label = label.str();
  const Manifold m = manifold;
  const auto u = U_at;
  p.matrix_at = [m, u, label](double s) {
    const Eigen::Matrix3d us = u(s);
    if (us.determinant() <= 0.0) {
      std::ostringstream os;
      os << "path leaves the positive frame space at s = " << s;
      throw std::runtime_error(os.str());
    }
    return block_matrix_from_U(m, us, label);
  };
  if (dU_at && manifold != Manifold::ProductS1S2) {
    const auto du = dU_at;
    p.derivative_at = [m, du, label](double s) { return block_matrix_from_U(m, du(s), label); };
  } else if (manifold == Manifold::ProductS1S2) {
    p.derivative_at = [](double) -> Eigen::MatrixXd {
      throw std::invalid_argument("the product-manifold frame is fixed; paths are constant");
    };
  } else {
    p = OperatorPath::with_fd_derivative(s0, s1, p.matrix_at, p.label);
  }
  return p;
}

FramePath FramePath::linear(Manifold m, const Eigen::Matrix3d& U0, const Eigen::Matrix3d& U1,
                            double s0, double s1) {
  FramePath p;
  p.manifold = m;
  p.s0 = s0;
  p.s1 = s1;
  p.U_at = [U0, U1, s0, s1](double s) {
    const double t = (s - s0) / (s1 - s0);
    return Eigen::Matrix3d((1.0 - t) * U0 + t * U1);
  };
  p.dU_at = [U0, U1, s0, s1](double) { return Eigen::Matrix3d((U1 - U0) / (s1 - s0)); };
  return p;
}

FramePath FramePath::s3_singular_sweep(double s0, double s1) {
  FramePath p;
  p.manifold = Manifold::Sphere3;
  p.s0 = s0;
  p.s1 = s1;
  const double ln2 = std::log(2.0);
  auto diag = [](double s) {
    return Eigen::Vector3d(std::pow(2.0, 2.0 * s / 3.0), std::pow(2.0, -s / 3.0),
                           std::pow(2.0, -s / 3.0));
  };
  auto rot = [](double phi) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    r(1, 1) = std::cos(phi);
    r(1, 2) = -std::sin(phi);
    r(2, 1) = std::sin(phi);
    r(2, 2) = std::cos(phi);
    return r;
  };
  p.U_at = [diag, rot](double s) {
    return Eigen::Matrix3d(diag(s).asDiagonal() * rot(M_PI * s));
  };
  p.dU_at = [diag, rot, ln2](double s) {
    const Eigen::Vector3d d = diag(s);
    const Eigen::Vector3d dd(2.0 * ln2 / 3.0 * d[0], -ln2 / 3.0 * d[1], -ln2 / 3.0 * d[2]);
    Eigen::Matrix3d drot = Eigen::Matrix3d::Zero();
    drot(1, 1) = -std::sin(M_PI * s) * M_PI;
    drot(1, 2) = -std::cos(M_PI * s) * M_PI;
    drot(2, 1) = std::cos(M_PI * s) * M_PI;
    drot(2, 2) = -std::sin(M_PI * s) * M_PI;
    return Eigen::Matrix3d(dd.asDiagonal() * rot(M_PI * s) + d.asDiagonal() * drot);
  };
  return p;
}

EigenCurves eigencurves(const OperatorPath& path, int nsamples) {
  if (nsamples < 2) throw std::invalid_argument("need at least two samples");
  EigenCurves out;
  out.s = Eigen::VectorXd::LinSpaced(nsamples, path.s0, path.s1);
  const int n = static_cast<int>(path.matrix_at(path.s0).rows());
  out.curves.resize(n, nsamples);
  Eigen::MatrixXd prev_m, prev_vecs;
  Eigen::VectorXd prev_vals;
  std::vector<int> perm;  // curve row -> raw eigen index at current sample
  for (int t = 0; t < nsamples; ++t) {
    const Eigen::MatrixXd m = path.matrix_at(out.s[t]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd vals = es.eigenvalues();
    const Eigen::MatrixXd vecs = es.eigenvectors();
    if (t == 0) {
      perm.resize(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      for (int i = 0; i < n; ++i) out.curves(i, 0) = vals[i];
      prev_m = m;
      prev_vals = vals;
      prev_vecs = vecs;
      continue;
    }
    // Greedy maximal-overlap assignment between the two eigenframes.  Every
    // admissible continuation of an eigenvalue lies within the Weyl bound
    // |M(t) - M(t-1)| of its previous value, and inside a degenerate cluster
    // the eigenbasis is arbitrary, so a low pairwise overlap is accepted as
    // long as the previous vector lies in the span of its continuation
    // cluster.
    const double delta = (m - prev_m).norm() + 1e-8;
    const Eigen::MatrixXd overlap = (prev_vecs.transpose() * vecs).cwiseAbs();
    std::vector<std::tuple<double, int, int>> entries;
    entries.reserve(n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) entries.emplace_back(overlap(r, c), r, c);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    std::vector<int> match(n, -1);
    std::vector<char> used_r(n, 0), used_c(n, 0);
    int assigned = 0;
    for (const auto& [w, r, c] : entries) {
      if (used_r[r] || used_c[c]) continue;
      if (w < 0.5) {
        double cluster = 0.0;
        for (int cc = 0; cc < n; ++cc)
          if (std::abs(vals[cc] - prev_vals[r]) <= delta)
            cluster += overlap(r, cc) * overlap(r, cc);
        if (std::sqrt(cluster) < 0.5) {
          std::ostringstream os;
          os << "eigenvector overlap " << w << " below 0.5 between s = " << out.s[t - 1]
             << " and s = " << out.s[t] << " on block " << path.label << "; refine the grid";
          throw MatchingAmbiguity(os.str());
        }
      }
      match[r] = c;
      used_r[r] = used_c[c] = 1;
      if (++assigned == n) break;
    }
    // compose: curve row -> previous raw index -> current raw index
    std::vector<int> newperm(n);
    for (int row = 0; row < n; ++row) {
      newperm[row] = match[perm[row]];
      out.curves(row, t) = vals[newperm[row]];
      out.max_jump = std::max(out.max_jump, std::abs(out.curves(row, t) - out.curves(row, t - 1)));
    }
    perm = newperm;
    prev_m = m;
    prev_vals = vals;
    prev_vecs = vecs;
  }
  return out;
}

namespace {

int count_negative(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  int neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] < 0.0) ++neg;
  return neg;
}

void locate_crossings(const OperatorPath& path, double a, int na, double b, int nb, double stol,
                      std::vector<std::pair<double, int>>& out) {
  if (na == nb) return;
  if (b - a < stol) {
    out.emplace_back(0.5 * (a + b), na - nb);  // signed up-crossing count
    return;
  }
  const double mid = 0.5 * (a + b);
  const int nm = count_negative(path.matrix_at(mid));
  locate_crossings(path, a, na, mid, nm, stol, out);
  locate_crossings(path, mid, nm, b, nb, stol, out);
}

}  // namespace

CrossingReport crossing_form(const OperatorPath& path, double s_star, double kernel_tol) {
  CrossingReport rep;
  rep.s_star = s_star;
  rep.block = path.label;
  const Eigen::MatrixXd m = path.matrix_at(s_star);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<int> kernel;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i]) < kernel_tol * scale) kernel.push_back(i);
  if (kernel.empty())
    throw std::runtime_error("kernel numerically empty at the requested crossing location");
  const int k = static_cast<int>(kernel.size());
  rep.kernel_basis.resize(m.rows(), k);
  for (int i = 0; i < k; ++i) rep.kernel_basis.col(i) = es.eigenvectors().col(kernel[i]);
  const Eigen::MatrixXd dm = path.derivative_at(s_star);
  rep.gamma = rep.kernel_basis.transpose() * dm * rep.kernel_basis;
  rep.gamma = 0.5 * (rep.gamma + rep.gamma.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ge(rep.gamma);
  rep.gamma_eigs = ge.eigenvalues();
  const double dscale = std::max(1.0, dm.cwiseAbs().maxCoeff());
  int pos = 0, neg = 0;
  for (int i = 0; i < k; ++i) {
    if (std::abs(rep.gamma_eigs[i]) < 1e-8 * dscale) {
      std::ostringstream os;
      os << "degenerate crossing at s = " << s_star << " on block " << path.label
         << ": crossing form has an eigenvalue " << rep.gamma_eigs[i]
         << "; perturb the path";
      throw DegenerateCrossing(os.str());
    }
    (rep.gamma_eigs[i] > 0 ? pos : neg) += 1;
  }
  rep.signature = pos - neg;

  // finite-difference slopes matched to the crossing-form eigenvectors
  const double h = 1e-4 * std::max(1.0, path.s1 - path.s0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(path.matrix_at(s_star + h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(path.matrix_at(s_star - h));
  rep.slopes.resize(k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd w = rep.kernel_basis * ge.eigenvectors().col(i);
    auto pick = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& solver) {
      const Eigen::VectorXd ov = (solver.eigenvectors().transpose() * w).cwiseAbs();
      int best = 0;
      ov.maxCoeff(&best);
      return solver.eigenvalues()[best];
    };
    rep.slopes[i] = (pick(ep) - pick(em)) / (2 * h);
  }
  std::sort(rep.slopes.data(), rep.slopes.data() + k);
  return rep;
}

double slope_vs_gamma(const CrossingReport& report) {
  double worst = 0.0;
  for (int i = 0; i < report.gamma_eigs.size(); ++i) {
    const double g = report.gamma_eigs[i];
    worst = std::max(worst, std::abs(report.slopes[i] - g) / std::max(1.0, std::abs(g)));
  }
  return worst;
}

FlowResult spectral_flow(const OperatorPath& path, int grid) {
  FlowResult out;
  const double stol = 1e-10 * std::max(1.0, path.s1 - path.s0);
  Eigen::VectorXd s = Eigen::VectorXd::LinSpaced(grid, path.s0, path.s1);

  // endpoints must be invertible
  for (double se : {path.s0, path.s1}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(path.matrix_at(se), Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().cwiseAbs().minCoeff() < 1e-8 * scale)
      throw std::runtime_error("path endpoint operator is not invertible (frame not regular)");
  }

  std::vector<int> nneg(grid);
  for (int t = 0; t < grid; ++t) nneg[t] = count_negative(path.matrix_at(s[t]));
  std::vector<std::pair<double, int>> located;
  for (int t = 0; t + 1 < grid; ++t)
    locate_crossings(path, s[t], nneg[t], s[t + 1], nneg[t + 1], stol, located);

  for (const auto& [sstar, delta] : located) {
    CrossingReport rep = crossing_form(path, sstar);
    if (rep.signature != delta) {
      std::ostringstream os;
      os << "crossing-form signature " << rep.signature << " disagrees with the signed "
         << "eigenvalue-curve count " << delta << " at s = " << sstar << " on block "
         << path.label;
      throw std::runtime_error(os.str());
    }
    out.flow += rep.signature;
    out.curve_count += delta;
    out.crossings.push_back(std::move(rep));
  }
  return out;
}

FlowResult spectral_flow(const FramePath& path, const std::vector<BlockLabel>& labels, int grid,
                         bool include_constants) {
  FlowResult total;
  for (const BlockLabel& lab : labels) {
    const bool constant_block =
        (lab.manifold == Manifold::Torus3 && lab.k == Eigen::Vector3i::Zero()) ||
        (lab.manifold == Manifold::Sphere3 && lab.twoj == 0);
    // mean-zero reduction by default; including constants fails loudly,
    // since the zero block never has invertible endpoints
    if (constant_block && !include_constants) continue;
    FlowResult r = spectral_flow(path.block_path(lab), grid);
    total.flow += r.flow;
    total.curve_count += r.curve_count;
    for (auto& c : r.crossings) total.crossings.push_back(std::move(c));
  }
  std::sort(total.crossings.begin(), total.crossings.end(),
            [](const CrossingReport& a, const CrossingReport& b) {
              return a.s_star != b.s_star ? a.s_star < b.s_star : a.block < b.block;
            });
  return total;
}

double path_neglected_bound(const FramePath& path, const SweepCutoffs& cut, int nsamples) {
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < nsamples; ++t) {
    const double s = path.s0 + (path.s1 - path.s0) * t / (nsamples - 1.0);
    worst = std::min(worst, neglected_block_bound(path.frame_at(s), cut));
  }
  return worst;
}

}  // namespace fueterlab
