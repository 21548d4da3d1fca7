#include "fueterlab/ample.hpp"

#include <cmath>
#include <stdexcept>

namespace fueterlab {

namespace {

// S(u, v) = sum_{i<j} u_i v_j S_ij with S_ji = -S_ij
Eigen::Vector3d s_eval(const AmpleData& d, const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  const Eigen::Vector3d& s23 = d.S[0];
  const Eigen::Vector3d& s31 = d.S[1];
  const Eigen::Vector3d& s12 = d.S[2];
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  out += (u[0] * v[1] - u[1] * v[0]) * s12;
  out += (u[1] * v[2] - u[2] * v[1]) * s23;
  out += (u[0] * v[2] - u[2] * v[0]) * (-s31);  // S_13 = -S_31
  return out;
}

Eigen::Vector3d l_eval(const AmpleData& d, const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out += u[i] * v[j] * d.L[i][j];
  return out;
}

double data_scale(const AmpleData& d) {
  double s = 1.0;
  for (const auto& v : d.S) s = std::max(s, v.norm());
  for (const auto& row : d.L)
    for (const auto& v : row) s = std::max(s, v.norm());
  return s;
}

}  // namespace

std::array<Eigen::Vector3d, 3> AmpleData::tau() const {
  return {S[0] + L[1][2] - L[2][1],   // S23 + L23 - L32
          S[1] + L[2][0] - L[0][2],   // S31 + L31 - L13
          S[2] + L[0][1] - L[1][0]};  // S12 + L12 - L21
}

AmpleData AmpleData::random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  AmpleData d;
  auto rnd = [&] { return Eigen::Vector3d(g(rng), g(rng), g(rng)); };
  for (auto& v : d.S) v = rnd();
  for (auto& row : d.L)
    for (auto& v : row) v = rnd();
  return d;
}

int is_nondegenerate(const AmpleData& d) {
  const auto t = d.tau();
  Eigen::Matrix3d m;
  for (int c = 0; c < 3; ++c) m.col(c) = t[c];
  const double det = m.determinant();
  const double scale = data_scale(d);
  if (std::abs(det) <= 1e-12 * scale * scale * scale) return 0;
  return det > 0 ? 1 : -1;
}

bool nondegenerate_oracle(const AmpleData& d) {
  // assemble tau(u, v) = S(u,v) + L(u)v - L(v)u on basis pairs and test the
  // span of the three values
  auto tau_uv = [&](const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
    return Eigen::Vector3d(s_eval(d, u, v) + l_eval(d, u, v) - l_eval(d, v, u));
  };
  Eigen::Matrix3d m;
  m.col(0) = tau_uv(Eigen::Vector3d::Unit(1), Eigen::Vector3d::Unit(2));
  m.col(1) = tau_uv(Eigen::Vector3d::Unit(2), Eigen::Vector3d::Unit(0));
  m.col(2) = tau_uv(Eigen::Vector3d::Unit(0), Eigen::Vector3d::Unit(1));
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  const double scale = std::max(1e-300, svd.singularValues()(0));
  return svd.singularValues()(2) > 1e-10 * scale &&
         svd.singularValues()(0) > 1e-12 * data_scale(d);
}

std::pair<AmpleData, AmpleData> convex_decompose(const AmpleData& d, int target_sign) {
  if (target_sign != 1 && target_sign != -1)
    throw std::invalid_argument("target sign must be +1 or -1");
  const auto t = d.tau();
  const Eigen::Vector3d a = t[0];  // fixed by the constraint rows
  if (a.norm() <= 1e-12 * data_scale(d))
    throw std::domain_error(
        "S23 + L23 - L32 = 0: the constraint slice misses the nondegeneracy locus");
  // complete a/|a| to a positively oriented orthonormal triple (a, x, y)
  const Eigen::Vector3d ahat = a / a.norm();
  int drop = 0;
  ahat.cwiseAbs().minCoeff(&drop);
  Eigen::Vector3d x = Eigen::Vector3d::Unit(drop) - ahat[drop] * ahat;
  x /= x.norm();
  Eigen::Vector3d y = ahat.cross(x);  // det(ahat, x, y) = +1
  if (target_sign < 0) std::swap(x, y);

  auto build = [&](double tt, double sgn) {
    AmpleData out = d;
    out.L[0][1] = d.L[0][1] + sgn * tt * y;  // L'_{12} = L_{12} + t y
    out.L[0][2] = d.L[0][2] - sgn * tt * x;  // L'_{13} = L_{13} - t x
    return out;
  };
  auto det_of = [&](const AmpleData& dd) {
    const auto tv = dd.tau();
    Eigen::Matrix3d m;
    for (int c = 0; c < 3; ++c) m.col(c) = tv[c];
    return m.determinant();
  };
  // accept t once both determinants clear the margin and sit past the
  // vertex of their quadratics, so enlarging t can only grow the margin
  double tt = 1.0;
  for (int it = 0; it < 200; ++it) {
    const AmpleData lp = build(tt, 1.0);
    const AmpleData lm = build(tt, -1.0);
    const double dp = target_sign * det_of(lp);
    const double dm = target_sign * det_of(lm);
    const double dp2 = target_sign * det_of(build(2 * tt, 1.0));
    const double dm2 = target_sign * det_of(build(2 * tt, -1.0));
    if (dp >= 1.0 && dm >= 1.0 && dp2 >= dp && dm2 >= dm) return {lp, lm};
    tt *= 2.0;
  }
  throw std::runtime_error("convex decomposition did not clear its margin");
}

AmpleData normalize_to_plane(const AmpleData& d, const Eigen::Vector3d& normal) {
  if (normal.norm() < 1e-14) throw std::invalid_argument("plane normal must be nonzero");
  const Eigen::Vector3d n = normal / normal.norm();
  int drop = 0;
  n.cwiseAbs().minCoeff(&drop);
  Eigen::Vector3d x = Eigen::Vector3d::Unit(drop) - n[drop] * n;
  x /= x.norm();
  Eigen::Matrix3d r;
  r.col(0) = n;
  r.col(1) = x;
  r.col(2) = n.cross(x);
  AmpleData out;
  auto s_new = [&](int i, int j) {
    return Eigen::Vector3d(r.transpose() * s_eval(d, r.col(i), r.col(j)));
  };
  out.S[0] = s_new(1, 2);
  out.S[1] = s_new(2, 0);
  out.S[2] = s_new(0, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.L[i][j] = r.transpose() * l_eval(d, r.col(i), r.col(j));
  return out;
}

}  // namespace fueterlab
