#include "fueterlab/frame.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fueterlab/quadrature.hpp"

namespace fueterlab {

using json = nlohmann::json;

std::string manifold_name(Manifold m) {
  switch (m) {
    case Manifold::Torus3: return "Torus3";
    case Manifold::Sphere3: return "Sphere3";
    default: return "ProductS1S2";
  }
}

Manifold manifold_from_name(const std::string& s) {
  if (s == "Torus3") return Manifold::Torus3;
  if (s == "Sphere3") return Manifold::Sphere3;
  if (s == "ProductS1S2") return Manifold::ProductS1S2;
  throw std::invalid_argument("unknown manifold: " + s);
}

FrameSpec::FrameSpec(Manifold m, const Eigen::Matrix3d& U) : manifold_(m), u_(U) {
  if (u_.determinant() <= 0.0) throw std::invalid_argument("frame matrix must have det U > 0");
  if (m == Manifold::ProductS1S2 && !u_.isApprox(Eigen::Matrix3d::Identity(), 1e-14))
    throw std::invalid_argument("the S1xS2 catalog frame is fixed; U must be the identity");
}

FrameSpec FrameSpec::from_json(const std::string& text) {
  json j = json::parse(text);
  const Manifold m = manifold_from_name(j.at("manifold").get<std::string>());
  Eigen::Matrix3d u = Eigen::Matrix3d::Identity();
  if (j.contains("U")) {
    const auto v = j.at("U").get<std::vector<double>>();
    if (v.size() != 9) throw std::invalid_argument("frame U must hold 9 reals, row-major");
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) u(r, c) = v[3 * r + c];
  }
  return FrameSpec(m, u);
}

std::string FrameSpec::to_json() const {
  json j;
  j["manifold"] = manifold_name(manifold_);
  std::vector<double> v(9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) v[3 * r + c] = u_(r, c);
  j["U"] = v;
  return j.dump();
}

ManifoldPoint make_point_t3(const Eigen::Vector3d& y) {
  Eigen::Vector3d w = y;
  for (int a = 0; a < 3; ++a) w[a] -= std::floor(w[a]);
  return {Manifold::Torus3, {w[0], w[1], w[2], 0.0}};
}

ManifoldPoint make_point_s3(const Eigen::Vector4d& y) {
  if (std::abs(y.norm() - 1.0) > 1e-12) throw std::invalid_argument("S3 point must be unit");
  return {Manifold::Sphere3, y};
}

ManifoldPoint make_point_s1s2(double theta, const Eigen::Vector3d& y) {
  if (std::abs(y.norm() - 1.0) > 1e-12) throw std::invalid_argument("S2 factor must be unit");
  theta = std::fmod(theta, 2.0 * M_PI);
  if (theta < 0) theta += 2.0 * M_PI;
  return {Manifold::ProductS1S2, {theta, y[0], y[1], y[2]}};
}

void check_point(const FrameSpec& f, const ManifoldPoint& p) {
  if (f.manifold() != p.manifold)
    throw std::invalid_argument("point lives on " + manifold_name(p.manifold) + ", frame on " +
                                manifold_name(f.manifold()));
}

ManifoldPoint random_point(Manifold m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (m) {
    case Manifold::Torus3:
      return make_point_t3({unif(rng), unif(rng), unif(rng)});
    case Manifold::Sphere3: {
      Eigen::Vector4d v;
      do {
        for (int a = 0; a < 4; ++a) v[a] = gauss(rng);
      } while (v.norm() < 1e-6);
      return make_point_s3(v / v.norm());
    }
    default: {
      Eigen::Vector3d v;
      do {
        for (int a = 0; a < 3; ++a) v[a] = gauss(rng);
      } while (v.norm() < 1e-6);
      return make_point_s1s2(2.0 * M_PI * unif(rng), v / v.norm());
    }
  }
}

static Eigen::Vector3d cross3(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a.cross(b);
}

std::array<TangentVec, 3> frame_vectors(const FrameSpec& f, const ManifoldPoint& p) {
  check_point(f, p);
  std::array<TangentVec, 3> v;
  switch (f.manifold()) {
    case Manifold::Torus3:
      for (int i = 0; i < 3; ++i) v[i] = {f.U()(0, i), f.U()(1, i), f.U()(2, i), 0.0};
      break;
    case Manifold::Sphere3: {
      const Quat y = Quat::from_vec(p.x);
      for (int i = 0; i < 3; ++i) {
        const Quat u{0.0, f.U()(0, i), f.U()(1, i), f.U()(2, i)};
        v[i] = qmul(u, y).vec();
      }
      break;
    }
    default: {
      const Eigen::Vector3d y = p.x.tail<3>();
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d rot = cross3(Eigen::Vector3d::Unit(i), y);
        v[i] = {y[i], rot[0], rot[1], rot[2]};
      }
      break;
    }
  }
  return v;
}

std::array<CoVec, 3> dual_coframe(const FrameSpec& f, const ManifoldPoint& p) {
  check_point(f, p);
  std::array<CoVec, 3> a;
  switch (f.manifold()) {
    case Manifold::Torus3: {
      const Eigen::Matrix3d inv = f.U().inverse();
      for (int i = 0; i < 3; ++i) a[i] = {inv(i, 0), inv(i, 1), inv(i, 2), 0.0};
      break;
    }
    case Manifold::Sphere3: {
      const auto v = frame_vectors(f, p);
      Eigen::Matrix4d m;
      m.col(0) = p.x;
      for (int i = 0; i < 3; ++i) m.col(i + 1) = v[i];
      const Eigen::Matrix4d inv = m.inverse();
      for (int i = 0; i < 3; ++i) a[i] = inv.row(i + 1);
      break;
    }
    default: {
      const Eigen::Vector3d y = p.x.tail<3>();
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d rot = cross3(Eigen::Vector3d::Unit(i), y);
        a[i] = {y[i], rot[0], rot[1], rot[2]};
      }
      break;
    }
  }
  return a;
}

// dvol_{S^2} contracted with ambient vectors at (possibly non-unit) y.
static double s2_area_form(const Eigen::Vector3d& y, const Eigen::Vector3d& a,
                           const Eigen::Vector3d& b) {
  Eigen::Matrix3d m;
  m.col(0) = y / y.norm();
  m.col(1) = a;
  m.col(2) = b;
  return m.determinant();
}

double volume_density(const FrameSpec& f, const ManifoldPoint& p) {
  check_point(f, p);
  const auto v = frame_vectors(f, p);
  switch (f.manifold()) {
    case Manifold::Torus3:
      return f.U().determinant();
    case Manifold::Sphere3: {
      Eigen::Matrix4d m;
      m.col(0) = p.x;
      for (int i = 0; i < 3; ++i) m.col(i + 1) = v[i];
      return m.determinant();
    }
    default: {
      const Eigen::Vector3d y = p.x.tail<3>();
      double s = 0.0;
      // (dtheta ^ dvol_{S2})(v1, v2, v3), cyclic expansion over the theta slot
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        s += v[i][0] * s2_area_form(y, v[j].tail<3>(), v[k].tail<3>());
      }
      return s;
    }
  }
}

static std::vector<ManifoldPoint> test_grid(Manifold m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ManifoldPoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(random_point(m, rng));
  return pts;
}

bool is_normal(const FrameSpec& f) {
  for (const auto& p : default_quadrature(f.manifold(), 8).nodes)
    if (std::abs(volume_density(f, p) - 1.0) > 1e-10) return false;
  return true;
}

std::array<TangentVec, 3> bracket_fields(const FrameSpec& f, const ManifoldPoint& p) {
  check_point(f, p);
  std::array<TangentVec, 3> w;
  switch (f.manifold()) {
    case Manifold::Torus3:
      for (int i = 0; i < 3; ++i) w[i].setZero();
      break;
    case Manifold::Sphere3: {
      const Quat y = Quat::from_vec(p.x);
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const Quat uj{0.0, f.U()(0, j), f.U()(1, j), f.U()(2, j)};
        const Quat uk{0.0, f.U()(0, k), f.U()(1, k), f.U()(2, k)};
        const Quat gen = qmul(uj, uk) - qmul(uk, uj);
        w[i] = qmul(gen, y).vec();
      }
      break;
    }
    default: {
      const Eigen::Vector3d y = p.x.tail<3>();
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d rot = cross3(Eigen::Vector3d::Unit(i), y);
        w[i] = {2.0 * y[i], rot[0], rot[1], rot[2]};
      }
      break;
    }
  }
  return w;
}

// Retraction back onto the manifold from ambient chart coordinates.
static ManifoldPoint retract(Manifold m, const Eigen::Vector4d& x) {
  switch (m) {
    case Manifold::Torus3: {
      Eigen::Vector3d y = x.head<3>();
      for (int a = 0; a < 3; ++a) y[a] -= std::floor(y[a]);
      return {m, {y[0], y[1], y[2], 0.0}};
    }
    case Manifold::Sphere3:
      return {m, x / x.norm()};
    default: {
      Eigen::Vector4d w = x;
      w.tail<3>() /= w.tail<3>().norm();
      return {m, w};
    }
  }
}

static std::array<TangentVec, 3> bracket_central(const FrameSpec& f, const ManifoldPoint& p,
                                                 double h) {
  const auto v = frame_vectors(f, p);
  auto dfield = [&](int field, const TangentVec& dir) -> TangentVec {
    const ManifoldPoint pp = retract(f.manifold(), p.x + h * dir);
    const ManifoldPoint pm = retract(f.manifold(), p.x - h * dir);
    return (frame_vectors(f, pp)[field] - frame_vectors(f, pm)[field]) / (2.0 * h);
  };
  std::array<TangentVec, 3> w;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    // paper bracket [v_j, v_k] = Dv_j[v_k] - Dv_k[v_j]
    w[i] = dfield(j, v[k]) - dfield(k, v[j]);
  }
  return w;
}

std::array<TangentVec, 3> bracket_oracle(const FrameSpec& f, const ManifoldPoint& p, double h) {
  if (h <= 0.0) throw std::invalid_argument("bracket oracle needs h > 0");
  // second-order differences must contract by about 4 under step halving;
  // when they stop contracting the step sits outside the convergent regime
  const auto a1 = bracket_central(f, p, h);
  const auto a2 = bracket_central(f, p, 0.5 * h);
  const auto a3 = bracket_central(f, p, 0.25 * h);
  double e1 = 0.0, e2 = 0.0, scale = 1.0;
  for (int i = 0; i < 3; ++i) {
    e1 = std::max(e1, (a1[i] - a2[i]).cwiseAbs().maxCoeff());
    e2 = std::max(e2, (a2[i] - a3[i]).cwiseAbs().maxCoeff());
    scale = std::max(scale, a3[i].cwiseAbs().maxCoeff());
  }
  if (e1 > 1e-9 * scale && e2 > 0.6 * e1) {
    std::ostringstream os;
    os << "bracket oracle did not converge at h = " << h << " (step-halving residuals " << e1
       << ", " << e2 << ")";
    throw std::runtime_error(os.str());
  }
  return a2;
}

// Components of the 2-form iota(v_i) nu in ambient coordinates, where nu is a
// smooth extension of dvol off the manifold.
namespace {

struct AmbientForm {
  Manifold m;
  const FrameSpec* f;
  int field;

  // ambient axes: Torus3 uses 0..2; spheres use 0..3
  double component(const Eigen::Vector4d& x, int a, int b) const {
    const ManifoldPoint q = retract(m, x);
    const TangentVec v = frame_vectors(*f, q)[field];
    switch (m) {
      case Manifold::Torus3: {
        Eigen::Matrix3d d;
        d.col(0) = v.head<3>();
        d.col(1) = Eigen::Vector3d::Unit(a);
        d.col(2) = Eigen::Vector3d::Unit(b);
        return d.determinant();
      }
      case Manifold::Sphere3: {
        Eigen::Matrix4d d;
        d.col(0) = x / x.norm();
        d.col(1) = v;
        d.col(2) = Eigen::Vector4d::Unit(a);
        d.col(3) = Eigen::Vector4d::Unit(b);
        return d.determinant();
      }
      default: {
        // nu = dtheta ^ mu, mu the degree-0 extension of dvol_{S2}
        const Eigen::Vector3d y = x.tail<3>();
        auto mu = [&](const Eigen::Vector4d& s, const Eigen::Vector4d& t) {
          return s2_area_form(y, s.tail<3>(), t.tail<3>());
        };
        const Eigen::Vector4d ea = Eigen::Vector4d::Unit(a);
        const Eigen::Vector4d eb = Eigen::Vector4d::Unit(b);
        return v[0] * mu(ea, eb) - ea[0] * mu(v, eb) + eb[0] * mu(v, ea);
      }
    }
  }
};

}  // namespace

double divergence_residual(const FrameSpec& f) {
  const int dim = f.manifold() == Manifold::Torus3 ? 3 : 4;
  const double h = 1e-5;
  double worst = 0.0;
  const auto pts = test_grid(f.manifold(), 40, 0xd1fULL);
  for (const auto& p : pts) {
    const auto v = frame_vectors(f, p);
    const double lambda = volume_density(f, p);
    for (int field = 0; field < 3; ++field) {
      AmbientForm form{f.manifold(), &f, field};
      // dF_{abc} = d_a F_{bc} - d_b F_{ac} + d_c F_{ab}, central differences
      auto dcomp = [&](int a, int b, int c) {
        auto pd = [&](int axis, int r, int s) {
          Eigen::Vector4d xp = p.x, xm = p.x;
          xp[axis] += h;
          xm[axis] -= h;
          return (form.component(xp, r, s) - form.component(xm, r, s)) / (2.0 * h);
        };
        return pd(a, b, c) - pd(b, a, c) + pd(c, a, b);
      };
      double val = 0.0;
      for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
          for (int c = b + 1; c < dim; ++c) {
            Eigen::Matrix3d minor;
            for (int col = 0; col < 3; ++col) {
              minor(0, col) = v[col][a];
              minor(1, col) = v[col][b];
              minor(2, col) = v[col][c];
            }
            val += dcomp(a, b, c) * minor.determinant();
          }
      worst = std::max(worst, std::abs(val / lambda));
    }
  }
  return worst;
}

double metric_eval(const FrameSpec& f, const ManifoldPoint& p, const TangentVec& a,
                   const TangentVec& b) {
  const auto alpha = dual_coframe(f, p);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += alpha[i].dot(a) * alpha[i].dot(b);
  return s;
}

double spinc_lambda(const FrameSpec& f, const ManifoldPoint& p) {
  const auto alpha = dual_coframe(f, p);
  const auto w = bracket_fields(f, p);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += alpha[i].dot(w[i]);
  return 0.25 * s;
}

FrameSpec standard_t3_frame() { return FrameSpec(Manifold::Torus3, Eigen::Matrix3d::Identity()); }
FrameSpec standard_s3_frame() { return FrameSpec(Manifold::Sphere3, Eigen::Matrix3d::Identity()); }

FrameSpec singular_s3_frame() {
  Eigen::Matrix3d u = Eigen::Matrix3d::Zero();
  u(0, 0) = std::pow(2.0, 2.0 / 3.0);
  u(1, 1) = -std::pow(2.0, -1.0 / 3.0);
  u(2, 2) = -std::pow(2.0, -1.0 / 3.0);
  return FrameSpec(Manifold::Sphere3, u);
}

FrameSpec catalog_s1s2_frame() {
  return FrameSpec(Manifold::ProductS1S2, Eigen::Matrix3d::Identity());
}

Eigen::Matrix3d random_glplus(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    Eigen::Matrix3d u;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) u(r, c) = gauss(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(u.transpose() * u);
    if (es.eigenvalues()(0) < 0.04) continue;  // sigma_min >= 0.2
    if (u.determinant() < 0) u.col(0).swap(u.col(1));
    return u;
  }
}

}  // namespace fueterlab
