#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fueterlab/field.hpp"
#include "fueterlab/spectral.hpp"

using namespace fueterlab;

namespace {

struct Setup {
  FrameSpec frame;
  Basis basis;
  QuadratureRule rule;
};

std::vector<Setup> setups(std::mt19937_64& rng) {
  std::vector<Setup> out;
  out.push_back({FrameSpec(Manifold::Torus3, random_glplus(rng)), Basis::torus(2),
                 t3_quadrature(5)});
  out.push_back({FrameSpec(Manifold::Sphere3, random_glplus(rng)), Basis::sphere(4),
                 s3_quadrature(8)});
  out.push_back({catalog_s1s2_frame(), Basis::product(4, 2), s1s2_quadrature(6, 10)});
  return out;
}

ManifoldPoint retract_pt(Manifold m, Eigen::Vector4d x) {
  switch (m) {
    case Manifold::Torus3: {
      for (int a = 0; a < 3; ++a) x[a] -= std::floor(x[a]);
      return {m, {x[0], x[1], x[2], 0.0}};
    }
    case Manifold::Sphere3:
      return {m, x / x.norm()};
    default:
      x.tail<3>() /= x.tail<3>().norm();
      return {m, x};
  }
}

}  // namespace

TEST_CASE("quadrature rules: volume and orthonormality") {
  std::mt19937_64 rng(31);
  const double vols[3] = {1.0, 2 * M_PI * M_PI, 8 * M_PI * M_PI};
  int idx = 0;
  for (auto& s : setups(rng)) {
    CHECK(s.rule.volume() == doctest::Approx(vols[idx]).epsilon(1e-12));
    const int n = s.basis.size();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (size_t q = 0; q < s.rule.nodes.size(); ++q) {
      const Eigen::VectorXd v = s.basis.eval(s.rule.nodes[q]);
      gram += s.rule.weights[static_cast<int>(q)] * v * v.transpose();
    }
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    ++idx;
  }
}

TEST_CASE("transform round trip reproduces coefficients") {
  std::mt19937_64 rng(33);
  for (auto& s : setups(rng)) {
    const FieldExpansion g = FieldExpansion::random(s.basis, 4, rng, false);
    const FieldExpansion back = FieldExpansion::project(
        s.basis, 4, [&](const ManifoldPoint& p) { return g.eval(p); }, s.rule);
    CHECK((back.coeff - g.coeff).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("galerkin derivatives match pointwise finite differences") {
  std::mt19937_64 rng(35);
  const double h = 1e-5;
  for (auto& s : setups(rng)) {
    const FieldExpansion g = FieldExpansion::random(s.basis, 4, rng, false);
    // on the product manifold keep degree headroom so the derivative is exact
    FieldExpansion gg = g;
    if (s.basis.manifold() == Manifold::ProductS1S2) {
      const int nsh = (s.basis.lmax() + 1) * (s.basis.lmax() + 1);
      const int cut = s.basis.lmax() * s.basis.lmax();
      for (int t = 0; t < 2 * s.basis.mmax() + 1; ++t)
        gg.coeff.middleRows(t * nsh + cut, nsh - cut).setZero();
    }
    for (int it = 0; it < 6; ++it) {
      const ManifoldPoint p = random_point(s.frame.manifold(), rng);
      const auto v = frame_vectors(s.frame, p);
      for (int i = 0; i < 3; ++i) {
        const FieldExpansion dg = gg.deriv(s.frame, i);
        const Eigen::VectorXd fd =
            (gg.eval(retract_pt(p.manifold, p.x + h * v[i])) -
             gg.eval(retract_pt(p.manifold, p.x - h * v[i]))) /
            (2 * h);
        const Eigen::VectorXd an = dg.eval(p);
        CHECK((fd - an).cwiseAbs().maxCoeff() < 2e-6 * (1.0 + an.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("apply_fueter anchor cases") {
  std::mt19937_64 rng(37);
  // constants map to zero on every manifold
  for (auto& s : setups(rng)) {
    FieldExpansion c{s.basis, Eigen::MatrixXd::Zero(s.basis.size(), 4)};
    c.coeff(0, 0) = 1.3;
    c.coeff(0, 2) = -0.4;
    const FieldExpansion out = apply_fueter(s.frame, c);
    CHECK(out.coeff.cwiseAbs().maxCoeff() < 1e-13);
  }

  // S3: g(y) = y is the -3 eigenfunction of the standard frame
  {
    const FrameSpec f = standard_s3_frame();
    const Basis b = Basis::sphere(2);
    const QuadratureRule rule = s3_quadrature(6);
    const FieldExpansion g = FieldExpansion::project(
        b, 4, [](const ManifoldPoint& p) { return Eigen::VectorXd(p.x); }, rule);
    CHECK(g.norm2() == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-12));  // |y|^2 integrates to vol
    const FieldExpansion dg = apply_fueter(f, g);
    CHECK((dg.coeff + 3.0 * g.coeff).cwiseAbs().maxCoeff() < 1e-11);
    // and pointwise
    const ManifoldPoint p = random_point(Manifold::Sphere3, rng);
    CHECK((dg.eval(p) + 3.0 * Eigen::VectorXd(p.x)).cwiseAbs().maxCoeff() < 1e-11);
  }

  // T3: g = cos(2 pi y1) * 1 maps to -2 pi sin(2 pi y1) * i
  {
    const FrameSpec f = standard_t3_frame();
    const Basis b = Basis::torus(1);
    FieldExpansion g{b, Eigen::MatrixXd::Zero(b.size(), 4)};
    const QuadratureRule rule = t3_quadrature(3);
    g = FieldExpansion::project(
        b, 4,
        [](const ManifoldPoint& p) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
          v[0] = std::cos(2 * M_PI * p.x[0]);
          return v;
        },
        rule);
    const FieldExpansion dg = apply_fueter(f, g);
    for (int it = 0; it < 5; ++it) {
      const ManifoldPoint p = random_point(Manifold::Torus3, rng);
      Eigen::VectorXd expect = Eigen::VectorXd::Zero(4);
      expect[1] = -2 * M_PI * std::sin(2 * M_PI * p.x[0]);
      CHECK((dg.eval(p) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  // S1xS2: support at the degree cut is rejected
  {
    const Basis b = Basis::product(3, 1);
    FieldExpansion g = FieldExpansion::random(b, 4, rng, false);
    CHECK_THROWS_AS(apply_fueter(catalog_s1s2_frame(), g), std::domain_error);
  }
}

TEST_CASE("block kernel vector of the singular frame is f(y) = y") {
  // the j = 1/2 coefficient block of the expansion equals the spectral block,
  // so the projected inclusion map must be annihilated by it
  const FrameSpec f = singular_s3_frame();
  const Basis b = Basis::sphere(1);
  const QuadratureRule rule = s3_quadrature(4);
  const FieldExpansion g = FieldExpansion::project(
      b, 4, [](const ManifoldPoint& p) { return Eigen::VectorXd(p.x); }, rule);
  const FieldExpansion dg = apply_fueter(f, g);
  CHECK(dg.coeff.cwiseAbs().maxCoeff() < 1e-12);
}
