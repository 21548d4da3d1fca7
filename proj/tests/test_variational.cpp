#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fueterlab/variational.hpp"

using namespace fueterlab;

namespace {

// product-manifold random field with degree headroom
FieldExpansion random_product_field(const Basis& b, std::mt19937_64& rng, bool mean_zero) {
  FieldExpansion g = FieldExpansion::random(b, 4, rng, mean_zero);
  const int nsh = (b.lmax() + 1) * (b.lmax() + 1);
  const int cut = b.lmax() * b.lmax();
  for (int t = 0; t < 2 * b.mmax() + 1; ++t)
    g.coeff.middleRows(t * nsh + cut, nsh - cut).setZero();
  return g;
}

const double kS3Vol = 2 * M_PI * M_PI;

}  // namespace

TEST_CASE("energy identity: hand case g(y) = y on the standard sphere frame") {
  const FrameSpec f = standard_s3_frame();
  const Basis b = Basis::sphere(1);
  const FieldExpansion g = FieldExpansion::project(
      b, 4, [](const ManifoldPoint& p) { return Eigen::VectorXd(p.x); }, s3_quadrature(4));
  const EnergyBreakdown e = energy_identity(f, g);
  CHECK(e.dirichlet == doctest::Approx(0.5 * 3 * kS3Vol).epsilon(1e-12));  // = 3 pi^2
  CHECK(e.fueter == doctest::Approx(0.5 * 9 * kS3Vol).epsilon(1e-12));
  CHECK(e.pullback == doctest::Approx(3 * kS3Vol).epsilon(1e-11));
  CHECK(e.residual() < 1e-9);
}

TEST_CASE("energy identity on random band-limited fields") {
  std::mt19937_64 rng(41);
  // constants give 0 = 0
  for (const FrameSpec& f : {standard_t3_frame(), standard_s3_frame(), catalog_s1s2_frame()}) {
    Basis b = f.manifold() == Manifold::Torus3
                  ? Basis::torus(1)
                  : (f.manifold() == Manifold::Sphere3 ? Basis::sphere(1) : Basis::product(2, 1));
    FieldExpansion c{b, Eigen::MatrixXd::Zero(b.size(), 4)};
    c.coeff(0, 1) = 2.0;
    const EnergyBreakdown e = energy_identity(f, c);
    CHECK(e.dirichlet < 1e-20);
    CHECK(e.residual() < 1e-14);
  }

  std::vector<std::pair<FrameSpec, Basis>> cases;
  cases.emplace_back(FrameSpec(Manifold::Torus3, random_glplus(rng)), Basis::torus(2));
  cases.emplace_back(standard_s3_frame(), Basis::sphere(3));
  cases.emplace_back(FrameSpec(Manifold::Sphere3, random_glplus(rng)), Basis::sphere(2));
  cases.emplace_back(singular_s3_frame(), Basis::sphere(2));
  for (auto& [f, b] : cases) {
    for (int it = 0; it < 10; ++it) {
      const FieldExpansion g = FieldExpansion::random(b, 4, rng, false);
      CHECK(energy_identity_residual(f, g) < 1e-8);
    }
  }
  // torus: the coframe is closed, so the pullback term integrates to zero
  const FrameSpec t3(Manifold::Torus3, random_glplus(rng));
  const Basis tb = Basis::torus(2);
  for (int it = 0; it < 5; ++it) {
    const FieldExpansion g = FieldExpansion::random(tb, 4, rng, false);
    CHECK(std::abs(energy_identity(t3, g).pullback) < 1e-9);
  }
  // product manifold
  const Basis pb = Basis::product(4, 2);
  for (int it = 0; it < 10; ++it) {
    const FieldExpansion g = random_product_field(pb, rng, false);
    CHECK(energy_identity_residual(catalog_s1s2_frame(), g) < 1e-8);
  }
  // insufficient quadrature headroom is detected
  const FieldExpansion full = FieldExpansion::random(pb, 4, rng, false);
  CHECK_THROWS_AS(energy_identity_residual(catalog_s1s2_frame(), full), std::domain_error);
}

TEST_CASE("action functional: two displays agree where the primitive exists") {
  std::mt19937_64 rng(43);
  const FrameSpec s3 = standard_s3_frame();
  const Basis b = Basis::sphere(2);
  const FieldExpansion g = FieldExpansion::project(
      b, 4, [](const ManifoldPoint& p) { return Eigen::VectorXd(p.x); }, s3_quadrature(6));
  const ActionValue a = action_value(s3, g);
  CHECK(a.inner_form == doctest::Approx(-3 * M_PI * M_PI).epsilon(1e-12));
  REQUIRE(a.beta_form.has_value());
  CHECK(*a.beta_form == doctest::Approx(-3 * M_PI * M_PI).epsilon(1e-10));

  // constants have zero action
  FieldExpansion c{b, Eigen::MatrixXd::Zero(b.size(), 4)};
  c.coeff(0, 3) = 1.0;
  const ActionValue ac = action_value(s3, c);
  CHECK(ac.inner_form == 0.0);
  CHECK(std::abs(*ac.beta_form) < 1e-13);

  for (int it = 0; it < 10; ++it) {
    const FieldExpansion h = FieldExpansion::random(b, 4, rng, false);
    const ActionValue ah = action_value(s3, h);
    REQUIRE(ah.beta_form.has_value());
    CHECK(std::abs(ah.inner_form - *ah.beta_form) < 1e-8);
  }

  // the torus has no primitive for iota(v_i) dvol
  const FrameSpec t3 = standard_t3_frame();
  const FieldExpansion gt = FieldExpansion::random(Basis::torus(1), 4, rng, false);
  CHECK(!action_value(t3, gt).beta_form.has_value());

  // the product manifold display is also a primitive
  const Basis pb = Basis::product(3, 1);
  for (int it = 0; it < 5; ++it) {
    const FieldExpansion h = random_product_field(pb, rng, false);
    const ActionValue ah = action_value(catalog_s1s2_frame(), h);
    REQUIRE(ah.beta_form.has_value());
    CHECK(std::abs(ah.inner_form - *ah.beta_form) < 1e-8);
  }
}

TEST_CASE("isoperimetric inequality on loops") {
  // anchors at y = e1
  const Eigen::Vector3d e1(1, 0, 0);
  {
    // f(theta) = e^{-i theta}: equality with both sides pi
    FourierLoop f;
    f.coeff = Eigen::MatrixXd::Zero(3, 4);
    f.coeff(1, 0) = 1.0;   // cos * 1
    f.coeff(2, 1) = -1.0;  // -sin * i
    const auto [lhs, rhs] = isoperimetric_check(e1, f);
    CHECK(lhs == doctest::Approx(M_PI).epsilon(1e-13));
    CHECK(rhs == doctest::Approx(M_PI).epsilon(1e-13));
  }
  {
    // f(theta) = e^{+i theta}: strict inequality, lhs = -pi
    FourierLoop f;
    f.coeff = Eigen::MatrixXd::Zero(3, 4);
    f.coeff(1, 0) = 1.0;
    f.coeff(2, 1) = 1.0;
    const auto [lhs, rhs] = isoperimetric_check(e1, f);
    CHECK(lhs == doctest::Approx(-M_PI).epsilon(1e-13));
    CHECK(rhs == doctest::Approx(M_PI).epsilon(1e-13));
  }
  {
    FourierLoop f;
    f.coeff = Eigen::MatrixXd::Zero(1, 4);
    f.coeff(0, 2) = 3.0;
    const auto [lhs, rhs] = isoperimetric_check(e1, f);
    CHECK(lhs == 0.0);
    CHECK(rhs == 0.0);
  }

  // property: 100 random loops at 20 random sphere points, plus the sharp loop
  std::mt19937_64 rng(45);
  std::normal_distribution<double> gauss;
  for (int py = 0; py < 20; ++py) {
    Eigen::Vector3d y{gauss(rng), gauss(rng), gauss(rng)};
    y /= y.norm();
    for (int it = 0; it < 5; ++it) {
      const FourierLoop f = FourierLoop::random(8, rng);
      const auto [lhs, rhs] = isoperimetric_check(y, f);
      CHECK(lhs <= rhs + 1e-12 * (1 + std::abs(rhs)));
    }
    const Quat q0{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const auto [le, re] = isoperimetric_check(y, FourierLoop::extremal(y, q0));
    CHECK(std::abs(le - re) < 1e-10 * (1 + std::abs(re)));
    CHECK(le == doctest::Approx(M_PI * q0.norm2()).epsilon(1e-12));
  }
}

TEST_CASE("product-manifold energy display with the loop-action term") {
  std::mt19937_64 rng(47);
  const Basis b = Basis::product(5, 2);
  // constants
  FieldExpansion c{b, Eigen::MatrixXd::Zero(b.size(), 4)};
  c.coeff(0, 0) = 1.0;
  CHECK(s1s2_identity_residual(c) < 1e-13);
  for (int it = 0; it < 10; ++it) {
    const FieldExpansion g = random_product_field(b, rng, false);
    CHECK(s1s2_identity_residual(g) < 1e-7);
  }
  // fields pulled back from the circle: |dg| = |d_theta g| and the chain
  // collapses to equalities
  const FrameSpec f = catalog_s1s2_frame();
  FieldExpansion g{b, Eigen::MatrixXd::Zero(b.size(), 4)};
  const int nsh = (b.lmax() + 1) * (b.lmax() + 1);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 2 * b.mmax() + 1; ++t)
    for (int comp = 0; comp < 4; ++comp) g.coeff(t * nsh, comp) = gauss(rng);
  CHECK(s1s2_identity_residual(g) < 1e-10);
  double dirichlet = 0.0;
  for (int i = 0; i < 3; ++i) dirichlet += 0.5 * g.deriv(f, i).norm2();
  const double fueter = 0.5 * apply_fueter(f, g).norm2();
  CHECK(dirichlet == doctest::Approx(fueter).epsilon(1e-12));
  CHECK(std::abs(g.inner(apply_fueter(f, g))) < 1e-10);
}

TEST_CASE("regular estimate constant") {
  std::mt19937_64 rng(49);
  SweepCutoffs cut;
  cut.kmax = 3;
  const RegularEstimate t = regular_estimate_constant(standard_t3_frame(), 10, cut, 7);
  CHECK(t.sharp == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(t.sampled == doctest::Approx(1.0).epsilon(1e-10));
  // any torus frame: D^2 = -L exactly, so the quotient is identically one
  const RegularEstimate tr =
      regular_estimate_constant(FrameSpec(Manifold::Torus3, random_glplus(rng)), 5, cut, 11);
  CHECK(tr.sharp == doctest::Approx(1.0).epsilon(1e-10));

  const RegularEstimate s = regular_estimate_constant(standard_s3_frame(), 20, {}, 13);
  CHECK(s.sharp == doctest::Approx(3.0).epsilon(1e-10));  // attained in the j = 1/2 block
  CHECK(s.sampled <= s.sharp + 1e-9);
  // witness: g(y) = y has ratio 1/3
  const Basis b = Basis::sphere(1);
  const FrameSpec f = standard_s3_frame();
  const FieldExpansion g = FieldExpansion::project(
      b, 4, [](const ManifoldPoint& p) { return Eigen::VectorXd(p.x); }, s3_quadrature(4));
  double dirichlet = 0.0;
  for (int i = 0; i < 3; ++i) dirichlet += g.deriv(f, i).norm2();
  CHECK(dirichlet / apply_fueter(f, g).norm2() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS(regular_estimate_constant(singular_s3_frame(), 5, {}, 17));
}
