#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fueterlab/flow.hpp"

using namespace fueterlab;

namespace {

std::vector<BlockLabel> sphere_labels(int twoj_max) {
  std::vector<BlockLabel> out;
  for (int twoj = 0; twoj <= twoj_max; ++twoj)
    out.push_back({Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0});
  return out;
}

}  // namespace

TEST_CASE("model operator paths") {
  // D(s) = diag(s, -s): one up and one down crossing, flow 0, slopes {-1, 1}
  OperatorPath p;
  p.s0 = -1.0;
  p.s1 = 1.0;
  p.label = "model2";
  p.matrix_at = [](double s) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    m(0, 0) = s;
    m(1, 1) = -s;
    return Eigen::MatrixXd(m);
  };
  p.derivative_at = [](double) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    m(0, 0) = 1;
    m(1, 1) = -1;
    return Eigen::MatrixXd(m);
  };
  const FlowResult r = spectral_flow(p);
  CHECK(r.flow == 0);
  CHECK(r.curve_count == 0);
  const CrossingReport rep = crossing_form(p, 0.0);
  CHECK(rep.signature == 0);
  CHECK(rep.kernel_basis.cols() == 2);
  CHECK(rep.slopes[0] == doctest::Approx(-1.0));
  CHECK(rep.slopes[1] == doctest::Approx(1.0));
  CHECK(slope_vs_gamma(rep) < 1e-9);

  // single rising eigenvalue: flow +1; reversal flips it
  OperatorPath q;
  q.s0 = -0.5;
  q.s1 = 0.7;
  q.label = "model1";
  q.matrix_at = [](double s) { return Eigen::MatrixXd::Constant(1, 1, s); };
  q.derivative_at = [](double) { return Eigen::MatrixXd::Constant(1, 1, 1.0); };
  CHECK(spectral_flow(q).flow == 1);

  // cubic tangency: the located crossing has a degenerate form
  OperatorPath c = OperatorPath::with_fd_derivative(
      -0.5, 0.5, [](double s) { return Eigen::MatrixXd::Constant(1, 1, s * s * s); }, "cubic");
  CHECK_THROWS_AS(spectral_flow(c), DegenerateCrossing);
}

TEST_CASE("eigencurves on catalog paths") {
  // constant path: constant curves
  const FramePath cpath =
      FramePath::linear(Manifold::Sphere3, Eigen::Matrix3d::Identity(),
                        Eigen::Matrix3d::Identity(), 0.0, 1.0);
  BlockLabel j12{Manifold::Sphere3, Eigen::Vector3i::Zero(), 1, 0, 0};
  const EigenCurves cc = eigencurves(cpath.block_path(j12), 9);
  CHECK(cc.max_jump < 1e-12);
  // a constant regular path carries no flow
  const FlowResult cr = spectral_flow(cpath.block_path(j12), 9);
  CHECK(cr.flow == 0);
  CHECK(cr.crossings.empty());

  // torus stretch: curves are +-2 pi (1+s) for k = (1,0,0)
  const FramePath tpath =
      FramePath::linear(Manifold::Torus3, Eigen::Matrix3d::Identity(),
                        Eigen::Vector3d(2, 1, 1).asDiagonal().toDenseMatrix(), 0.0, 1.0);
  BlockLabel k100{Manifold::Torus3, {1, 0, 0}, 0, 0, 0};
  const EigenCurves tc = eigencurves(tpath.block_path(k100), 11);
  for (int t = 0; t < tc.s.size(); ++t) {
    const double expect = 2 * M_PI * (1 + tc.s[t]);
    CHECK(tc.curves(0, t) == doctest::Approx(-expect).epsilon(1e-12));
    CHECK(tc.curves(7, t) == doctest::Approx(expect).epsilon(1e-12));
  }

  // sphere sweep: a 4-fold curve through zero at s = 1
  const FramePath spath = FramePath::s3_singular_sweep(0.0, 1.2);
  const EigenCurves sc = eigencurves(spath.block_path(j12), 61);
  int through_zero = 0;
  for (int row = 0; row < sc.curves.rows(); ++row) {
    bool neg = false, pos = false;
    for (int t = 0; t < sc.s.size(); ++t) {
      neg |= sc.curves(row, t) < -1e-3;
      pos |= sc.curves(row, t) > 1e-3;
    }
    if (neg && pos) ++through_zero;
  }
  CHECK(through_zero == 4);
}

TEST_CASE("spectral flow along the singular sphere sweep") {
  const FramePath path = FramePath::s3_singular_sweep(0.0, 1.2);
  const auto labels = sphere_labels(9);
  const FlowResult r = spectral_flow(path, labels, 64);
  REQUIRE(r.crossings.size() == 1);
  const CrossingReport& c = r.crossings[0];
  CHECK(std::abs(c.s_star - 1.0) < 1e-6);
  CHECK(c.kernel_basis.cols() == 4);
  CHECK(std::abs(c.signature) == 4);
  CHECK(r.flow == c.signature);
  CHECK(r.curve_count == r.flow);
  CHECK(slope_vs_gamma(c) < 1e-5);

  // reversal negates the flow
  const FlowResult rr = spectral_flow(path.reversed(), labels, 64);
  CHECK(rr.flow == -r.flow);

  // catenation is additive
  const FlowResult r1 = spectral_flow(path.restricted(0.0, 0.7), labels, 40);
  const FlowResult r2 = spectral_flow(path.restricted(0.7, 1.2), labels, 40);
  CHECK(r1.flow + r2.flow == r.flow);

  // grid refinement does not change the answer
  const FlowResult rf = spectral_flow(path, labels, 128);
  CHECK(rf.flow == r.flow);

  // neglected blocks are certified gap-free along the path
  SweepCutoffs cut;
  cut.twoj_max = 9;
  CHECK(path_neglected_bound(path, cut) > 0.5);
}

TEST_CASE("torus paths carry no flow and catenate") {
  std::mt19937_64 rng(51);
  const Eigen::Matrix3d u0 = random_glplus(rng);
  const Eigen::Matrix3d u1 = random_glplus(rng);
  // keep the segment inside GL+ by staying near u0
  const Eigen::Matrix3d mid = 0.8 * u0 + 0.2 * u1;
  std::vector<BlockLabel> labels;
  labels.push_back({Manifold::Torus3, {0, 0, 0}, 0, 0, 0});
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const Eigen::Vector3i k{a, b, c};
        const int lead = k[0] != 0 ? k[0] : (k[1] != 0 ? k[1] : k[2]);
        if (lead > 0) labels.push_back({Manifold::Torus3, k, 0, 0, 0});
      }
  const FramePath p = FramePath::linear(Manifold::Torus3, u0, mid, 0.0, 1.0);
  const FlowResult r = spectral_flow(p, labels, 16);
  CHECK(r.flow == 0);
  CHECK(r.crossings.empty());
  const FlowResult ra = spectral_flow(p.restricted(0.0, 0.4), labels, 8);
  const FlowResult rb = spectral_flow(p.restricted(0.4, 1.0), labels, 8);
  CHECK(ra.flow + rb.flow == r.flow);

  // constant blocks are rejected when explicitly included
  CHECK_THROWS(spectral_flow(p, labels, 8, true));
}

TEST_CASE("crossing form errors") {
  const FramePath path = FramePath::s3_singular_sweep(0.0, 1.2);
  BlockLabel j12{Manifold::Sphere3, Eigen::Vector3i::Zero(), 1, 0, 0};
  // no kernel away from the crossing
  CHECK_THROWS(crossing_form(path.block_path(j12), 0.3));
}

TEST_CASE("bracket-field perturbation has a positive definite crossing form") {
  // perturb the singular frame along its own bracket fields: on the
  // nonconstant kernel the form equals the sum of squared frame derivatives,
  // so every slope is positive
  const FrameSpec f = singular_s3_frame();
  Eigen::Matrix3d w;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const Quat uj{0, f.U()(0, j), f.U()(1, j), f.U()(2, j)};
    const Quat uk{0, f.U()(0, k), f.U()(1, k), f.U()(2, k)};
    const Quat gen = qmul(uj, uk) - qmul(uk, uj);
    w.col(i) = Eigen::Vector3d{gen.x1, gen.x2, gen.x3};
  }
  const FramePath path = FramePath::linear(Manifold::Sphere3, f.U() - 0.05 * w,
                                           f.U() + 0.05 * w, -0.05, 0.05);
  BlockLabel j12{Manifold::Sphere3, Eigen::Vector3i::Zero(), 1, 0, 0};
  const CrossingReport rep = crossing_form(path.block_path(j12), 0.0);
  CHECK(rep.kernel_basis.cols() == 4);
  CHECK(rep.signature == 4);
  CHECK(rep.gamma_eigs.minCoeff() > 0.0);
  CHECK(slope_vs_gamma(rep) < 1e-5);
}
