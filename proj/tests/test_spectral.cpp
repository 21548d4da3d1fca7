#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fueterlab/spectral.hpp"

using namespace fueterlab;

namespace {

// sorted |eigenvalues| of a closed-form list
std::vector<double> sorted_abs(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  for (double& x : out) x = std::abs(x);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::Vector3i rand_mode(std::mt19937_64& rng, int kmax) {
  std::uniform_int_distribution<int> d(-kmax, kmax);
  for (;;) {
    Eigen::Vector3i k{d(rng), d(rng), d(rng)};
    if (k != Eigen::Vector3i::Zero()) return k;
  }
}

}  // namespace

TEST_CASE("torus blocks have the closed-form spectrum") {
  std::mt19937_64 rng(1);
  const SpectralBlock b0 = t3_block(Eigen::Matrix3d::Identity(), {1, 0, 0});
  const Eigen::VectorXd e0 = block_eigenvalues(b0);
  for (int i = 0; i < 4; ++i) CHECK(e0[i] == doctest::Approx(-2 * M_PI).epsilon(1e-12));
  for (int i = 4; i < 8; ++i) CHECK(e0[i] == doctest::Approx(2 * M_PI).epsilon(1e-12));

  for (int it = 0; it < 20; ++it) {
    const Eigen::Matrix3d u = random_glplus(rng);
    const Eigen::Vector3i k = rand_mode(rng, 5);
    const double expect = 2 * M_PI * (u.transpose() * k.cast<double>()).norm();
    const SpectralBlock b = t3_block(u, k);
    CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd e = block_eigenvalues(b);
    for (int i = 0; i < 4; ++i) CHECK(e[i] == doctest::Approx(-expect).epsilon(1e-12));
    for (int i = 4; i < 8; ++i) CHECK(e[i] == doctest::Approx(expect).epsilon(1e-12));
    // spectrum symmetric about zero
    for (int i = 0; i < 8; ++i) CHECK(e[i] == doctest::Approx(-e[7 - i]).epsilon(1e-12));
  }
  const SpectralBlock zero = t3_block(Eigen::Matrix3d::Identity(), {0, 0, 0});
  CHECK(zero.matrix.rows() == 4);
  CHECK(zero.matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sphere blocks: anchor eigenvalues") {
  // standard frame, j = 1/2: spectrum {-3 x4, +1 x12}
  const SpectralBlock b = s3_block(Eigen::Matrix3d::Identity(), 1);
  CHECK(b.matrix.rows() == 16);
  CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::VectorXd e = block_eigenvalues(b);
  for (int i = 0; i < 4; ++i) CHECK(e[i] == doctest::Approx(-3.0).epsilon(1e-12));
  for (int i = 4; i < 16; ++i) CHECK(e[i] == doctest::Approx(1.0).epsilon(1e-12));

  // j = 0 is the zero constant block
  const SpectralBlock z = s3_block(Eigen::Matrix3d::Identity(), 0);
  CHECK(z.matrix.rows() == 4);
  CHECK(z.matrix.cwiseAbs().maxCoeff() == 0.0);

  // singular catalog frame: 4-dimensional kernel inside the j = 1/2 block
  const SpectralBlock s = s3_block(singular_s3_frame().U(), 1);
  const Eigen::VectorXd es = block_eigenvalues(s);
  int near_zero = 0;
  for (int i = 0; i < es.size(); ++i)
    if (std::abs(es[i]) < 1e-12) ++near_zero;
  CHECK(near_zero == 4);
}

TEST_CASE("standard sphere frame has the two-level block spectrum") {
  // the operator-square identity with w_i = 2 v_i forces
  // lambda^2 + 2 lambda = 4 j (j+1), so each block carries exactly
  // {2j with multiplicity 4(2j+2), -(2j+2) with multiplicity 8j}
  for (int twoj : {1, 2, 3, 4, 5, 6}) {
    const Eigen::VectorXd e = block_eigenvalues(s3_block(Eigen::Matrix3d::Identity(), twoj));
    const double j = 0.5 * twoj;
    int low = 0, high = 0;
    for (int i = 0; i < e.size(); ++i) {
      if (std::abs(e[i] - 2 * j) < 1e-10) ++high;
      if (std::abs(e[i] + 2 * j + 2) < 1e-10) ++low;
    }
    CHECK(high == 4 * (twoj + 2));
    CHECK(low == 4 * twoj);
    CHECK(high + low == e.size());
  }
}

TEST_CASE("integer-spin blocks split into two reduced copies") {
  std::mt19937_64 rng(2);
  for (int twoj : {2, 4}) {
    const Eigen::Matrix3d u = random_glplus(rng);
    const auto full = sorted_abs(block_eigenvalues(s3_block(u, twoj)));
    const auto half = sorted_abs(block_eigenvalues(s3_block_reduced(u, twoj)));
    REQUIRE(full.size() == 2 * half.size());
    for (size_t i = 0; i < half.size(); ++i) {
      CHECK(full[2 * i] == doctest::Approx(half[i]).epsilon(1e-9));
      CHECK(full[2 * i + 1] == doctest::Approx(half[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("sphere block spectra are rotation invariant") {
  std::mt19937_64 rng(3);
  const Eigen::Matrix3d u = random_glplus(rng);
  // random rotation via QR of a gaussian matrix
  Eigen::Matrix3d g = random_glplus(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d r = qr.householderQ();
  if (r.determinant() < 0) r.col(0) *= -1.0;
  for (int twoj : {1, 2, 3, 4}) {
    const auto e1 = sorted_abs(block_eigenvalues(s3_block(u, twoj)));
    const auto e2 = sorted_abs(block_eigenvalues(s3_block(r * u, twoj)));
    for (size_t i = 0; i < e1.size(); ++i) CHECK(std::abs(e1[i] - e2[i]) < 1e-10);
  }
}

TEST_CASE("kernel dimension and classification on the catalog") {
  std::mt19937_64 rng(4);
  SweepCutoffs cut;
  cut.kmax = 4;
  for (int it = 0; it < 5; ++it) {
    const FrameSpec f(Manifold::Torus3, random_glplus(rng));
    const KernelReport rep = kernel_dimension(f, cut);
    CHECK(rep.dim == 4);
    CHECK(classify(f, cut) == Classification::Regular);
  }
  const KernelReport s_std = kernel_dimension(standard_s3_frame(), {});
  CHECK(s_std.dim == 4);
  CHECK(s_std.neglected_bound > 1.0);
  const KernelReport s_sing = kernel_dimension(singular_s3_frame(), {});
  CHECK(s_sing.dim == 8);
  CHECK(classify(singular_s3_frame()) == Classification::Singular);

  SweepCutoffs pcut;
  pcut.lmax = 6;
  pcut.mmax = 1;
  const KernelReport p = kernel_dimension(catalog_s1s2_frame(), pcut);
  CHECK(p.dim == 4);
  CHECK(p.next_min >= 0.1);
}

TEST_CASE("truncation certification fails loudly") {
  SweepCutoffs tiny;
  tiny.twoj_max = 2;
  CHECK_THROWS_AS(kernel_dimension(standard_s3_frame(), tiny), UncertifiedTruncation);
  CHECK_THROWS_AS(kernel_dimension(standard_s3_frame(), {}, 0.5), SpectralGapAmbiguity);
}

TEST_CASE("operator identity D^2 = -L - W blockwise") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 5; ++it) {
    const FrameSpec f(Manifold::Torus3, random_glplus(rng));
    for (int trial = 0; trial < 5; ++trial) {
      // low modes sit at unit scale and cancel to full precision
      BlockLabel low{Manifold::Torus3, rand_mode(rng, 2), 0, 0, 0};
      CHECK(verify_dd2(f, low) < 1e-12);
      BlockLabel lab{Manifold::Torus3, rand_mode(rng, 8), 0, 0, 0};
      CHECK(verify_dd2(f, lab) < 1e-10);
    }
  }
  for (int it = 0; it < 5; ++it) {
    const FrameSpec f(Manifold::Sphere3, random_glplus(rng));
    for (int twoj = 0; twoj <= 4; ++twoj) {
      BlockLabel lab{Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0};
      CHECK(verify_dd2(f, lab) < 1e-10);
    }
  }
  BlockLabel plab{Manifold::ProductS1S2, Eigen::Vector3i::Zero(), 0, 5, 1};
  CHECK(verify_dd2(catalog_s1s2_frame(), plab) < 1e-10);
}

TEST_CASE("s1s2 operator structure") {
  // assembly self-check at the production truncation
  const SpectralBlock b8 = s1s2_operator(8, 2);
  CHECK((b8.matrix - b8.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-10);

  const SpectralBlock b = s1s2_operator(5, 1);
  CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  // constants are exactly in the kernel
  const int nconst = 0;  // first scalar function is theta-const x Y_00
  for (int c = 0; c < 4; ++c) {
    CHECK(b.matrix.col(4 * nconst + c).cwiseAbs().maxCoeff() < 1e-13);
  }
  CHECK_THROWS(s1s2_operator(1, 1));

  // the circle-constant sector sees only the rotation part, whose square
  // satisfies B^2 + B = l(l+1): eigenvalues are exactly l or -(l+1)
  {
    const int lmax = 5;
    const int nsh = (lmax + 1) * (lmax + 1);
    const SpectralBlock full = s1s2_operator(lmax, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        full.matrix.topLeftCorner(4 * nsh, 4 * nsh), Eigen::EigenvaluesOnly);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = es.eigenvalues()[i];
      const double nearest_l = std::round(lam);
      const bool is_l = nearest_l >= 0 && nearest_l <= lmax && std::abs(lam - nearest_l) < 1e-10;
      const double nearest_m = std::round(-lam - 1);
      const bool is_m =
          nearest_m >= 0 && nearest_m <= lmax && std::abs(lam + nearest_m + 1) < 1e-10;
      CHECK((is_l || is_m));
    }
  }

  // smallest magnitudes: exactly 4 zeros (constants)
  const Eigen::VectorXd eigs = block_eigenvalues(b);
  std::vector<double> a = sorted_abs(eigs);
  for (int i = 0; i < 4; ++i) CHECK(a[i] < 1e-12);
  CHECK(a[4] > 0.1);
}

TEST_CASE("dirac spectrum shift") {
  const FrameSpec s3 = standard_s3_frame();
  BlockLabel j12{Manifold::Sphere3, Eigen::Vector3i::Zero(), 1, 0, 0};
  const Eigen::VectorXd sh = dirac_spectrum_shift(s3, j12);
  CHECK(sh.minCoeff() == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(sh.maxCoeff() == doctest::Approx(2.5).epsilon(1e-12));
  BlockLabel j0{Manifold::Sphere3, Eigen::Vector3i::Zero(), 0, 0, 0};
  const Eigen::VectorXd sh0 = dirac_spectrum_shift(s3, j0);
  CHECK(sh0.minCoeff() == doctest::Approx(1.5));
  std::mt19937_64 rng(6);
  const FrameSpec t3(Manifold::Torus3, random_glplus(rng));
  BlockLabel kt{Manifold::Torus3, {1, 0, 0}, 0, 0, 0};
  const Eigen::VectorXd sht = dirac_spectrum_shift(t3, kt);
  const Eigen::VectorXd raw = block_eigenvalues(t3_block(t3.U(), {1, 0, 0}));
  CHECK((sht - raw).cwiseAbs().maxCoeff() < 1e-13);
}

// ---------------------------------------------------------------------------
// Independent oracle: 4th-order periodic finite differences on the torus.
// The stencil operator is unitarily diagonalized by the discrete Fourier
// transform, so its spectrum is enumerated exactly through its symbol.
// ---------------------------------------------------------------------------

namespace {

double fd4_symbol(int k, int n) {
  const double w = 2.0 * M_PI * k / n;
  return n * (8.0 * std::sin(w) - std::sin(2.0 * w)) / 6.0;
}

// FD eigenvalue magnitude for torus mode k at grid N
double fd4_mode_eig(const Eigen::Matrix3d& u, const Eigen::Vector3i& k, int n) {
  Eigen::Vector3d sig{fd4_symbol(k[0], n), fd4_symbol(k[1], n), fd4_symbol(k[2], n)};
  return (u.transpose() * sig).norm();
}

}  // namespace

TEST_CASE("torus FD discretization reproduces the block spectrum at order 4") {
  std::mt19937_64 rng(7);
  const Eigen::Matrix3d u = random_glplus(rng);

  // sanity: the symbol equals the actual stencil applied to a sampled wave
  {
    const int n = 16;
    const Eigen::Vector3i k{2, -1, 3};
    const double h = 1.0 / n;
    auto fval = [&](double y1, double y2, double y3) {
      return std::cos(2 * M_PI * (k[0] * y1 + k[1] * y2 + k[2] * y3));
    };
    const double y1 = 3.0 / n, y2 = 5.0 / n, y3 = 7.0 / n;
    const double stencil = (-fval(y1 + 2 * h, y2, y3) + 8 * fval(y1 + h, y2, y3) -
                            8 * fval(y1 - h, y2, y3) + fval(y1 - 2 * h, y2, y3)) /
                           (12 * h);
    const double predict = -fd4_symbol(k[0], n) * std::sin(2 * M_PI * (k.cast<double>().dot(
                                                      Eigen::Vector3d(y1, y2, y3))));
    CHECK(stencil == doctest::Approx(predict).epsilon(1e-12));
  }

  // collect the 20 smallest nonzero exact eigenvalues and compare per mode
  struct Mode {
    Eigen::Vector3i k;
    double exact;
  };
  std::vector<Mode> modes;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c) {
        const Eigen::Vector3i k{a, b, c};
        if (k == Eigen::Vector3i::Zero()) continue;
        modes.push_back({k, 2 * M_PI * (u.transpose() * k.cast<double>()).norm()});
      }
  std::sort(modes.begin(), modes.end(), [](const Mode& x, const Mode& y) {
    return x.exact < y.exact;
  });
  modes.resize(20);
  double err16 = 0, err32 = 0;
  for (const auto& m : modes) {
    err16 = std::max(err16, std::abs(fd4_mode_eig(u, m.k, 16) - m.exact));
    err32 = std::max(err32, std::abs(fd4_mode_eig(u, m.k, 32) - m.exact));
  }
  const double order = std::log2(err16 / err32);
  CHECK(order >= 3.5);
}
