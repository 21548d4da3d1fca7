#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fueterlab/quat.hpp"

using namespace fueterlab;

namespace {

Quat random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

double dist(const Quat& a, const Quat& b) { return (a - b).norm(); }

const Quat one{1, 0, 0, 0}, qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};

}  // namespace

TEST_CASE("hamilton product basics") {
  CHECK(dist(qmul(qi, qj), qk) == 0.0);
  CHECK(dist(qmul(qi, qi), -one) == 0.0);
  std::mt19937_64 rng(7);
  const Quat q = random_quat(rng);
  CHECK(dist(qmul(one, q), q) == 0.0);

  // |ab| = |a||b| and associativity
  for (int it = 0; it < 100; ++it) {
    const Quat a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
    CHECK(std::abs(qmul(a, b).norm() - a.norm() * b.norm()) < 1e-13 * (1 + a.norm() * b.norm()));
    CHECK(dist(qmul(qmul(a, b), c), qmul(a, qmul(b, c))) < 1e-12);
  }
}

TEST_CASE("complex structures J and I") {
  CHECK(dist(apply_J(1, one), qi) == 0.0);
  CHECK(dist(apply_J(2, qj), -one) == 0.0);
  CHECK(dist(apply_J(3, qi), qj) == 0.0);  // k i = j

  CHECK(dist(apply_I(1, one), -qi) == 0.0);
  CHECK(dist(apply_I(1, qi), one) == 0.0);

  CHECK_THROWS_AS(apply_J(0, one), std::invalid_argument);
  CHECK_THROWS_AS(apply_I(4, one), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    const Quat x = random_quat(rng);
    for (int a = 1; a <= 3; ++a) {
      CHECK(dist(apply_J(a, apply_J(a, x)), -x) < 1e-14 * (1 + x.norm()));
      CHECK(dist(apply_I(a, apply_I(a, x)), -x) < 1e-14 * (1 + x.norm()));
      for (int b = 1; b <= 3; ++b)
        CHECK(dist(apply_I(b, apply_J(a, x)), apply_J(a, apply_I(b, x))) < 1e-14 * (1 + x.norm()));
    }
    // cyclic products J_1 J_2 = J_3 etc.
    for (int a = 1; a <= 3; ++a) {
      const int b = a % 3 + 1, c = b % 3 + 1;
      CHECK(dist(apply_J(a, apply_J(b, x)), apply_J(c, x)) < 1e-14 * (1 + x.norm()));
    }
  }
}

TEST_CASE("symplectic pairings omega_i") {
  CHECK(omega(1, one, qi) == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    const Quat u = random_quat(rng), v = random_quat(rng);
    for (int a = 1; a <= 3; ++a) {
      CHECK(std::abs(omega(a, u, u)) < 1e-14 * (1 + u.norm2()));
      CHECK(std::abs(omega(a, u, v) + omega(a, v, u)) < 1e-14 * (1 + u.norm() * v.norm()));
      // the 2-form component formula is the independent route
      CHECK(std::abs(omega(a, u, v) - omega_form_eval(a, u, v)) <
            1e-14 * (1 + u.norm() * v.norm()));
    }
  }
}

TEST_CASE("matrix forms agree with the actions") {
  std::mt19937_64 rng(17);
  for (int a = 1; a <= 3; ++a) {
    const Eigen::Matrix4d jm = J_matrix(a), im = I_matrix(a);
    for (int it = 0; it < 10; ++it) {
      const Quat x = random_quat(rng);
      CHECK((jm * x.vec() - apply_J(a, x).vec()).norm() < 1e-14 * (1 + x.norm()));
      CHECK((im * x.vec() - apply_I(a, x).vec()).norm() < 1e-14 * (1 + x.norm()));
    }
    CHECK((jm + jm.transpose()).cwiseAbs().maxCoeff() == 0.0);  // skew
  }
}
