#include <doctest.h>

#include <cmath>
#include <random>

#include "qfuse/oracle.hpp"
#include "qfuse/prox.hpp"

using namespace qfuse;

TEST_CASE("soft threshold basic values") {
  CHECK(soft_threshold(3.0, 1.0) == doctest::Approx(2.0));
  CHECK(soft_threshold(-3.0, 1.0) == doctest::Approx(-2.0));
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  // kappa = 0 is the identity
  CHECK(soft_threshold(0.37, 0.0) == doctest::Approx(0.37));
}

TEST_CASE("soft threshold rejects negative kappa") {
  CHECK_THROWS_AS(soft_threshold(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("quantile prox matches the numeric scalar oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> z(-10.0, 10.0);
  const double taus[] = {0.0, 0.1, 0.5, 0.9, 1.0};
  const double mus[] = {0.05, 1.0, 10.0};
  const Index ns[] = {1, 7, 100};
  for (double tau : taus)
    for (double mu : mus)
      for (Index n : ns)
        for (int k = 0; k < 20; ++k) {
          const double z0 = z(rng);
          const double got = quantile_prox(z0, ProxScale{mu, n, tau});
          const double want =
              scalar_prox_oracle(ProxObjective::Quantile, tau, n, mu, z0);
          CHECK(std::abs(got - want) < 1e-8);
        }
}

TEST_CASE("hinge prox matches the numeric scalar oracle") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> z(-10.0, 10.0);
  for (double mu : {0.05, 0.7, 4.0})
    for (int k = 0; k < 50; ++k) {
      const double z0 = z(rng);
      const double want =
          scalar_prox_oracle(ProxObjective::Hinge, 0.0, 1, mu, z0);
      CHECK(std::abs(hinge_prox(z0, mu) - want) < 1e-8);
    }
}

TEST_CASE("hinge prox piecewise form") {
  // min(z0, max(0, |z0| - 1/mu)) at mu = 1
  CHECK(hinge_prox(3.0, 1.0) == doctest::Approx(2.0));
  CHECK(hinge_prox(0.4, 1.0) == doctest::Approx(0.0));
  CHECK(hinge_prox(-0.5, 1.0) == doctest::Approx(-0.5));
  CHECK(hinge_prox(-2.0, 1.0) == doctest::Approx(-2.0));
}

TEST_CASE("l2 norm prox shrinks the radius and keeps the direction") {
  Vector z0(3);
  z0 << 3.0, 0.0, 4.0;  // norm 5
  const double mu = 0.5;  // threshold 1/mu = 2
  const Vector out = l2_norm_prox(z0, mu);
  CHECK(out.norm() == doctest::Approx(3.0));
  CHECK(out[0] / out.norm() == doctest::Approx(3.0 / 5.0));

  // inside the ball -> exactly zero
  Vector small(2);
  small << 0.3, 0.4;  // norm 0.5 < 1/mu
  CHECK(l2_norm_prox(small, mu).norm() == 0.0);
}

TEST_CASE("l2 norm prox reduces to scalar shrinkage in 1-D") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> z(-10.0, 10.0);
  for (double mu : {0.2, 1.0, 5.0})
    for (int k = 0; k < 50; ++k) {
      Vector z0(1);
      z0[0] = z(rng);
      const double want =
          scalar_prox_oracle(ProxObjective::L2Norm, 0.0, 1, mu, z0[0]);
      CHECK(std::abs(l2_norm_prox(z0, mu)[0] - want) < 1e-8);
    }
}

TEST_CASE("least squares r-update matches the numeric scalar oracle") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> z(-10.0, 10.0);
  for (double mu : {0.1, 1.0, 3.0})
    for (int k = 0; k < 50; ++k) {
      Vector w(1);
      w[0] = z(rng);
      const double want =
          scalar_prox_oracle(ProxObjective::LeastSquares, 0.0, 1, mu, w[0]);
      CHECK(std::abs(ls_r_update(w, mu)[0] - want) < 1e-8);
      CHECK(ls_r_update(w, mu)[0] == doctest::Approx(mu * w[0] / (2.0 + mu)));
    }
}

TEST_CASE("prox maps are non-expansive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> z(-5.0, 5.0);
  const ProxScale s{0.7, 13, 0.25};
  for (int k = 0; k < 200; ++k) {
    const double a = z(rng), b = z(rng);
    CHECK(std::abs(quantile_prox(a, s) - quantile_prox(b, s)) <=
          std::abs(a - b) + 1e-12);
    CHECK(std::abs(hinge_prox(a, 0.7) - hinge_prox(b, 0.7)) <=
          std::abs(a - b) + 1e-12);
    CHECK(std::abs(soft_threshold(a, 0.3) - soft_threshold(b, 0.3)) <=
          std::abs(a - b) + 1e-12);
  }
}

TEST_CASE("vector prox applies component-wise") {
  Vector z0(4);
  z0 << -2.0, -0.1, 0.1, 2.0;
  const ProxScale s{1.0, 5, 0.75};
  const Vector out = quantile_prox(z0, s);
  for (Index i = 0; i < 4; ++i)
    CHECK(out[i] == doctest::Approx(quantile_prox(z0[i], s)));
}

TEST_CASE("prox parameter validation") {
  CHECK_THROWS_AS(quantile_prox(1.0, ProxScale{0.0, 5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(quantile_prox(1.0, ProxScale{1.0, 0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(quantile_prox(1.0, ProxScale{1.0, 5, 1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hinge_prox(1.0, -1.0), std::invalid_argument);
  Vector v(2);
  v << 1.0, 2.0;
  CHECK_THROWS_AS(l2_norm_prox(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ls_r_update(v, -2.0), std::invalid_argument);
}
