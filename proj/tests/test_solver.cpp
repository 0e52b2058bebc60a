#include <doctest.h>

#include <cmath>
#include <random>

#include "qfuse/datagen.hpp"
#include "qfuse/oracle.hpp"
#include "qfuse/prox.hpp"
#include "qfuse/solver.hpp"

using namespace qfuse;

namespace {

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

UnifiedProblem tiny_regression(std::uint64_t seed, double l1, double l2,
                               double tau, Loss loss = Loss::Quantile) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset d;
  d.task = Task::Regression;
  d.X.resize(12, 2);
  d.y.resize(12);
  for (Index i = 0; i < 12; ++i) {
    d.X(i, 0) = gauss(rng);
    d.X(i, 1) = gauss(rng);
    d.y[i] = 1.5 * d.X(i, 0) - 0.5 * d.X(i, 1) + 0.3 * gauss(rng);
  }
  return build_unified_regression(d, tau, l1, l2, loss);
}

}  // namespace

TEST_CASE("beta0 update is a plain gradient step") {
  CHECK(update_beta0(1.0, 4.0, 2.0) == doctest::Approx(-1.0));
  CHECK(update_beta0(0.0, 0.0, 3.0) == 0.0);
}

TEST_CASE("beta update minimizes its surrogate exactly") {
  // beta+ = argmin_x lambda1 ||x||_1 + <g, x - beta> + (eta/2)||x - beta||^2,
  // checked against a golden-section scan per coordinate.
  std::mt19937_64 rng(13);
  const Index p = 6;
  const double eta = 2.3, l1 = 0.4;
  const Vector beta = random_vector(p, rng);
  const Vector g = random_vector(p, rng);
  const Vector out = update_beta(beta, g, eta, l1);
  for (Index j = 0; j < p; ++j) {
    const double want = minimize_scalar(
        [&](double x) {
          const double dx = x - beta[j];
          return l1 * std::abs(x) + g[j] * dx + 0.5 * eta * dx * dx;
        },
        beta[j] - 10.0, beta[j] + 10.0);
    CHECK(out[j] == doctest::Approx(want).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("b update soft-thresholds F beta - v/mu") {
  std::mt19937_64 rng(14);
  const Index m = 5;
  const double l2 = 0.7, mu = 1.4;
  const Vector fb = random_vector(m, rng);
  const Vector v = random_vector(m, rng);
  const Vector out = update_b(fb, v, l2, mu);
  for (Index j = 0; j < m; ++j)
    CHECK(out[j] == doctest::Approx(soft_threshold(fb[j] - v[j] / mu, l2 / mu)));
}

TEST_CASE("r update dispatches on the loss") {
  std::mt19937_64 rng(15);
  const Index n = 8;
  const double mu = 0.9, tau = 0.3;
  const Vector w = random_vector(n, rng);

  const Vector rq = update_r(w, Loss::Quantile, tau, n, mu);
  for (Index i = 0; i < n; ++i)
    CHECK(rq[i] == doctest::Approx(quantile_prox(w[i], ProxScale{mu, n, tau})));

  const Vector rh = update_r(w, Loss::Hinge, tau, n, mu);
  for (Index i = 0; i < n; ++i)
    CHECK(rh[i] == doctest::Approx(hinge_prox(w[i], mu)));

  const Vector rls = update_r(w, Loss::LeastSquares, tau, n, mu);
  CHECK((rls - ls_r_update(w, mu)).norm() < 1e-14);

  const Vector rsr = update_r(w, Loss::SquareRoot, tau, n, mu);
  CHECK((rsr - l2_norm_prox(w, mu)).norm() < 1e-14);
}

TEST_CASE("mu adaptation scales with the residual ratio and freezes") {
  SolverConfig cfg;  // c1 = 10, c2 = 2, freeze at 1000
  // dual dominates -> grow mu; primal dominates -> shrink; balanced -> keep
  CHECK(adapt_mu(Residuals{1.0, 20.0}, 0.5, 10, cfg) == doctest::Approx(1.0));
  CHECK(adapt_mu(Residuals{20.0, 1.0}, 0.5, 10, cfg) == doctest::Approx(0.25));
  CHECK(adapt_mu(Residuals{5.0, 1.0}, 0.5, 10, cfg) == doctest::Approx(0.5));
  // past the freeze iteration nothing changes
  CHECK(adapt_mu(Residuals{1.0, 20.0}, 0.5, 1000, cfg) == doctest::Approx(0.5));
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eta_factor = 0.75;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.mu_init = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("solver reaches the grid-oracle objective on tiny problems") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const UnifiedProblem prob = tiny_regression(seed, 0.05, 0.05, 0.5);
    SolverConfig cfg;
    cfg.max_iter = 20000;
    cfg.eps1 = cfg.eps2 = 1e-6;
    const SolveReport rep = solve(prob, cfg);
    const OracleResult oracle = oracle_solve(prob);
    const double got = objective(prob, rep.coefficients);
    CHECK(got <= oracle.objective + oracle.error_bound + 1e-4);
  }
}

TEST_CASE("converged iterates satisfy the splitting constraints") {
  const UnifiedProblem prob = tiny_regression(44, 0.02, 0.1, 0.3);
  SolverConfig cfg;
  cfg.max_iter = 20000;
  const SolveReport rep = solve(prob, cfg);
  REQUIRE(rep.termination == Termination::Converged);
  // stopping compares against relative bounds; both residuals end up tiny
  CHECK(rep.final_residuals.primal < 0.05);
  CHECK(rep.final_residuals.dual < 0.05);
  CHECK(rep.iterations <= cfg.max_iter);
  CHECK(rep.eta > 0.0);
  CHECK(rep.final_mu > 0.0);
}

TEST_CASE("objective trace is recorded at the requested cadence") {
  const UnifiedProblem prob = tiny_regression(45, 0.05, 0.05, 0.5);
  SolverConfig cfg;
  cfg.max_iter = 50;
  cfg.trace_every = 10;
  const SolveReport rep = solve(prob, cfg);
  CHECK(rep.objective_trace.size() == 5);
  CHECK(rep.primal_trace.size() == rep.objective_trace.size());
  CHECK(rep.dual_trace.size() == rep.objective_trace.size());
  CHECK(rep.h_step_trace.size() == rep.objective_trace.size());
  CHECK(rep.termination == Termination::MaxIter);
  CHECK(rep.iterations == 50);
}

TEST_CASE("solver handles every loss variant") {
  for (Loss loss : {Loss::Quantile, Loss::LeastSquares, Loss::SquareRoot}) {
    const double scale = loss == Loss::Quantile ? 1.0 : 12.0;
    const UnifiedProblem prob =
        tiny_regression(46, 0.02 * scale, 0.02 * scale, 0.5, loss);
    SolverConfig cfg;
    cfg.max_iter = 30000;
    const SolveReport rep = solve(prob, cfg);
    CHECK(rep.termination == Termination::Converged);
    // the fit should explain most of y
    const Vector fit = prob.design.apply(rep.coefficients.beta) +
                       prob.design.gamma() * rep.coefficients.beta0;
    CHECK((prob.ybar - fit).norm() < prob.ybar.norm());
  }
}

TEST_CASE("flsa path recovers a step signal") {
  Vector s(40);
  for (Index i = 0; i < 40; ++i) s[i] = i < 20 ? 0.0 : 4.0;
  const UnifiedProblem prob = build_flsa(s, 0.5, 0.0, 0.05);
  SolverConfig cfg;
  cfg.max_iter = 20000;
  const SolveReport rep = solve(prob, cfg);
  CHECK(rep.termination == Termination::Converged);
  // flat within the halves, jump preserved
  const Vector& beta = rep.coefficients.beta;
  CHECK(std::abs(beta[5] - beta[14]) < 0.05);
  CHECK(std::abs(beta[25] - beta[34]) < 0.05);
  CHECK(beta[30] - beta[10] > 3.0);
}
