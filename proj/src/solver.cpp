#include "qfuse/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "qfuse/prox.hpp"

namespace qfuse {

void SolverConfig::validate() const {
  if (eta_factor <= 0.75)
    throw std::invalid_argument("SolverConfig: eta_factor must exceed 0.75");
  if (mu_init <= 0) throw std::invalid_argument("SolverConfig: mu_init <= 0");
  if (c1 <= 1 || c2 <= 1)
    throw std::invalid_argument("SolverConfig: c1 and c2 must exceed 1");
  if (eps1 < 0 || eps2 < 0)
    throw std::invalid_argument("SolverConfig: negative tolerance");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter < 1");
  if (trace_every < 1)
    throw std::invalid_argument("SolverConfig: trace_every < 1");
}

double update_beta0(double beta0, double grad_first, double eta) {
  return beta0 - grad_first / eta;
}

Vector update_beta(const Vector& beta, const Vector& grad_tail, double eta,
                   double lambda1) {
  Vector stepped = beta - grad_tail / eta;
  return soft_threshold(stepped, lambda1 / eta);
}

Vector update_b(const Vector& f_beta_next, const Vector& v, double lambda2,
                double mu2) {
  return soft_threshold(f_beta_next - v / mu2, lambda2 / mu2);
}

Vector update_r(const Vector& w, Loss loss, double tau, Index n, double mu1) {
  switch (loss) {
    case Loss::Quantile:
      return quantile_prox(w, ProxScale{mu1, n, tau});
    case Loss::LeastSquares:
      return ls_r_update(w, mu1);
    case Loss::SquareRoot:
      return l2_norm_prox(w, mu1);
    case Loss::Hinge:
      return hinge_prox(w, mu1);
  }
  throw std::invalid_argument("update_r: unknown loss variant");
}

Residuals compute_residuals(const UnifiedProblem& prob,
                            const SolverState& prev, const SolverState& cur,
                            double mu) {
  const DesignOperator& design = prob.design;
  DifferenceOperator diff(prob.p());

  const Vector dr = prev.r - cur.r;
  const Vector db = cur.b - prev.b;

  // primal residual^2 = ||mu gamma^T (r^k - r^{k+1})||^2
  //                   + ||mu X^T (r^k - r^{k+1}) + mu F^T (b^{k+1} - b^k)||^2
  const double g_term = mu * design.gammaDot(dr);
  const Vector x_term = mu * design.applyAdjoint(dr) + mu * diff.applyAdjoint(db);
  const double primal_sq = g_term * g_term + x_term.squaredNorm();

  // dual residual^2 = ||X beta + gamma beta0 + r - ybar||^2 + ||F beta - b||^2
  Vector fit = design.apply(cur.beta);
  if (design.hasIntercept()) fit += cur.beta0 * design.gamma();
  const double dual_sq = (fit + cur.r - prob.ybar).squaredNorm() +
                         (diff.apply(cur.beta) - cur.b).squaredNorm();

  return Residuals{std::sqrt(primal_sq), std::sqrt(dual_sq)};
}

double adapt_mu(const Residuals& res, double mu, int k,
                const SolverConfig& cfg) {
  if (k >= cfg.mu_freeze_iter) return mu;
  if (cfg.c1 * res.primal < res.dual) return mu * cfg.c2;
  if (res.primal > cfg.c1 * res.dual) return mu / cfg.c2;
  return mu;
}

bool check_stop(const UnifiedProblem& prob, const Residuals& res,
                const SolverState& state, const SolverConfig& cfg) {
  const DesignOperator& design = prob.design;
  DifferenceOperator diff(prob.p());
  const auto n = static_cast<double>(prob.n());
  const double dims_primal =
      static_cast<double>(prob.p() + (prob.hasIntercept() ? 1 : 0));
  const double dims_dual = n + static_cast<double>(prob.p() - 1);

  const double gu = design.gammaDot(state.u);
  const Vector xu_fv =
      design.applyAdjoint(state.u) + diff.applyAdjoint(state.v);
  const double primal_bound =
      std::sqrt(dims_primal) * cfg.eps1 +
      cfg.eps2 * std::sqrt(gu * gu + xu_fv.squaredNorm());

  Vector fit = design.apply(state.beta);
  if (design.hasIntercept()) fit += state.beta0 * design.gamma();
  const double scale =
      std::max({fit.squaredNorm() + diff.apply(state.beta).squaredNorm(),
                state.b.squaredNorm() + state.r.squaredNorm(), n});
  const double dual_bound =
      std::sqrt(dims_dual) * cfg.eps1 + cfg.eps2 * std::sqrt(scale);

  return res.primal <= primal_bound && res.dual <= dual_bound;
}

SolveReport solve(const UnifiedProblem& prob, const SolverConfig& cfg) {
  cfg.validate();
  const Index n = prob.n();
  const Index p = prob.p();
  const bool intercept = prob.hasIntercept();
  const DesignOperator& design = prob.design;
  DifferenceOperator diff(p);

  SolverState state;
  state.beta = Vector::Zero(p);
  state.b = Vector::Zero(p - 1);
  state.r = Vector::Zero(n);
  state.u = Vector::Zero(n);
  state.v = Vector::Zero(p - 1);
  state.mu = cfg.mu_init;

  auto spectral_eta = [&](double mu) {
    StackedGram gram{&design, &diff, mu, mu};
    return cfg.eta_factor * power_method(gram, cfg.power_tol,
                                         cfg.power_max_iter).value;
  };
  double eta = spectral_eta(state.mu);

  SolveReport report;
  SolverState prev = state;
  Residuals res;
  bool converged = false;

  for (int k = 0; k < cfg.max_iter; ++k) {
    const double mu = state.mu;
    prev = state;

    // g = Xtilde^T (Xtilde betatilde^k - ytilde^k), block form.
    Vector fit = design.apply(state.beta);
    if (intercept) fit += state.beta0 * design.gamma();
    const Vector s = fit - prob.ybar + state.r - state.u / mu;
    const Vector t = diff.apply(state.beta) - state.b - state.v / mu;
    const double g0 = intercept ? mu * design.gammaDot(s) : 0.0;
    const Vector g = mu * design.applyAdjoint(s) + mu * diff.applyAdjoint(t);

    if (intercept) state.beta0 = update_beta0(state.beta0, g0, eta);
    state.beta = update_beta(state.beta, g, eta, prob.lambda1);

    const Vector f_beta = diff.apply(state.beta);
    state.b = update_b(f_beta, state.v, prob.lambda2, mu);

    Vector fit_next = design.apply(state.beta);
    if (intercept) fit_next += state.beta0 * design.gamma();
    const Vector w = prob.ybar - fit_next + state.u / mu;
    state.r = update_r(w, prob.loss, prob.tau, n, mu);

    state.u -= mu * (fit_next + state.r - prob.ybar);
    state.v -= mu * (f_beta - state.b);
    state.k = k + 1;

    if (!state.beta.allFinite() || !state.r.allFinite() ||
        !state.u.allFinite() || !std::isfinite(state.beta0))
      throw SolverError("solve: non-finite iterate at iteration " +
                            std::to_string(k),
                        k);

    res = compute_residuals(prob, prev, state, mu);

    if ((k + 1) % cfg.trace_every == 0) {
      report.objective_trace.push_back(
          objective(prob, Coefficients{state.beta0, state.beta}));
      report.primal_trace.push_back(res.primal);
      report.dual_trace.push_back(res.dual);

      // ||w^k - w^{k+1}||^2_H with H = diag(G, mu I, I/mu),
      // G = eta I - Xtilde^T Xtilde and M^T M = I for this constraint block.
      const double d0 = state.beta0 - prev.beta0;
      const Vector dbeta = state.beta - prev.beta;
      Vector dfit = design.apply(dbeta);
      if (intercept) dfit += d0 * design.gamma();
      const double g_norm =
          eta * (dbeta.squaredNorm() + d0 * d0) -
          mu * (dfit.squaredNorm() + diff.apply(dbeta).squaredNorm());
      const double h_step =
          g_norm + mu * ((state.b - prev.b).squaredNorm() +
                         (state.r - prev.r).squaredNorm()) +
          ((state.u - prev.u).squaredNorm() +
           (state.v - prev.v).squaredNorm()) / mu;
      report.h_step_trace.push_back(h_step);
    }

    if (check_stop(prob, res, state, cfg)) {
      converged = true;
      break;
    }

    if (cfg.adaptive_mu) {
      const double mu_next = adapt_mu(res, state.mu, k, cfg);
      if (mu_next != state.mu) {
        state.mu = mu_next;
        eta = spectral_eta(state.mu);
      }
    }
  }

  report.coefficients = Coefficients{state.beta0, state.beta};
  report.iterations = state.k;
  report.termination = converged ? Termination::Converged : Termination::MaxIter;
  report.final_residuals = res;
  report.final_mu = state.mu;
  report.eta = eta;
  return report;
}

}  // namespace qfuse
