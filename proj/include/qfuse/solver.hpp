#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qfuse/model.hpp"

namespace qfuse {

struct SolverConfig {
  /// eta = eta_factor * rho(Xtilde^T Xtilde); must stay above 0.75.
  double eta_factor = 0.8;
  double mu_init = 0.1;
  bool adaptive_mu = true;
  double c1 = 10.0;
  double c2 = 2.0;
  int mu_freeze_iter = 1000;
  double eps1 = 1e-4;
  double eps2 = 1e-4;
  int max_iter = 10000;
  int trace_every = 1;
  double power_tol = 1e-2;
  int power_max_iter = 100;

  void validate() const;
};

/// One ADMM iterate. mu1 = mu2 = mu throughout.
struct SolverState {
  double beta0 = 0.0;
  Vector beta;  // p
  Vector b;     // p-1
  Vector r;     // n
  Vector u;     // n, dual of the fit constraint
  Vector v;     // p-1, dual of the fusion constraint
  double mu = 0.1;
  int k = 0;
};

/// Residual pair used for stopping and for the mu adaptation. Beware the
/// naming, which is swapped relative to the usual ADMM convention: "primal"
/// here measures dual-variable drift (mu Xbar^T (r^k - r^{k+1}) + ...) while
/// "dual" measures the constraint violation.
struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
};

enum class Termination { Converged, MaxIter };

struct SolveReport {
  Coefficients coefficients;
  int iterations = 0;
  Termination termination = Termination::MaxIter;
  std::vector<double> objective_trace;
  std::vector<double> primal_trace;
  std::vector<double> dual_trace;
  /// ||w^k - w^{k+1}||^2_H with H = diag(G, mu*M^T M, I/mu).
  std::vector<double> h_step_trace;
  Residuals final_residuals;
  double final_mu = 0.0;
  double eta = 0.0;
};

/// Thrown when an iterate goes non-finite (eta too small or pathological data).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_ = 0;
};

// --- single update steps (the solve loop is composed of these) ---

double update_beta0(double beta0, double grad_first, double eta);

/// Component-wise soft threshold of the linearized gradient step.
Vector update_beta(const Vector& beta, const Vector& grad_tail, double eta,
                   double lambda1);

Vector update_b(const Vector& f_beta_next, const Vector& v, double lambda2,
                double mu2);

/// w = ybar - X beta - gamma beta0 + u/mu1 precomputed by the caller; the
/// loss variant picks the matching prox.
Vector update_r(const Vector& w, Loss loss, double tau, Index n, double mu1);

Residuals compute_residuals(const UnifiedProblem& prob,
                            const SolverState& prev, const SolverState& cur,
                            double mu);

double adapt_mu(const Residuals& res, double mu, int k,
                const SolverConfig& cfg);

bool check_stop(const UnifiedProblem& prob, const Residuals& res,
                const SolverState& state, const SolverConfig& cfg);

SolveReport solve(const UnifiedProblem& prob, const SolverConfig& cfg = {});

}  // namespace qfuse
