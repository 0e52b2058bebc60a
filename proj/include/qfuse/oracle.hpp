#pragma once

#include <functional>

#include "qfuse/model.hpp"

namespace qfuse {

struct OracleConfig {
  double coarse_lo = -10.0;
  double coarse_hi = 10.0;
  int refinement_rounds = 6;
  int points_per_axis = 41;
};

struct OracleResult {
  Coefficients coefficients;
  double objective = 0.0;
  /// Lipschitz constant * final grid spacing; how far above the true minimum
  /// the reported objective can sit.
  double error_bound = 0.0;
};

/// Nested-grid minimizer over (beta0, beta) for tiny instances
/// (p + intercept <= 4). Each round shrinks the box 4x around the incumbent.
OracleResult oracle_solve(const UnifiedProblem& prob,
                          const OracleConfig& cfg = {});

/// Golden-section minimizer of a unimodal scalar function on [lo, hi].
double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double tol = 1e-12);

enum class ProxObjective { Quantile, Hinge, L2Norm, LeastSquares };

/// Numeric minimizer of the scalar prox objective, bracketed around z0.
/// tau and n only matter for the quantile objective.
double scalar_prox_oracle(ProxObjective id, double tau, Index n, double mu,
                          double z0);

}  // namespace qfuse
