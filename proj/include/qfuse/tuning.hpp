#pragma once

#include <cstdint>
#include <vector>

#include "qfuse/model.hpp"
#include "qfuse/solver.hpp"

namespace qfuse {

struct Grid {
  std::vector<double> mu_values{0.01, 0.1, 1.0};
  /// Applied to both lambda1 and lambda2 (solver-side values; for
  /// classification these are the post-transformation lambdas).
  std::vector<double> lambda_values;
  int folds = 5;

  /// mu in {0.01, 0.1, 1}, lambda from 0.01 to 1 in steps of 0.01, 5 folds.
  static Grid defaults();

  void validate(Index n) const;
};

struct CvEntry {
  double mu = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double score = 0.0;
  int folds_used = 0;
};

struct CvResult {
  double mu = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double best_score = 0.0;
  std::vector<CvEntry> table;
};

/// K-fold cross-validation over (mu, lambda1, lambda2). Score is the mean
/// held-out check loss (regression) or misclassification rate
/// (classification). Ties break toward the smallest lambda1, then lambda2,
/// then mu. Fold assignment is a seeded shuffle, stratified by label for
/// classification; single-class classification folds are skipped with a
/// warning on stderr.
CvResult cross_validate(const Dataset& d, const Grid& grid, double tau,
                        const SolverConfig& cfg, std::uint64_t fold_seed = 42,
                        Loss loss = Loss::Quantile);

}  // namespace qfuse
