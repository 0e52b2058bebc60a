#pragma once

#include <Eigen/Core>

#include "qfuse/linops.hpp"

namespace qfuse {

enum class Task { Regression, Classification };

enum class Loss { Quantile, LeastSquares, SquareRoot, Hinge };

struct Dataset {
  Matrix X;  // n x p
  Vector y;  // real for regression, +-1 for classification
  Task task = Task::Regression;

  Index n() const { return X.rows(); }
  Index p() const { return X.cols(); }

  /// Throws std::invalid_argument on dimension or label violations.
  void validate() const;
};

struct Coefficients {
  double beta0 = 0.0;
  Vector beta;
};

/// The solver's canonical input: min over (beta0, beta) of
///   loss(ybar - X beta - gamma beta0) + lambda1 ||beta||_1 + lambda2 ||F beta||_1
/// where the design carries Xbar = [gamma | X] (gamma absent for Identity).
struct UnifiedProblem {
  DesignOperator design;
  Vector ybar;
  double tau = 0.5;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Loss loss = Loss::Quantile;

  Index n() const { return design.rows(); }
  Index p() const { return design.cols(); }
  bool hasIntercept() const { return design.hasIntercept(); }
};

/// Check loss rho_tau(u) = u * (tau - I(u < 0)).
double check_loss(double u, double tau);

/// Regression: Xbar = [1_n | X], ybar = y; tau and penalties pass through.
UnifiedProblem build_unified_regression(const Dataset& d, double tau,
                                        double lambda1, double lambda2,
                                        Loss loss = Loss::Quantile);

/// Classification: Xbar = [y | YX], ybar = 1_n. For the quantile (pinball)
/// loss the problem is rescaled to tau~ = 1/(1+tau) and lambda~ = lambda/(1+tau);
/// other loss variants (e.g. hinge, the tau = 0 pathway) pass lambda through.
UnifiedProblem build_unified_classification(const Dataset& d, double tau_pinball,
                                            double lambda1, double lambda2,
                                            Loss loss = Loss::Quantile);

/// Identity-design signal approximation: n = p, no intercept.
UnifiedProblem build_flsa(const Vector& signal, double tau, double lambda1,
                          double lambda2, Loss loss = Loss::Quantile);

double objective(const UnifiedProblem& prob, const Coefficients& c);

/// Regression: beta0 + X beta. Classification: sign(beta0 + X beta), sign(0) = +1.
Vector predict(const Matrix& X, const Coefficients& c, Task task);

}  // namespace qfuse
