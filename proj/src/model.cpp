#include "qfuse/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qfuse {

void Dataset::validate() const {
  if (n() < 1) throw std::invalid_argument("Dataset: n must be >= 1");
  if (p() < 2)
    throw std::invalid_argument("Dataset: p must be >= 2 (fusion penalty)");
  if (y.size() != n()) throw std::invalid_argument("Dataset: |y| != n");
  if (!X.allFinite() || !y.allFinite())
    throw std::invalid_argument("Dataset: non-finite entries");
  if (task == Task::Classification) {
    for (Index i = 0; i < y.size(); ++i)
      if (y[i] != 1.0 && y[i] != -1.0)
        throw std::invalid_argument("Dataset: classification labels must be +-1");
  }
}

double check_loss(double u, double tau) {
  return u >= 0 ? tau * u : (tau - 1.0) * u;
}

namespace {

void validate_hyper(double tau, double lambda1, double lambda2) {
  if (tau < 0.0 || tau > 1.0)
    throw std::invalid_argument("tau must lie in [0,1]");
  if (lambda1 < 0.0 || lambda2 < 0.0)
    throw std::invalid_argument("penalties must be nonnegative");
}

}  // namespace

UnifiedProblem build_unified_regression(const Dataset& d, double tau,
                                        double lambda1, double lambda2,
                                        Loss loss) {
  d.validate();
  if (d.task != Task::Regression)
    throw std::invalid_argument("build_unified_regression: task mismatch");
  validate_hyper(tau, lambda1, lambda2);

  UnifiedProblem prob;
  prob.design = DesignOperator::dense(d.X, Vector::Ones(d.n()));
  prob.ybar = d.y;
  prob.tau = tau;
  prob.lambda1 = lambda1;
  prob.lambda2 = lambda2;
  prob.loss = loss;
  return prob;
}

UnifiedProblem build_unified_classification(const Dataset& d,
                                            double tau_pinball, double lambda1,
                                            double lambda2, Loss loss) {
  d.validate();
  if (d.task != Task::Classification)
    throw std::invalid_argument("build_unified_classification: task mismatch");
  validate_hyper(tau_pinball, lambda1, lambda2);

  // Row i of [gamma | X] is y_i * [1, x_i].
  Matrix scaled = d.X;
  for (Index i = 0; i < d.n(); ++i) scaled.row(i) *= d.y[i];

  UnifiedProblem prob;
  prob.design = DesignOperator::dense(std::move(scaled), d.y);
  prob.ybar = Vector::Ones(d.n());
  prob.loss = loss;
  if (loss == Loss::Quantile) {
    // Pinball loss at level tau equals (1+tau) * check loss at 1/(1+tau);
    // dividing through rescales the penalties the same way.
    prob.tau = 1.0 / (1.0 + tau_pinball);
    prob.lambda1 = lambda1 / (1.0 + tau_pinball);
    prob.lambda2 = lambda2 / (1.0 + tau_pinball);
  } else {
    prob.tau = tau_pinball;
    prob.lambda1 = lambda1;
    prob.lambda2 = lambda2;
  }
  return prob;
}

UnifiedProblem build_flsa(const Vector& signal, double tau, double lambda1,
                          double lambda2, Loss loss) {
  if (signal.size() < 2)
    throw std::invalid_argument("build_flsa: signal needs >= 2 samples");
  if (!signal.allFinite())
    throw std::invalid_argument("build_flsa: non-finite signal");
  validate_hyper(tau, lambda1, lambda2);

  UnifiedProblem prob;
  prob.design = DesignOperator::identity(signal.size());
  prob.ybar = signal;
  prob.tau = tau;
  prob.lambda1 = lambda1;
  prob.lambda2 = lambda2;
  prob.loss = loss;
  return prob;
}

double objective(const UnifiedProblem& prob, const Coefficients& c) {
  if (c.beta.size() != prob.p())
    throw std::invalid_argument("objective: dimension mismatch");

  Vector fit = prob.design.apply(c.beta);
  if (prob.hasIntercept()) fit += c.beta0 * prob.design.gamma();
  const Vector e = prob.ybar - fit;

  double loss = 0.0;
  switch (prob.loss) {
    case Loss::Quantile:
      for (Index i = 0; i < e.size(); ++i) loss += check_loss(e[i], prob.tau);
      loss /= static_cast<double>(prob.n());
      break;
    case Loss::LeastSquares:
      loss = e.squaredNorm();
      break;
    case Loss::SquareRoot:
      loss = e.norm();
      break;
    case Loss::Hinge:
      for (Index i = 0; i < e.size(); ++i) loss += std::max(0.0, e[i]);
      break;
  }

  double penalty = prob.lambda1 * c.beta.lpNorm<1>();
  for (Index j = 1; j < c.beta.size(); ++j)
    penalty += prob.lambda2 * std::abs(c.beta[j] - c.beta[j - 1]);
  return loss + penalty;
}

Vector predict(const Matrix& X, const Coefficients& c, Task task) {
  if (X.cols() != c.beta.size())
    throw std::invalid_argument("predict: dimension mismatch");
  Vector f = X * c.beta;
  f.array() += c.beta0;
  if (task == Task::Classification)
    for (Index i = 0; i < f.size(); ++i) f[i] = f[i] >= 0 ? 1.0 : -1.0;
  return f;
}

}  // namespace qfuse
