#pragma once

#include <Eigen/Core>

namespace qfuse {

using Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// First-difference operator F: (p-1) x p, 1 on the diagonal and -1 on the
/// superdiagonal, so (F beta)_j = beta_j - beta_{j+1}. Never materialized;
/// both directions are O(p) streams.
class DifferenceOperator {
 public:
  explicit DifferenceOperator(Index p);

  Index rows() const { return p_ - 1; }
  Index cols() const { return p_; }

  void apply(const Vector& beta, Vector& out) const;
  void applyAdjoint(const Vector& v, Vector& out) const;

  Vector apply(const Vector& beta) const;
  Vector applyAdjoint(const Vector& v) const;

 private:
  Index p_;
};

/// Design abstraction: a dense n x p matrix with an intercept column gamma,
/// or the p x p identity (FLSA fast path, no intercept).
class DesignOperator {
 public:
  enum class Kind { Dense, Identity };

  /// Empty (0 x 0) identity design; assign via dense()/identity() before use.
  DesignOperator() = default;

  static DesignOperator dense(Matrix X, Vector gamma);
  static DesignOperator identity(Index p);

  Kind kind() const { return kind_; }
  Index rows() const { return n_; }
  Index cols() const { return p_; }
  bool hasIntercept() const { return kind_ == Kind::Dense; }

  /// out = X * beta
  void apply(const Vector& beta, Vector& out) const;
  /// out = X^T * res
  void applyAdjoint(const Vector& res, Vector& out) const;

  Vector apply(const Vector& beta) const;
  Vector applyAdjoint(const Vector& res) const;

  /// gamma^T r; zero for Identity (no intercept column).
  double gammaDot(const Vector& r) const;
  const Vector& gamma() const { return gamma_; }
  const Matrix& matrix() const { return X_; }

 private:
  Kind kind_ = Kind::Identity;
  Index n_ = 0, p_ = 0;
  Matrix X_;      // Dense only
  Vector gamma_;  // Dense only
};

/// Action of Xtilde^T Xtilde where Xtilde = (sqrt(mu1) Xbar^T, sqrt(mu2) Fbar^T)^T,
/// Xbar = [gamma | X] and Fbar = [0 | F]. Operates on the stacked coefficient
/// vector [beta0, beta] (just beta when the design has no intercept).
struct StackedGram {
  const DesignOperator* design = nullptr;
  const DifferenceOperator* diff = nullptr;
  double mu1 = 1.0;
  double mu2 = 1.0;

  Index dim() const {
    return design->cols() + (design->hasIntercept() ? 1 : 0);
  }
  void apply(const Vector& tilde_beta, Vector& out) const;
  Vector apply(const Vector& tilde_beta) const;
};

struct PowerResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration estimate of the largest eigenvalue of Xtilde^T Xtilde.
/// Loose tolerances are fine here since eta only needs to sit above the
/// spectral radius by a factor.
PowerResult power_method(const StackedGram& g, double tol = 1e-2,
                         int max_iter = 100);

}  // namespace qfuse
