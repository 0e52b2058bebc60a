#include "qfuse/linops.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace qfuse {

DifferenceOperator::DifferenceOperator(Index p) : p_(p) {
  if (p < 2) throw std::invalid_argument("DifferenceOperator: p must be >= 2");
}

void DifferenceOperator::apply(const Vector& beta, Vector& out) const {
  if (beta.size() != p_)
    throw std::invalid_argument("diff_apply: dimension mismatch");
  out.resize(p_ - 1);
  for (Index j = 0; j < p_ - 1; ++j) out[j] = beta[j] - beta[j + 1];
}

void DifferenceOperator::applyAdjoint(const Vector& v, Vector& out) const {
  if (v.size() != p_ - 1)
    throw std::invalid_argument("diff_adjoint: dimension mismatch");
  out.resize(p_);
  out[0] = v[0];
  for (Index j = 1; j < p_ - 1; ++j) out[j] = v[j] - v[j - 1];
  out[p_ - 1] = -v[p_ - 2];
}

Vector DifferenceOperator::apply(const Vector& beta) const {
  Vector out;
  apply(beta, out);
  return out;
}

Vector DifferenceOperator::applyAdjoint(const Vector& v) const {
  Vector out;
  applyAdjoint(v, out);
  return out;
}

DesignOperator DesignOperator::dense(Matrix X, Vector gamma) {
  if (X.rows() != gamma.size())
    throw std::invalid_argument("DesignOperator: gamma length != rows");
  if (!X.allFinite() || !gamma.allFinite())
    throw std::invalid_argument("DesignOperator: non-finite entries");
  DesignOperator op;
  op.kind_ = Kind::Dense;
  op.n_ = X.rows();
  op.p_ = X.cols();
  op.X_ = std::move(X);
  op.gamma_ = std::move(gamma);
  return op;
}

DesignOperator DesignOperator::identity(Index p) {
  DesignOperator op;
  op.kind_ = Kind::Identity;
  op.n_ = p;
  op.p_ = p;
  return op;
}

void DesignOperator::apply(const Vector& beta, Vector& out) const {
  if (beta.size() != p_)
    throw std::invalid_argument("DesignOperator::apply: dimension mismatch");
  if (kind_ == Kind::Identity) {
    out = beta;
  } else {
    out.noalias() = X_ * beta;
  }
}

void DesignOperator::applyAdjoint(const Vector& res, Vector& out) const {
  if (res.size() != n_)
    throw std::invalid_argument(
        "DesignOperator::applyAdjoint: dimension mismatch");
  if (kind_ == Kind::Identity) {
    out = res;
  } else {
    out.noalias() = X_.transpose() * res;
  }
}

Vector DesignOperator::apply(const Vector& beta) const {
  Vector out;
  apply(beta, out);
  return out;
}

Vector DesignOperator::applyAdjoint(const Vector& res) const {
  Vector out;
  applyAdjoint(res, out);
  return out;
}

double DesignOperator::gammaDot(const Vector& r) const {
  if (kind_ == Kind::Identity) return 0.0;
  return gamma_.dot(r);
}

void StackedGram::apply(const Vector& tilde_beta, Vector& out) const {
  const bool intercept = design->hasIntercept();
  const Index p = design->cols();
  if (tilde_beta.size() != dim())
    throw std::invalid_argument("StackedGram::apply: dimension mismatch");

  const auto beta = tilde_beta.tail(p);
  Vector fit;  // X beta + gamma beta0
  design->apply(beta, fit);
  if (intercept) fit += tilde_beta[0] * design->gamma();

  Vector fused = diff->apply(beta);

  Vector xt, ft;
  design->applyAdjoint(fit, xt);
  diff->applyAdjoint(fused, ft);

  out.resize(dim());
  if (intercept) {
    out[0] = mu1 * design->gammaDot(fit);
    out.tail(p) = mu1 * xt + mu2 * ft;
  } else {
    out = mu1 * xt + mu2 * ft;
  }
}

Vector StackedGram::apply(const Vector& tilde_beta) const {
  Vector out;
  apply(tilde_beta, out);
  return out;
}

PowerResult power_method(const StackedGram& g, double tol, int max_iter) {
  if (tol <= 0) throw std::invalid_argument("power_method: tol must be > 0");
  const Index d = g.dim();

  // All-ones start plus a fixed-seed perturbation so we do not stagnate on a
  // start vector orthogonal to the dominant eigenvector.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector q = Vector::Ones(d);
  for (Index i = 0; i < d; ++i) q[i] += 0.1 * gauss(rng);
  q.normalize();

  PowerResult result;
  double est = 0.0;
  Vector aq;
  for (int it = 1; it <= max_iter; ++it) {
    g.apply(q, aq);
    const double norm = aq.norm();
    result.iterations = it;
    if (norm == 0.0) {  // q in the null space; operator may still be nonzero
      result.value = 0.0;
      result.converged = true;
      return result;
    }
    const double prev = est;
    est = norm;  // Rayleigh quotient of the PSD operator at unit q
    q = aq / norm;
    if (it > 1 && std::abs(est - prev) <= tol * est) {
      result.value = est;
      result.converged = true;
      return result;
    }
  }
  result.value = est;
  result.converged = false;
  return result;
}

}  // namespace qfuse
