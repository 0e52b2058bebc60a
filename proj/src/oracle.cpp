#include "qfuse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qfuse/parallel.hpp"

namespace qfuse {

double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: empty bracket");
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return (a + b) / 2.0;
}

double scalar_prox_oracle(ProxObjective id, double tau, Index n, double mu,
                          double z0) {
  if (mu <= 0) throw std::invalid_argument("scalar_prox_oracle: mu <= 0");
  // Right-derivative of the loss term; monotone since each loss is convex.
  // Value-comparison search (e.g. golden section) stalls at sqrt(machine eps)
  // on these flat-bottomed objectives, so the minimizer is located by
  // bisecting the sign change of the full subgradient instead.
  std::function<double(double)> loss_dplus;
  switch (id) {
    case ProxObjective::Quantile:
      loss_dplus = [=](double z) {
        return (z < 0 ? tau - 1.0 : tau) / static_cast<double>(n);
      };
      break;
    case ProxObjective::Hinge:
      loss_dplus = [](double z) { return z < 0 ? 0.0 : 1.0; };
      break;
    case ProxObjective::L2Norm:
      loss_dplus = [](double z) { return z < 0 ? -1.0 : 1.0; };
      break;
    case ProxObjective::LeastSquares:
      loss_dplus = [](double z) { return 2.0 * z; };
      break;
  }
  const auto dplus = [&](double z) { return loss_dplus(z) + mu * (z - z0); };

  // The quadratic term pins the minimizer near z0; the loss can only pull it
  // toward zero by at most its slope over mu (at most (1 + 1/n)/mu here).
  const double pad = 2.0 / mu + 1.0;
  double lo = std::min(z0, 0.0) - pad;
  double hi = std::max(z0, 0.0) + pad;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (dplus(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double lipschitz_bound(const UnifiedProblem& prob) {
  const Index n = prob.n();
  const Index p = prob.p();
  double loss_slope = 0.0;
  double row_norm_sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    double sq = prob.hasIntercept() ? 1.0 : 0.0;
    if (prob.design.kind() == DesignOperator::Kind::Dense) {
      sq = prob.design.gamma()[i] * prob.design.gamma()[i] +
           prob.design.matrix().row(i).squaredNorm();
    } else {
      sq = 1.0;
    }
    row_norm_sum += std::sqrt(sq);
  }
  switch (prob.loss) {
    case Loss::Quantile:
      loss_slope = std::max(prob.tau, 1.0 - prob.tau) * row_norm_sum /
                   static_cast<double>(n);
      break;
    case Loss::Hinge:
      loss_slope = row_norm_sum;
      break;
    case Loss::SquareRoot:
      loss_slope = std::sqrt(row_norm_sum);
      break;
    case Loss::LeastSquares:
      // Local slope over the search box; crude but only used for reporting.
      loss_slope = 2.0 * (prob.ybar.lpNorm<Eigen::Infinity>() + 10.0 * p) *
                   row_norm_sum;
      break;
  }
  return loss_slope + prob.lambda1 * std::sqrt(static_cast<double>(p)) +
         2.0 * prob.lambda2 * std::sqrt(static_cast<double>(p - 1));
}

}  // namespace

OracleResult oracle_solve(const UnifiedProblem& prob, const OracleConfig& cfg) {
  const Index p = prob.p();
  const int dims = static_cast<int>(p) + (prob.hasIntercept() ? 1 : 0);
  if (dims > 4)
    throw std::invalid_argument("oracle_solve: dimension too large (p+1 > 4)");
  if (cfg.points_per_axis < 3 || cfg.refinement_rounds < 1)
    throw std::invalid_argument("oracle_solve: bad config");

  const int m = cfg.points_per_axis;
  double half_width = (cfg.coarse_hi - cfg.coarse_lo) / 2.0;
  std::vector<double> center(dims, (cfg.coarse_hi + cfg.coarse_lo) / 2.0);

  std::int64_t total = 1;
  for (int d = 0; d < dims; ++d) total *= m;

  std::vector<double> best_point(center);
  double best_value = std::numeric_limits<double>::infinity();
  double spacing = 0.0;

  for (int round = 0; round < cfg.refinement_rounds; ++round) {
    spacing = 2.0 * half_width / (m - 1);
    std::vector<std::vector<double>> axes(dims);
    for (int d = 0; d < dims; ++d) {
      axes[d].resize(m);
      for (int j = 0; j < m; ++j)
        axes[d][j] = center[d] - half_width + spacing * j;
    }

    // One slot per first-axis slice so parallel evaluation merges
    // deterministically.
    std::vector<double> slice_best(m, std::numeric_limits<double>::infinity());
    std::vector<std::vector<double>> slice_point(
        m, std::vector<double>(dims, 0.0));

    parallel_for(0, m, [&](std::int64_t slice) {
      Coefficients c;
      c.beta = Vector::Zero(p);
      std::vector<int> idx(dims, 0);
      idx[0] = static_cast<int>(slice);
      const std::int64_t inner = total / m;
      for (std::int64_t it = 0; it < inner; ++it) {
        // decode mixed-radix counter for axes 1..dims-1
        std::int64_t rem = it;
        for (int d = dims - 1; d >= 1; --d) {
          idx[d] = static_cast<int>(rem % m);
          rem /= m;
        }
        int off = 0;
        if (prob.hasIntercept()) {
          c.beta0 = axes[0][idx[0]];
          off = 1;
        } else {
          c.beta0 = 0.0;
        }
        for (int d = off; d < dims; ++d) c.beta[d - off] = axes[d][idx[d]];
        const double val = objective(prob, c);
        if (val < slice_best[slice]) {
          slice_best[slice] = val;
          auto& pt = slice_point[slice];
          for (int d = 0; d < dims; ++d) pt[d] = axes[d][idx[d]];
        }
      }
    });

    for (int slice = 0; slice < m; ++slice) {
      if (slice_best[slice] < best_value) {
        best_value = slice_best[slice];
        best_point = slice_point[slice];
      }
    }
    center = best_point;
    half_width /= 4.0;
  }

  OracleResult result;
  result.coefficients.beta = Vector::Zero(p);
  int off = 0;
  if (prob.hasIntercept()) {
    result.coefficients.beta0 = best_point[0];
    off = 1;
  }
  for (int d = off; d < dims; ++d)
    result.coefficients.beta[d - off] = best_point[d];
  result.objective = best_value;
  result.error_bound = lipschitz_bound(prob) * spacing;
  return result;
}

}  // namespace qfuse
