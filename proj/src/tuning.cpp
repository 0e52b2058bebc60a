#include "qfuse/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qfuse/parallel.hpp"

namespace qfuse {

Grid Grid::defaults() {
  Grid g;
  g.lambda_values.reserve(100);
  for (int i = 1; i <= 100; ++i) g.lambda_values.push_back(i * 0.01);
  return g;
}

void Grid::validate(Index n) const {
  if (folds < 2) throw std::invalid_argument("Grid: folds must be >= 2");
  if (n < folds) throw std::invalid_argument("Grid: need n >= folds");
  if (mu_values.empty() || lambda_values.empty())
    throw std::invalid_argument("Grid: empty axis");
  for (double m : mu_values)
    if (m <= 0) throw std::invalid_argument("Grid: mu values must be positive");
  for (double l : lambda_values)
    if (l <= 0)
      throw std::invalid_argument("Grid: lambda values must be positive");
}

namespace {

/// Fold ids per sample: seeded shuffle, stratified by label for classification.
std::vector<int> assign_folds(const Dataset& d, int folds,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> fold_of(d.n(), 0);
  if (d.task == Task::Classification) {
    std::vector<Index> pos, neg;
    for (Index i = 0; i < d.n(); ++i)
      (d.y[i] > 0 ? pos : neg).push_back(i);
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    int next = 0;
    for (Index i : pos) fold_of[i] = next++ % folds;
    for (Index i : neg) fold_of[i] = next++ % folds;
  } else {
    std::vector<Index> order(d.n());
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (Index k = 0; k < d.n(); ++k)
      fold_of[order[k]] = static_cast<int>(k % folds);
  }
  return fold_of;
}

struct FoldSplit {
  Dataset train;
  Matrix test_X;
  Vector test_y;
  bool usable = true;
};

FoldSplit make_split(const Dataset& d, const std::vector<int>& fold_of,
                     int fold) {
  FoldSplit s;
  std::vector<Index> train_idx, test_idx;
  for (Index i = 0; i < d.n(); ++i)
    (fold_of[i] == fold ? test_idx : train_idx).push_back(i);

  s.train.task = d.task;
  s.train.X.resize(static_cast<Index>(train_idx.size()), d.p());
  s.train.y.resize(static_cast<Index>(train_idx.size()));
  for (Index k = 0; k < s.train.n(); ++k) {
    s.train.X.row(k) = d.X.row(train_idx[k]);
    s.train.y[k] = d.y[train_idx[k]];
  }
  s.test_X.resize(static_cast<Index>(test_idx.size()), d.p());
  s.test_y.resize(static_cast<Index>(test_idx.size()));
  for (Index k = 0; k < s.test_y.size(); ++k) {
    s.test_X.row(k) = d.X.row(test_idx[k]);
    s.test_y[k] = d.y[test_idx[k]];
  }

  if (d.task == Task::Classification) {
    const double first = s.train.y.size() > 0 ? s.train.y[0] : 0.0;
    bool single = true;
    for (Index k = 1; k < s.train.y.size(); ++k)
      if (s.train.y[k] != first) {
        single = false;
        break;
      }
    if (single || s.train.y.size() == 0) s.usable = false;
  }
  return s;
}

double fold_score(const FoldSplit& split, const Coefficients& c, Task task,
                  double tau) {
  if (task == Task::Classification) {
    const Vector pred = predict(split.test_X, c, task);
    double wrong = 0;
    for (Index i = 0; i < pred.size(); ++i)
      if (pred[i] != split.test_y[i]) wrong += 1.0;
    return wrong / static_cast<double>(pred.size());
  }
  const Vector fit = predict(split.test_X, c, task);
  double loss = 0;
  for (Index i = 0; i < fit.size(); ++i)
    loss += check_loss(split.test_y[i] - fit[i], tau);
  return loss / static_cast<double>(fit.size());
}

}  // namespace

CvResult cross_validate(const Dataset& d, const Grid& grid, double tau,
                        const SolverConfig& cfg, std::uint64_t fold_seed,
                        Loss loss) {
  d.validate();
  grid.validate(d.n());
  cfg.validate();

  const std::vector<int> fold_of = assign_folds(d, grid.folds, fold_seed);
  std::vector<FoldSplit> splits;
  splits.reserve(grid.folds);
  for (int f = 0; f < grid.folds; ++f)
    splits.push_back(make_split(d, fold_of, f));
  for (const auto& s : splits)
    if (!s.usable)
      std::cerr << "cross_validate: skipping a single-class fold\n";

  struct Point {
    double mu, l1, l2;
  };
  std::vector<Point> points;
  for (double mu : grid.mu_values)
    for (double l1 : grid.lambda_values)
      for (double l2 : grid.lambda_values) points.push_back({mu, l1, l2});

  CvResult result;
  result.table.resize(points.size());

  parallel_for(0, static_cast<std::int64_t>(points.size()), [&](std::int64_t k) {
    const Point& pt = points[static_cast<std::size_t>(k)];
    SolverConfig run_cfg = cfg;
    run_cfg.mu_init = pt.mu;

    double total = 0.0;
    int used = 0;
    for (const auto& split : splits) {
      if (!split.usable) continue;
      // The grid's lambdas are solver-side values, so for classification
      // they are applied after the 1/(1+tau) rescaling.
      UnifiedProblem prob =
          d.task == Task::Regression
              ? build_unified_regression(split.train, tau, pt.l1, pt.l2, loss)
              : build_unified_classification(split.train, tau, pt.l1, pt.l2,
                                             loss);
      prob.lambda1 = pt.l1;
      prob.lambda2 = pt.l2;
      const SolveReport report = solve(prob, run_cfg);
      total += fold_score(split, report.coefficients, d.task, prob.tau);
      ++used;
    }
    CvEntry entry;
    entry.mu = pt.mu;
    entry.lambda1 = pt.l1;
    entry.lambda2 = pt.l2;
    entry.folds_used = used;
    entry.score = used > 0 ? total / used
                           : std::numeric_limits<double>::infinity();
    result.table[static_cast<std::size_t>(k)] = entry;
  });

  // argmin with deterministic tie-break: smallest lambda1, then lambda2,
  // then mu.
  const CvEntry* best = nullptr;
  for (const auto& e : result.table) {
    if (e.folds_used == 0) continue;
    if (best == nullptr || e.score < best->score ||
        (e.score == best->score &&
         std::tie(e.lambda1, e.lambda2, e.mu) <
             std::tie(best->lambda1, best->lambda2, best->mu)))
      best = &e;
  }
  if (best == nullptr)
    throw std::runtime_error("cross_validate: no usable folds");
  result.mu = best->mu;
  result.lambda1 = best->lambda1;
  result.lambda2 = best->lambda2;
  result.best_score = best->score;
  return result;
}

}  // namespace qfuse
