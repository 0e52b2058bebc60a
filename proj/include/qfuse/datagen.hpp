#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qfuse/model.hpp"

namespace qfuse {

struct NoiseSpec {
  enum class Kind { Normal, StudentT, Cauchy, MixedNormal };
  Kind kind = Kind::Normal;
  double sigma = 1.0;   // Normal
  double df = 2.0;      // StudentT
  double weight = 0.9;  // MixedNormal: P(first component)
  double sigma1 = 1.0;
  double sigma2 = 5.0;

  static NoiseSpec normal(double sigma = 1.0);
  static NoiseSpec student_t(double df = 2.0);
  static NoiseSpec cauchy();
  static NoiseSpec mixed_normal(double weight = 0.9, double sigma1 = 1.0,
                                double sigma2 = 5.0);

  double sample(std::mt19937_64& rng) const;
};

/// Two Gaussian classes in the plane with Bayes boundary x2 = 2.5 x1.
/// round(noise_ratio * n) rows have their label redrawn by a fair coin.
Dataset gen_two_gaussians(Index n, double noise_ratio, std::uint64_t seed);

/// High-dimensional two-class data where only the first 10 features matter;
/// their covariance block has off-diagonal rho.
Dataset gen_highdim_classes(Index n, Index p, double rho, std::uint64_t seed,
                            double noise_ratio = 0.0);

struct BlockyInstance {
  Dataset data;
  Vector beta_star;
  std::vector<Index> active_set;  // indices of the active groups' coordinates
};

/// Rows ~ N(0, Omega) with Omega_ij = 0.5^|i-j|, columns normalized to l2
/// norm sqrt(n). beta* is constant U[-3,3] on each of `active` randomly
/// chosen groups (p split into `groups` equal blocks), zero elsewhere.
BlockyInstance gen_blocky_regression(Index n, Index p, Index groups,
                                     Index active, const NoiseSpec& noise,
                                     std::uint64_t seed);

/// y_i = beta*_i + amplitude * eps_i.
Vector gen_pulse(const Vector& beta_star, const NoiseSpec& noise,
                 std::uint64_t seed, double amplitude = 0.2);

/// Piecewise-constant test pulse with blocks of varying width.
Vector default_pulse(Index n);

}  // namespace qfuse
