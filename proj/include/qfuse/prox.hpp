#pragma once

#include "qfuse/linops.hpp"

namespace qfuse {

/// Scaling context for the check-loss prox: minimizes
/// (1/n) rho_tau(z) + (mu/2)(z - z0)^2 component-wise.
struct ProxScale {
  double mu = 1.0;
  Index n = 1;
  double tau = 0.5;
};

double soft_threshold(double z0, double kappa);
Vector soft_threshold(const Vector& z0, double kappa);

double quantile_prox(double z0, const ProxScale& s);
Vector quantile_prox(const Vector& z0, const ProxScale& s);

/// Prox of ||z||_2 (vector-level shrinkage). Returns 0 when ||z0|| <= 1/mu.
Vector l2_norm_prox(const Vector& z0, double mu);

/// Prox of sum_i max(0, z_i).
double hinge_prox(double z0, double mu);
Vector hinge_prox(const Vector& z0, double mu);

/// Minimizer of ||r||^2 + (mu1/2)||r - w||^2, i.e. r = mu1 w / (2 + mu1).
Vector ls_r_update(const Vector& w, double mu1);

}  // namespace qfuse
