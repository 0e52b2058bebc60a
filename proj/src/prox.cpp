#include "qfuse/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfuse {

double soft_threshold(double z0, double kappa) {
  if (kappa < 0) throw std::invalid_argument("soft_threshold: kappa < 0");
  const double mag = std::abs(z0) - kappa;
  if (mag <= 0) return 0.0;
  return z0 > 0 ? mag : -mag;
}

Vector soft_threshold(const Vector& z0, double kappa) {
  if (kappa < 0) throw std::invalid_argument("soft_threshold: kappa < 0");
  Vector out(z0.size());
  for (Index i = 0; i < z0.size(); ++i) out[i] = soft_threshold(z0[i], kappa);
  return out;
}

double quantile_prox(double z0, const ProxScale& s) {
  if (s.mu <= 0 || s.n < 1 || s.tau < 0 || s.tau > 1)
    throw std::invalid_argument("quantile_prox: invalid scale");
  const double nm = static_cast<double>(s.n) * s.mu;
  return std::max(z0 - s.tau / nm, std::min(0.0, z0 + (1.0 - s.tau) / nm));
}

Vector quantile_prox(const Vector& z0, const ProxScale& s) {
  Vector out(z0.size());
  for (Index i = 0; i < z0.size(); ++i) out[i] = quantile_prox(z0[i], s);
  return out;
}

Vector l2_norm_prox(const Vector& z0, double mu) {
  if (mu <= 0) throw std::invalid_argument("l2_norm_prox: mu must be > 0");
  const double norm = z0.norm();
  // Inside the shrinkage ball (covers z0 = 0, where the formula is 0/0).
  if (norm <= 1.0 / mu) return Vector::Zero(z0.size());
  return z0 * ((norm - 1.0 / mu) / norm);
}

double hinge_prox(double z0, double mu) {
  if (mu <= 0) throw std::invalid_argument("hinge_prox: mu must be > 0");
  return std::min(z0, std::max(0.0, std::abs(z0) - 1.0 / mu));
}

Vector hinge_prox(const Vector& z0, double mu) {
  Vector out(z0.size());
  for (Index i = 0; i < z0.size(); ++i) out[i] = hinge_prox(z0[i], mu);
  return out;
}

Vector ls_r_update(const Vector& w, double mu1) {
  if (mu1 <= 0) throw std::invalid_argument("ls_r_update: mu1 must be > 0");
  return w * (mu1 / (2.0 + mu1));
}

}  // namespace qfuse
