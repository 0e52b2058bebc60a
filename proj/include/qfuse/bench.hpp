#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qfuse/model.hpp"

namespace qfuse {

/// Support-recovery counts with the strict |.| < 0.1 threshold.
struct RecoveryMetrics {
  int n_close_active = 0;      // #{|beta_i - beta*_i| < 0.1, i in A}
  double max_err_active = 0.0;
  int n_small_inactive = 0;    // #{|beta_i| < 0.1, i in A^c}
  double max_inactive = 0.0;
};

RecoveryMetrics recovery_metrics(const Vector& beta_hat,
                                 const Vector& beta_star,
                                 const std::vector<Index>& active_set);

struct ClassMetrics {
  double car = 0.0;   // classification accuracy rate
  int nnc = 0;        // nonzero coefficients (|.| > 1e-6)
  int ntsf = 0;       // true selected features
  int iters = 0;
  double wall_time = 0.0;  // seconds
};

ClassMetrics class_metrics(const Vector& predictions, const Vector& labels,
                           const Vector& beta_hat,
                           const std::vector<Index>& truth_support, int iters,
                           double wall_time);

struct ExperimentSpec {
  std::string name;
  std::map<std::string, double> params;
  int reps = 1;
  std::uint64_t seed = 42;
};

struct MetricsTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // one row per rep
  std::vector<double> mean;
  std::vector<double> stddev;  // unbiased (n-1); zero when reps == 1
};

/// Known experiments:
///   class-example1      params: n, tau, lambda1, lambda2, mu
///   class-example2      params: n, alpha, tau, lambda1, lambda2, mu, hinge
///   class-example3      params: n, m, p, rho, alpha, tau, lambda1, lambda2, mu
///   regression-example1 params: n, p, groups, active, noise (0=normal, 1=t,
///                       2=cauchy, 3=mixed), tau, lambda1, lambda2, mu, ls
///   flsa-pulse          params: n, noise, tau, lambda1, lambda2, mu, ls
/// Replication seeds are seed + rep index. Throws on unknown names.
MetricsTable run_experiment(const ExperimentSpec& spec);

void write_csv(const MetricsTable& table, std::ostream& os);
void write_json(const MetricsTable& table, std::ostream& os);

}  // namespace qfuse
