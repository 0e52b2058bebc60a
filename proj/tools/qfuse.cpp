// qfuse command-line driver: solve / cv / gen / bench / flsa.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qfuse/bench.hpp"
#include "qfuse/datagen.hpp"
#include "qfuse/io.hpp"
#include "qfuse/model.hpp"
#include "qfuse/solver.hpp"
#include "qfuse/tuning.hpp"

namespace {

using namespace qfuse;

struct CommonOpts {
  double tau = 0.5;
  double lambda1 = 0.01;
  double lambda2 = 0.01;
  std::string loss = "quantile";
  // solver knobs
  double mu = 0.1;
  double eps = 1e-4;
  int max_iter = 10000;
  double eta_factor = 0.8;
  bool no_adaptive_mu = false;
  int mu_freeze_iter = 1000;
  int trace_every = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tau", o.tau, "Quantile level")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--lambda1", o.lambda1, "Sparsity penalty")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--lambda2", o.lambda2, "Fusion penalty")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--loss", o.loss, "quantile|ls|sqrt|hinge")
      ->check(CLI::IsMember({"quantile", "ls", "sqrt", "hinge"}));
  cmd->add_option("--mu", o.mu, "Initial penalty parameter")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--eps", o.eps, "Stopping tolerance (eps1 = eps2)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", o.max_iter)->check(CLI::PositiveNumber);
  cmd->add_option("--eta-factor", o.eta_factor,
                  "Multiplier on the spectral radius (must exceed 0.75)");
  cmd->add_flag("--no-adaptive-mu", o.no_adaptive_mu, "Freeze mu at --mu");
  cmd->add_option("--mu-freeze-iter", o.mu_freeze_iter,
                  "Iteration after which mu stops adapting");
  cmd->add_option("--trace-every", o.trace_every, "Trace recording stride")
      ->check(CLI::PositiveNumber);
}

SolverConfig make_config(const CommonOpts& o) {
  SolverConfig cfg;
  cfg.mu_init = o.mu;
  cfg.eps1 = cfg.eps2 = o.eps;
  cfg.max_iter = o.max_iter;
  cfg.eta_factor = o.eta_factor;
  cfg.adaptive_mu = !o.no_adaptive_mu;
  cfg.mu_freeze_iter = o.mu_freeze_iter;
  cfg.trace_every = o.trace_every;
  return cfg;
}

Loss parse_loss(const std::string& name) {
  if (name == "quantile") return Loss::Quantile;
  if (name == "ls") return Loss::LeastSquares;
  if (name == "sqrt") return Loss::SquareRoot;
  return Loss::Hinge;
}

void write_report(const SolveReport& report, const std::string& output,
                  const std::string& format, const std::string& coef_out) {
  std::ostringstream os;
  if (format == "json")
    emit_report_json(report, os);
  else
    emit_report_csv(report, os);
  if (output.empty() || output == "-")
    std::cout << os.str();
  else
    write_file(output, os.str());
  if (!coef_out.empty()) {
    std::ostringstream cs;
    emit_coefficients_csv(report.coefficients, cs);
    write_file(coef_out, cs.str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Fused-lasso solver for quantile regression and "
               "pinball-loss classification"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "Fit one problem");
  CommonOpts so;
  std::string s_input, s_format = "csv", s_task = "regression";
  std::string s_output, s_out_format = "json", s_coef;
  Index s_p_hint = 0;
  bool allow_maxiter = false;
  solve_cmd->add_option("--input", s_input, "Dataset path")->required();
  solve_cmd->add_option("--format", s_format, "csv|libsvm")
      ->check(CLI::IsMember({"csv", "libsvm"}));
  solve_cmd->add_option("--task", s_task, "regression|classification")
      ->check(CLI::IsMember({"regression", "classification"}));
  solve_cmd->add_option("--p-hint", s_p_hint,
                        "Feature count for libsvm files (0 = infer)");
  solve_cmd->add_option("--output", s_output, "Report path (default stdout)");
  solve_cmd->add_option("--output-format", s_out_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  solve_cmd->add_option("--coefficients", s_coef,
                        "Also write a coefficient CSV here");
  solve_cmd->add_flag("--allow-maxiter", allow_maxiter,
                      "Exit 0 even when max_iter is hit");
  add_common(solve_cmd, so);

  // ---- flsa ----
  auto* flsa_cmd =
      app.add_subcommand("flsa", "Denoise a signal (identity design)");
  CommonOpts fo;
  std::string f_input, f_output, f_out_format = "json", f_coef;
  bool f_allow_maxiter = false;
  flsa_cmd->add_option("--input", f_input, "Signal file, one value per line")
      ->required();
  flsa_cmd->add_option("--output", f_output, "Report path (default stdout)");
  flsa_cmd->add_option("--output-format", f_out_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  flsa_cmd->add_option("--coefficients", f_coef,
                       "Also write the fitted signal as CSV");
  flsa_cmd->add_flag("--allow-maxiter", f_allow_maxiter,
                     "Exit 0 even when max_iter is hit");
  add_common(flsa_cmd, fo);

  // ---- cv ----
  auto* cv_cmd = app.add_subcommand("cv", "Cross-validated tuning");
  CommonOpts co;
  std::string c_input, c_format = "csv", c_task = "regression", c_output;
  Index c_p_hint = 0;
  int c_folds = 5;
  std::uint64_t c_seed = 42;
  std::vector<double> c_mu_grid, c_lambda_grid;
  cv_cmd->add_option("--input", c_input, "Dataset path")->required();
  cv_cmd->add_option("--format", c_format, "csv|libsvm")
      ->check(CLI::IsMember({"csv", "libsvm"}));
  cv_cmd->add_option("--task", c_task, "regression|classification")
      ->check(CLI::IsMember({"regression", "classification"}));
  cv_cmd->add_option("--p-hint", c_p_hint,
                     "Feature count for libsvm files (0 = infer)");
  cv_cmd->add_option("--folds", c_folds)->check(CLI::Range(2, 1000));
  cv_cmd->add_option("--seed", c_seed, "Fold-shuffle seed");
  cv_cmd->add_option("--mu-grid", c_mu_grid, "Override the mu grid");
  cv_cmd->add_option("--lambda-grid", c_lambda_grid,
                     "Override the lambda grid (applies to both penalties)");
  cv_cmd->add_option("--output", c_output, "Result path (default stdout)");
  add_common(cv_cmd, co);

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic dataset");
  std::string g_kind = "two-gaussians", g_output, g_noise = "normal";
  Index g_n = 500, g_p = 2, g_groups = 80, g_active = 10;
  double g_alpha = 0.0, g_rho = 0.5;
  std::uint64_t g_seed = 42;
  gen_cmd->add_option("--kind", g_kind,
                      "two-gaussians|highdim|blocky|pulse")
      ->check(CLI::IsMember({"two-gaussians", "highdim", "blocky", "pulse"}));
  gen_cmd->add_option("--n", g_n)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", g_p)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--groups", g_groups)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--active", g_active)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--alpha", g_alpha, "Label-noise fraction")
      ->check(CLI::Range(0.0, 0.99));
  gen_cmd->add_option("--rho", g_rho, "Within-block correlation");
  gen_cmd->add_option("--noise", g_noise, "normal|t|cauchy|mixed")
      ->check(CLI::IsMember({"normal", "t", "cauchy", "mixed"}));
  gen_cmd->add_option("--seed", g_seed);
  gen_cmd->add_option("--output", g_output, "CSV path (default stdout)");

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "Run a named experiment");
  std::string b_name, b_output, b_format = "csv";
  int b_reps = 10;
  std::uint64_t b_seed = 42;
  std::vector<std::string> b_params;
  bench_cmd
      ->add_option("--name", b_name,
                   "class-example1|class-example2|class-example3|"
                   "regression-example1|flsa-pulse")
      ->required();
  bench_cmd->add_option("--reps", b_reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", b_seed);
  bench_cmd->add_option("--param", b_params,
                        "key=value experiment parameter (repeatable)");
  bench_cmd->add_option("--output", b_output, "Table path (default stdout)");
  bench_cmd->add_option("--output-format", b_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  argv = app.ensure_utf8(argv);
  if (argc < 2) {
    std::cout << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*solve_cmd) {
    const Task task =
        s_task == "regression" ? Task::Regression : Task::Classification;
    const Dataset d = load_dataset(
        s_input, s_format == "csv" ? FileFormat::Csv : FileFormat::Libsvm,
        task, s_p_hint);
    const Loss loss = parse_loss(so.loss);
    const UnifiedProblem prob =
        task == Task::Regression
            ? build_unified_regression(d, so.tau, so.lambda1, so.lambda2, loss)
            : build_unified_classification(d, so.tau, so.lambda1, so.lambda2,
                                           loss);
    const SolveReport report = solve(prob, make_config(so));
    write_report(report, s_output, s_out_format, s_coef);
    return report.termination == Termination::Converged || allow_maxiter ? 0
                                                                         : 1;
  }

  if (*flsa_cmd) {
    const Vector y = load_signal(f_input);
    const UnifiedProblem prob =
        build_flsa(y, fo.tau, fo.lambda1, fo.lambda2, parse_loss(fo.loss));
    const SolveReport report = solve(prob, make_config(fo));
    write_report(report, f_output, f_out_format, f_coef);
    return report.termination == Termination::Converged || f_allow_maxiter
               ? 0
               : 1;
  }

  if (*cv_cmd) {
    const Task task =
        c_task == "regression" ? Task::Regression : Task::Classification;
    const Dataset d = load_dataset(
        c_input, c_format == "csv" ? FileFormat::Csv : FileFormat::Libsvm,
        task, c_p_hint);
    Grid grid = Grid::defaults();
    grid.folds = c_folds;
    if (!c_mu_grid.empty()) grid.mu_values = c_mu_grid;
    if (!c_lambda_grid.empty()) grid.lambda_values = c_lambda_grid;
    const CvResult result =
        cross_validate(d, grid, co.tau, make_config(co), c_seed,
                       parse_loss(co.loss));
    std::ostringstream os;
    os << "{\n  \"mu\": " << format_double(result.mu)
       << ",\n  \"lambda1\": " << format_double(result.lambda1)
       << ",\n  \"lambda2\": " << format_double(result.lambda2)
       << ",\n  \"score\": " << format_double(result.best_score) << "\n}\n";
    if (c_output.empty() || c_output == "-")
      std::cout << os.str();
    else
      write_file(c_output, os.str());
    return 0;
  }

  if (*gen_cmd) {
    std::ostringstream os;
    auto noise_spec = [&]() {
      if (g_noise == "normal") return NoiseSpec::normal();
      if (g_noise == "t") return NoiseSpec::student_t(2.0);
      if (g_noise == "cauchy") return NoiseSpec::cauchy();
      return NoiseSpec::mixed_normal();
    };
    auto dump_dataset = [&](const Dataset& d) {
      os << "y";
      for (Index j = 0; j < d.p(); ++j) os << ",x" << (j + 1);
      os << "\n";
      for (Index i = 0; i < d.n(); ++i) {
        os << format_double(d.y[i]);
        for (Index j = 0; j < d.p(); ++j)
          os << "," << format_double(d.X(i, j));
        os << "\n";
      }
    };
    if (g_kind == "two-gaussians") {
      dump_dataset(gen_two_gaussians(g_n, g_alpha, g_seed));
    } else if (g_kind == "highdim") {
      dump_dataset(gen_highdim_classes(g_n, g_p, g_rho, g_seed, g_alpha));
    } else if (g_kind == "blocky") {
      dump_dataset(
          gen_blocky_regression(g_n, g_p, g_groups, g_active, noise_spec(),
                                g_seed)
              .data);
    } else {  // pulse
      const Vector y = gen_pulse(default_pulse(g_n), noise_spec(), g_seed);
      os << "y\n";
      for (Index i = 0; i < y.size(); ++i) os << format_double(y[i]) << "\n";
    }
    if (g_output.empty() || g_output == "-")
      std::cout << os.str();
    else
      write_file(g_output, os.str());
    return 0;
  }

  // bench
  ExperimentSpec spec;
  spec.name = b_name;
  spec.reps = b_reps;
  spec.seed = b_seed;
  for (const auto& kv : b_params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--param expects key=value, got '" + kv + "'");
    spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  const MetricsTable table = run_experiment(spec);
  std::ostringstream os;
  if (b_format == "csv")
    write_csv(table, os);
  else
    write_json(table, os);
  if (b_output.empty() || b_output == "-")
    std::cout << os.str();
  else
    write_file(b_output, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "qfuse: " << e.what() << "\n";
    return 1;
  }
}
