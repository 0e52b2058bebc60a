#include <doctest.h>

#include <sstream>

#include "qfuse/bench.hpp"

using namespace qfuse;

TEST_CASE("recovery metrics count the strict 0.1 bands") {
  Vector star(5), hat(5);
  star << 2.0, 2.0, 0.0, 0.0, 0.0;
  hat << 2.05, 1.5, 0.05, 0.2, 0.0;
  const RecoveryMetrics m = recovery_metrics(hat, star, {0, 1});
  CHECK(m.n_close_active == 1);
  CHECK(m.max_err_active == doctest::Approx(0.5));
  CHECK(m.n_small_inactive == 2);
  CHECK(m.max_inactive == doctest::Approx(0.2));

  Vector wrong(3);
  CHECK_THROWS_AS(recovery_metrics(hat, wrong, {}), std::invalid_argument);
}

TEST_CASE("classification metrics") {
  Vector pred(4), labels(4), beta(6);
  pred << 1, -1, 1, 1;
  labels << 1, -1, -1, 1;
  beta << 0.5, 0.0, 1e-9, -0.2, 0.0, 1e-3;
  const ClassMetrics m = class_metrics(pred, labels, beta, {0, 1, 2}, 37, 1.5);
  CHECK(m.car == doctest::Approx(0.75));
  CHECK(m.nnc == 3);   // |.| > 1e-6: indices 0, 3, 5
  CHECK(m.ntsf == 1);  // only index 0 within the truth support
  CHECK(m.iters == 37);
  CHECK(m.wall_time == 1.5);
}

TEST_CASE("unknown experiments and bad reps are rejected") {
  ExperimentSpec spec;
  spec.name = "no-such-thing";
  CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
  spec.name = "class-example1";
  spec.reps = 0;
  CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
}

TEST_CASE("planar boundary experiment recovers a positive slope") {
  ExperimentSpec spec;
  spec.name = "class-example1";
  spec.reps = 3;
  spec.seed = 42;
  spec.params = {{"n", 200}, {"lambda1", 0.001}, {"lambda2", 0.001},
                 {"max_iter", 4000}};
  const MetricsTable t = run_experiment(spec);
  CHECK(t.columns == std::vector<std::string>{"slope", "intercept", "iters"});
  CHECK(t.rows.size() == 3);
  CHECK(t.mean.size() == 3);
  CHECK(t.stddev.size() == 3);
  CHECK(t.mean[0] > 1.0);  // boundary tilts the right way
  CHECK(t.stddev[2] >= 0.0);

  // replication seeds are seed + rep, so the table is reproducible
  const MetricsTable u = run_experiment(spec);
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    CHECK(t.rows[r] == u.rows[r]);
}

TEST_CASE("single-rep tables report zero spread") {
  ExperimentSpec spec;
  spec.name = "flsa-pulse";
  spec.reps = 1;
  spec.params = {{"n", 150}, {"lambda2", 0.05}, {"max_iter", 3000}};
  const MetricsTable t = run_experiment(spec);
  CHECK(t.rows.size() == 1);
  for (double s : t.stddev) CHECK(s == 0.0);
  CHECK(t.mean[0] >= 0.0);  // f1
  CHECK(t.mean[0] <= 1.0);
}

TEST_CASE("metrics table serialization") {
  MetricsTable t;
  t.columns = {"a", "b"};
  t.rows = {{1.0, 2.0}, {3.0, 4.0}};
  t.mean = {2.0, 3.0};
  t.stddev = {1.4142135623730951, 1.4142135623730951};

  std::ostringstream csv;
  write_csv(t, csv);
  std::istringstream is(csv.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "rep,a,b");
  std::getline(is, line);
  CHECK(line == "0,1,2");
  std::getline(is, line);
  CHECK(line == "1,3,4");
  std::getline(is, line);
  CHECK(line == "mean,2,3");
  std::getline(is, line);
  CHECK(line.substr(0, 4) == "std,");

  std::ostringstream json;
  write_json(t, json);
  const std::string s = json.str();
  CHECK(s.find("\"columns\": [\"a\", \"b\"]") != std::string::npos);
  CHECK(s.find("\"rows\": [[1, 2], [3, 4]]") != std::string::npos);
  CHECK(s.find("\"mean\": [2, 3]") != std::string::npos);
}
