#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "planted/harness.hpp"

using namespace planted;

namespace {
ExperimentConfig bc_config(int trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.problem.problem = Problem::BC;
  c.problem.n = 200;
  c.problem.k = 40;
  c.problem.mu = 1.0;
  c.solver.name = "bc_sum_max";
  c.trials = trials;
  c.seed = seed;
  return c;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}
}  // namespace

TEST(Schedule, PisExample) {
  const auto s = param_schedule("pis", 1.0, 0.6, std::nullopt, 1024);
  EXPECT_EQ(s.ell, 10);
  ASSERT_TRUE(s.gamma.has_value());
  EXPECT_NEAR(*s.gamma, 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(s.N, 1024.0 * 1024.0);
  EXPECT_DOUBLE_EQ(s.K, 1024.0 * std::ceil(std::pow(1024.0, 0.2) - 1e-9));
  EXPECT_TRUE(s.information_impossible);
}

TEST(Schedule, RegionErrors) {
  EXPECT_THROW(param_schedule("pis", 1.0, 0.9, std::nullopt, 1024), ParameterError);
  EXPECT_THROW(param_schedule("pds_gaussian", 1.0, 0.5, std::nullopt, 1024), ParameterError);
  EXPECT_THROW(param_schedule("ros", 0.0, 0.3, std::nullopt, 1024), ParameterError);
  EXPECT_THROW(param_schedule("nope", 0.5, 0.3, std::nullopt, 1024), ParameterError);
}

TEST(Schedule, KMonotoneInBeta) {
  for (const std::string t : {"pis", "pds_gaussian", "bc", "ros"}) {
    double prev = -1;
    for (double beta = 0.05; beta < 0.5; beta += 0.05) {
      const auto s = param_schedule(t, 0.5, beta, std::nullopt, 4096);
      EXPECT_GE(s.K / s.N, prev) << t;
      prev = s.K / s.N;
    }
  }
}

TEST(Schedule, SuppliedGammaNoted) {
  const auto s = param_schedule("pis", 1.0, 0.6, 0.3, 1024);
  EXPECT_FALSE(s.notes.empty());
}

TEST(Experiment, BcErrorsSmall) {
  const auto rep = run_error_experiment(bc_config(50, 3));
  EXPECT_LE(rep.type1 + rep.type2, 0.05);
  EXPECT_EQ(rep.trials, 50);
  EXPECT_LE(rep.type1_ci.lo, rep.type1);
  EXPECT_GE(rep.type1_ci.hi, rep.type1);
}

TEST(Experiment, Deterministic) {
  const auto a = run_error_experiment(bc_config(10, 9));
  const auto b = run_error_experiment(bc_config(10, 9));
  EXPECT_EQ(a.type1, b.type1);
  EXPECT_EQ(a.type2, b.type2);
}

TEST(Experiment, SingleTrialRatesDegenerate) {
  auto c = bc_config(1, 4);
  c.problem.mu = 0.0;
  const auto rep = run_error_experiment(c);
  EXPECT_TRUE(rep.type1 == 0.0 || rep.type1 == 1.0);
  EXPECT_TRUE(rep.type2 == 0.0 || rep.type2 == 1.0);
}

TEST(Experiment, ConfigValidation) {
  auto c = bc_config(0, 1);
  EXPECT_THROW(c.validate(), ParameterError);
  c = bc_config(5, 1);
  c.solver.name = "missing";
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(Experiment, PipelineRuns) {
  ExperimentConfig c;
  c.problem.problem = Problem::PC;
  c.problem.n = 64;
  c.problem.k = 16;
  c.pipeline = PipelineSpec{"bc_reduce", {{"ell", 0}}};
  c.solver.name = "bc_sum_max";
  c.trials = 3;
  c.seed = 5;
  const auto rep = run_error_experiment(c);
  EXPECT_EQ(rep.trials, 3);
  EXPECT_EQ(rep.failures_h0 + rep.failures_h1, 0);
  ASSERT_TRUE(rep.pipeline.has_value());
}

TEST(Sweep, HeaderRowsAndReproducible) {
  auto c = bc_config(4, 11);
  c.problem.n = 60;
  std::vector<GridPoint> grid;
  for (double a : {0.2, 0.8})
    for (double b : {0.3, 0.6}) grid.push_back(GridPoint{a, b, std::nullopt});
  const std::string out = phase_sweep(grid, c);
  std::istringstream is(out);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "alpha,beta,n,k,extra_params,solver,type1,type2,trials,seed");
  EXPECT_EQ(count_lines(out), 5);
  EXPECT_EQ(out, phase_sweep(grid, c));
}

TEST(Sweep, ParamsAt) {
  ProblemParams base;
  base.problem = Problem::PIS;
  base.n = 100;
  const auto p = params_at(base, 0.5, 0.5);
  EXPECT_EQ(p.k, 10);
  EXPECT_NEAR(p.q, 0.1, 1e-12);
}
