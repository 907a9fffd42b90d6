#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "planted/random.hpp"
#include "planted/reductions.hpp"
#include "planted/stats.hpp"
#include "planted/types.hpp"

namespace planted {

struct SolverSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

// Reduction applied to a planted-clique source before the solver runs.
struct PipelineSpec {
  std::string reduction;
  nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
  ProblemParams problem;  // source problem when a pipeline is present
  std::optional<PipelineSpec> pipeline;
  SolverSpec solver;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string output;
  void validate() const;
};

struct ErrorReport {
  double type1 = 0.0;
  double type2 = 0.0;
  Interval type1_ci;
  Interval type2_ci;
  int trials = 0;
  std::uint64_t seed = 0;
  int failures_h0 = 0;  // failed trials count as errors
  int failures_h1 = 0;
  std::vector<std::string> failure_messages;
  ProblemParams params;
  std::string solver;
  std::optional<std::string> pipeline;
};

const std::vector<std::string>& solver_names();
bool solver_exists(const std::string& name);
const std::vector<std::string>& pipeline_names();

Observation generate_observation(const ProblemParams& params, Hypothesis h, RandomStream& rng);
ReductionOutput run_pipeline(const PipelineSpec& spec, const ProblemParams& source, Hypothesis h,
                             RandomStream& rng);
Verdict run_solver(const SolverSpec& spec, const Observation& obs, const ProblemParams& params);

ErrorReport run_error_experiment(const ExperimentConfig& config, RandomStream& rng);
ErrorReport run_error_experiment(const ExperimentConfig& config);  // stream from config.seed

struct ScheduleResult {
  std::string theorem;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> gamma;
  std::int64_t n = 0;
  double N = 0.0;
  double K = 0.0;
  int ell = 0;
  double k = 0.0;
  std::map<std::string, double> values;  // p, q, mu, ...
  bool information_impossible = false;   // below the statistical limit; schedule still evaluated
  std::vector<std::string> notes;
};

// Tags: pis, pds_gaussian, bc, ros. w defaults to ln n where used.
ScheduleResult param_schedule(const std::string& theorem, double alpha, double beta,
                              std::optional<double> gamma, std::int64_t n,
                              std::optional<double> w = std::nullopt);

struct GridPoint {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<ProblemParams> raw;  // used instead of (alpha, beta) when set
};

inline constexpr const char* kSweepHeader = "alpha,beta,n,k,extra_params,solver,type1,type2,trials,seed";

// (alpha, beta) points set k = ceil(n^beta) and the problem's signal to n^-alpha.
ProblemParams params_at(const ProblemParams& base, double alpha, double beta);
std::string phase_sweep(const std::vector<GridPoint>& grid, const ExperimentConfig& config);

}  // namespace planted
