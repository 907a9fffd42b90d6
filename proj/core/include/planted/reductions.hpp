#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "planted/random.hpp"
#include "planted/types.hpp"

namespace planted {

using Observation = std::variant<Graph, RealMatrix>;  // RealMatrix also carries d x n sample matrices

struct StageBound {
  std::string stage;
  double bound = 0.0;  // +inf when the stage has no guarantee at these parameters
};

struct ReductionTrace {
  std::optional<Support> row_support;
  std::optional<Support> col_support;
  // integer spike vectors for reflection-based reductions
  std::optional<RealVector> spike_row;
  std::optional<RealVector> spike_col;
};

struct ReductionOutput {
  Observation observation;
  ProblemParams target;
  std::optional<double> tv_budget;  // nullopt: no bound applies ("unbounded")
  std::vector<StageBound> stages;
  std::optional<ReductionTrace> trace;
  std::vector<std::string> notes;
};

// What the caller knows about the source instance: its planted size and,
// for tracing, the planted vertex set.
struct SourceInfo {
  int k = 1;
  std::optional<Support> planted;
};

ReductionOutput bc_reduce(const Graph& g, int ell, RandomStream& rng, const SourceInfo& src = {});
ReductionOutput bc_recovery_reduce(const Graph& g, double rho, RandomStream& rng, const SourceInfo& src = {});
double bc_recovery_mu(int n, double rho);
ReductionOutput ros_reduce(const Graph& g, int ell, RandomStream& rng, const SourceInfo& src = {});
ReductionOutput sros_reduce(const Graph& g, int k, int ell, RandomStream& rng, const SourceInfo& src = {});
RealMatrix symmetrize_to_ssw(const RealMatrix& m);
ReductionOutput ssbm_reduce(const Graph& g, int k, int ell, RandomStream& rng, const SourceInfo& src = {});
double ssbm_reduce_rho(int n, int k, int ell);
ReductionOutput spca_high_sparsity(const Graph& g, int ell, int tau, RandomStream& rng,
                                   const SourceInfo& src = {});
ReductionOutput spca_low_sparsity(const Graph& g, int ell, int tau, RandomStream& rng,
                                  const SourceInfo& src = {});
ReductionOutput spca_recovery_reduce(const Graph& g, double rho, int tau, RandomStream& rng,
                                     const SourceInfo& src = {});

// Detection through a recovery routine run on one of two independent clones.
struct SamplePair {
  DataMatrix first;
  DataMatrix second;
};
using DetectionInput = std::variant<Graph, RealMatrix, SamplePair>;
using RecoverFn = std::function<RecoveryResult(const DetectionInput& copy, RandomStream& rng)>;

struct DetectionParams {
  int k = 1;
  double p = 0.0;  // PDS planted density / unused otherwise
  double q = 0.0;  // PDS ambient density, PIS edge density
  std::optional<double> tau_k;  // defaults to log k
  double pds_w = 0.25;
};

Verdict detect_via_recovery(Problem problem, const RecoverFn& recover, const DetectionInput& instance,
                            const DetectionParams& params, RandomStream& rng);

}  // namespace planted
