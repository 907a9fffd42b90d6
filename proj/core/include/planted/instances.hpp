#pragma once

#include <optional>
#include <utility>

#include "planted/random.hpp"
#include "planted/types.hpp"

namespace planted {

struct PlantedGraphInstance {
  Graph graph;
  Hypothesis hypothesis = Hypothesis::H0;
  ProblemParams params;
  std::optional<Support> support;
  std::optional<std::pair<Support, Support>> communities;  // SSBM only
};

struct PlantedMatrixInstance {
  RealMatrix matrix;
  Hypothesis hypothesis = Hypothesis::H0;
  ProblemParams params;
  std::optional<Support> row_support;
  std::optional<Support> col_support;
  std::optional<RealVector> spike_row;
  std::optional<RealVector> spike_col;
};

struct SpcaInstance {
  DataMatrix samples;  // d x n
  Hypothesis hypothesis = Hypothesis::H0;
  ProblemParams params;
  std::optional<RealVector> spike;
  double theta = 0.0;
};

PlantedGraphInstance gen_graph(const ProblemParams& params, Hypothesis h, RandomStream& rng);
PlantedMatrixInstance gen_matrix(const ProblemParams& params, Hypothesis h, RandomStream& rng);
SpcaInstance gen_spca(const ProblemParams& params, Hypothesis h, RandomStream& rng);

// Erdos-Renyi G(n, p).
Graph erdos_renyi(int n, double p, RandomStream& rng);
// Uniform k-sparse vector with entries +-1/sqrt(k) (or all +1/sqrt(k) when signed=false).
RealVector sparse_sign_vector(int n, int k, bool signed_entries, RandomStream& rng);
RealMatrix standard_normal(int rows, int cols, RandomStream& rng);
// GOE(n): symmetric, off-diagonal N(0,1), diagonal N(0,2).
RealMatrix goe(int n, RandomStream& rng);

// Integer window for the SSBM community sizes: [ceil(k/2 - k^{1-delta}), floor(k/2 + k^{1-delta})].
std::pair<int, int> ssbm_window(int k, double delta);

}  // namespace planted
