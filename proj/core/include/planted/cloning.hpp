#pragma once

#include <array>
#include <utility>
#include <vector>

#include "planted/random.hpp"
#include "planted/types.hpp"

namespace planted {

// Follows a rank-one spike r c^T through reflection rounds; entries stay integral
// when they start integral.
struct SpikeTrack {
  RealVector r;
  RealVector c;
  double scale = 1.0;  // spike = scale * r c^T
  std::vector<std::vector<int>> permutations;
};

// One conjugation W <- 1/2 (A+B) W (A+B) without the relabel.
void reflect_in_place(RealMatrix& w);
RealVector reflect_vector(const RealVector& v);

RealMatrix reflection_clone(const RealMatrix& m, int ell, RandomStream& rng, SpikeTrack* track = nullptr);

struct HaarColumns {
  int ambient = 0;
  int cols = 0;
  RealMatrix entries;  // ambient x cols
};
HaarColumns haar_columns(int N, int n, RandomStream& rng);

RealMatrix random_rotate(const RealMatrix& m, int tau, RandomStream& rng);
double random_rotate_tv_bound(int n, int tau);

std::pair<RealMatrix, RealMatrix> gaussian_clone(const RealMatrix& m, RandomStream& rng);

struct PdsClonePlan {
  std::array<double, 4> edge;      // pattern law given an input edge, index = x1 + 2*x2
  std::array<double, 4> non_edge;  // pattern law given an input non-edge
};
// Validates the window and returns the pattern laws; throws ParameterError naming
// the offending ratio.
PdsClonePlan pds_clone_plan(double p, double q, double P, double Q);
std::pair<Graph, Graph> pds_clone(const Graph& g, double p, double q, double P, double Q, RandomStream& rng);

std::pair<double, double> pds_clone_preset_pds(double p, double q, double w = 0.25);
// Complement-graph use for planted independent set at edge density q0.
std::pair<double, double> pds_clone_preset_pis(double q0);

}  // namespace planted
