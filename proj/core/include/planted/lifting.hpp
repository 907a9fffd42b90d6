#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "planted/random.hpp"
#include "planted/rejection.hpp"
#include "planted/types.hpp"

namespace planted {

// Records what a lifting run did so planted structure can be followed
// through the relabelings. Set `support` before the call to enable tracking.
struct LiftTrace {
  std::vector<std::vector<int>> permutations;
  std::optional<Support> support;
};

struct CloneFamily {
  std::function<std::array<double, 4>(double x, double lambda, RandomStream&)> clone;
  std::function<double(double)> param_update;
  std::function<double(double lambda, RandomStream&)> noise;  // sampler for Q'_lambda
  double threshold = 0.0;
  KernelSpec initial_kernel;
  double lambda0 = 0.0;
};

CloneFamily poisson_family(const KernelSpec& kernel, double lambda0);
CloneFamily gaussian_family(const KernelSpec& kernel, double mu);

// Four-way multinomial thinning of a count.
std::array<double, 4> poisson_split(double x, RandomStream& rng);
// Orthogonal four-way clone of a N(lambda,1) variate into four N(lambda/2,1).
std::array<double, 4> gaussian_split(double x, RandomStream& rng);

// Relabels rows and columns: out(perm[i], perm[j]) = in(i, j).
RealMatrix permute_symmetric(const RealMatrix& m, const std::vector<int>& perm);
Graph permute_graph(const Graph& g, const std::vector<int>& perm);
Support permute_support(const Support& s, const std::vector<int>& perm);
// S u {2m-1-i : i in S} inside [0, 2m).
Support mirror_support(const Support& s, int m);

// Symmetric matrix W with W_ij = rk(1{ij in E}) off the diagonal and zeros on it.
RealMatrix apply_kernel(const Graph& g, const KernelSpec& spec, RandomStream& rng);
Graph threshold_graph(const RealMatrix& w, double t);

Graph pc_lift(const Graph& g, int ell, double w, RandomStream& rng, LiftTrace* trace = nullptr);
Graph pc_lift(const Graph& g, int ell, RandomStream& rng, LiftTrace* trace = nullptr);  // w = ln n
// Probabilities of the 15 non-all-ones patterns, indexed by the 4-bit mask (mask 15 unused).
std::array<double, 16> pc_lift_pattern_probs(double p);

// ell rounds of the generic lifting engine on a symmetric zero-diagonal matrix.
RealMatrix distributional_lift(const RealMatrix& m, int ell, const CloneFamily& family, RandomStream& rng,
                               LiftTrace* trace = nullptr);

Graph poisson_lift(const Graph& g, int ell, double gamma, double eps, double c, RandomStream& rng,
                   LiftTrace* trace = nullptr);
struct Densities {
  double p;
  double q;
};
Densities poisson_lift_densities(int n, int ell, double eps, double c);

double gaussian_lift_mu(int n);
RealMatrix gaussian_lift_matrix(const Graph& g, int ell, RandomStream& rng, LiftTrace* trace = nullptr);
Graph gaussian_lift_graph(const Graph& g, int ell, RandomStream& rng, LiftTrace* trace = nullptr);
Densities gaussian_lift_densities(int n, int ell);

struct GeneralPdsParams {
  int n_out;
  double rho;
  double c;
  double lambda;
  Densities densities;
};
GeneralPdsParams general_pds_params(int n, int ell1, int ell2, double eps);
Graph general_pds_reduce(const Graph& g, int ell1, int ell2, double eps, RandomStream& rng,
                         LiftTrace* trace = nullptr);

}  // namespace planted
