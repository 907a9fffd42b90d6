#pragma once

#include <utility>

#include "planted/random.hpp"
#include "planted/types.hpp"

namespace planted {

Verdict bc_sum_max_test(const RealMatrix& m, int k, double mu, double c = 1.0);
Verdict pds_edge_tests(const Graph& g, int k, double p, double q, bool scan_subgraphs = false);
Verdict ssbm_spectral_test(const Graph& g, double q);
Verdict ros_svd_test(const RealMatrix& m, double mu);
std::pair<Verdict, RecoveryResult> ros_max_test(const RealMatrix& m);

struct SearchPair {
  Eigen::VectorXi u;  // entries in {-1,0,1}
  Eigen::VectorXi v;
  double value = 0.0;
};
// argmax of u^T A v over u in S_k1, v in S_k2 (exactly k nonzero entries in {-1,1}).
SearchPair ros_search_argmax(const RealMatrix& a, int k1, int k2);
RecoveryResult ros_search(const RealMatrix& m, int k, double rho, double c1, RandomStream& rng);

RecoveryResult ros_spectral_projection(const RealMatrix& m, RandomStream& rng);
// Indices above the largest consecutive gap of the sorted absolute values.
Support largest_gap_cluster(const RealVector& x);

Verdict spca_spectral_test(const DataMatrix& x, double c_ratio);
Verdict bspca_sum_test(const DataMatrix& x, int k, double theta, double delta);
std::pair<double, RealVector> spca_sparse_eig(const RealMatrix& sigma, int k);
Support spca_spectral_recover(const DataMatrix& x, int k, RandomStream& rng);
Support spca_kmax_recover(const DataMatrix& x, int k);

RealMatrix empirical_covariance(const DataMatrix& x);

}  // namespace planted
