#pragma once

#include <functional>

#include "planted/types.hpp"

namespace planted {

struct EigenResult {
  double value = 0.0;
  RealVector vector;
  int iterations = 0;
  bool converged = false;
};

struct IterOptions {
  double tol = 1e-6;  // relative
  int max_iter = 10000;
  std::uint64_t start_seed = 0x243f6a8885a308d3ULL;
};

using MatVec = std::function<void(const RealVector& x, RealVector& y)>;

// Largest algebraic eigenvalue of a symmetric operator by Lanczos with full
// reorthogonalization.
EigenResult top_eigen(const MatVec& op, int n, const IterOptions& opt = {});
EigenResult top_eigen(const RealMatrix& sym, const IterOptions& opt = {});

struct SingularResult {
  double value = 0.0;
  RealVector left;
  RealVector right;
  int iterations = 0;
  bool converged = false;
};
SingularResult top_singular(const RealMatrix& m, const IterOptions& opt = {});

}  // namespace planted
