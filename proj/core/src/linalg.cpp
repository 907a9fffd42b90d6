#include "planted/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "planted/random.hpp"

namespace planted {

EigenResult top_eigen(const MatVec& op, int n, const IterOptions& opt) {
  if (n < 1) throw ParameterError("top_eigen: empty operator");
  EigenResult res;
  const int cap = std::min(n, std::max(1, opt.max_iter));

  RandomStream rng(opt.start_seed);
  RealVector q(n);
  for (int i = 0; i < n; ++i) q(i) = rng.normal();
  q.normalize();

  RealMatrix basis(n, cap);
  std::vector<double> alpha, beta;
  RealVector w(n);
  Eigen::SelfAdjointEigenSolver<RealMatrix> tri;

  auto ritz = [&](int m) {
    Eigen::VectorXd d(m), e(std::max(0, m - 1));
    for (int i = 0; i < m; ++i) d(i) = alpha[i];
    for (int i = 0; i + 1 < m; ++i) e(i) = beta[i];
    tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  };

  for (int j = 0; j < cap; ++j) {
    basis.col(j) = q;
    op(q, w);
    const double a = q.dot(w);
    alpha.push_back(a);
    w -= a * q;
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    const double b = w.norm();

    const int m = j + 1;
    const bool invariant_hint = b <= 1e-14 * std::max(1.0, std::abs(a));
    // the small eigenproblem is cheap but not free; sample it sparsely once m grows
    if (!(m < 24 || m % 8 == 0 || invariant_hint || m == cap)) {
      beta.push_back(b);
      q = w / b;
      continue;
    }
    ritz(m);
    const double theta = tri.eigenvalues()(m - 1);
    const double resid = b * std::abs(tri.eigenvectors()(m - 1, m - 1));
    res.iterations = m;
    const bool invariant = b <= 1e-14 * std::max(1.0, std::abs(theta));
    if (resid <= opt.tol * std::max(std::abs(theta), 1e-300) || invariant || m == cap) {
      res.value = theta;
      res.vector = basis.leftCols(m) * tri.eigenvectors().col(m - 1);
      res.vector.normalize();
      res.converged = resid <= opt.tol * std::max(std::abs(theta), 1e-300) || invariant || m == n;
      return res;
    }
    beta.push_back(b);
    q = w / b;
  }
  return res;
}

EigenResult top_eigen(const RealMatrix& sym, const IterOptions& opt) {
  if (sym.rows() != sym.cols()) throw ParameterError("top_eigen: matrix must be square");
  return top_eigen([&](const RealVector& x, RealVector& y) { y.noalias() = sym * x; },
                   static_cast<int>(sym.rows()), opt);
}

SingularResult top_singular(const RealMatrix& m, const IterOptions& opt) {
  SingularResult out;
  const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols());
  if (r == 0 || c == 0) throw ParameterError("top_singular: empty matrix");
  // work on the Gram matrix of the smaller side
  RealVector tmp;
  if (c <= r) {
    auto e = top_eigen(
        [&](const RealVector& x, RealVector& y) {
          tmp.noalias() = m * x;
          y.noalias() = m.transpose() * tmp;
        },
        c, opt);
    out.value = std::sqrt(std::max(0.0, e.value));
    out.right = e.vector;
    out.left = m * e.vector;
    out.iterations = e.iterations;
    out.converged = e.converged;
  } else {
    auto e = top_eigen(
        [&](const RealVector& x, RealVector& y) {
          tmp.noalias() = m.transpose() * x;
          y.noalias() = m * tmp;
        },
        r, opt);
    out.value = std::sqrt(std::max(0.0, e.value));
    out.left = e.vector;
    out.right = m.transpose() * e.vector;
    out.iterations = e.iterations;
    out.converged = e.converged;
  }
  if (out.value > 0.0) {
    if (c <= r)
      out.left /= out.value;
    else
      out.right /= out.value;
  }
  return out;
}

}  // namespace planted
