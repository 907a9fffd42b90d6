#include "planted/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "planted/cloning.hpp"
#include "planted/linalg.hpp"

namespace planted {

namespace {

double binom(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Calls fn(indices) for every k-subset of [0, n) in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0) {
    fn(idx);
    return;
  }
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Verdict decide(double stat, double thr, bool h1, std::string rule) {
  Verdict v;
  v.statistic = stat;
  v.threshold = thr;
  v.decision = h1 ? Hypothesis::H1 : Hypothesis::H0;
  v.rule = std::move(rule);
  return v;
}

}  // namespace

Verdict bc_sum_max_test(const RealMatrix& m, int k, double mu, double c) {
  if (m.rows() != m.cols()) throw ParameterError("bc_sum_max_test: matrix must be square");
  const double n = static_cast<double>(m.rows());
  const double sum = m.sum();
  const double sum_thr = mu * k * k / 2.0;
  if (sum > sum_thr) return decide(sum, sum_thr, true, "sum>");
  const double mx = m.maxCoeff();
  const double max_thr = std::sqrt((4.0 + c) * std::log(n));
  if (mx > max_thr) return decide(mx, max_thr, true, "max>");
  return decide(sum, sum_thr, false, "sum>");
}

Verdict pds_edge_tests(const Graph& g, int k, double p, double q, bool scan_subgraphs) {
  if (p == q) throw ParameterError("pds_edge_tests: require p != q");
  const int n = g.n();
  const bool up = p > q;
  const double e = static_cast<double>(g.edge_count());
  const double thr = binom(n, 2) * q + binom(k, 2) * (p - q) / 2.0;
  const bool fire = up ? e > thr : e < thr;
  if (fire || !scan_subgraphs) return decide(e, thr, fire, up ? "edges>" : "edges<");

  if (n > 30) throw RefusalError("pds_edge_tests: subgraph scan limited to n <= 30");
  if (binom(n, k) > 2e7) throw RefusalError("pds_edge_tests: too many k-subsets to scan");
  std::int64_t best = up ? -1 : std::numeric_limits<std::int64_t>::max();
  for_each_subset(n, k, [&](const std::vector<int>& s) {
    std::int64_t c = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) c += g.has_edge(s[a], s[b]);
    best = up ? std::max(best, c) : std::min(best, c);
  });
  const double sthr = binom(k, 2) * (p + q) / 2.0;
  const double bs = static_cast<double>(best);
  const bool sfire = up ? bs >= sthr : bs <= sthr;
  if (sfire) return decide(bs, sthr, true, up ? "subgraph>=" : "subgraph<=");
  return decide(e, thr, false, up ? "edges>" : "edges<");
}

Verdict ssbm_spectral_test(const Graph& g, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("ssbm_spectral_test: require q in (0,1)");
  const int n = g.n();
  const RealMatrix a = g.adjacency();
  // (A - q(11^T - I)) x
  auto op = [&](const RealVector& x, RealVector& y) {
    y.noalias() = a * x;
    y.array() -= q * (x.sum() - x.array());
  };
  const double lam = top_eigen(op, n).value;
  const double thr = 2.0 * std::sqrt(static_cast<double>(n));
  return decide(lam, thr, lam >= thr, "lambda1>=");
}

Verdict ros_svd_test(const RealMatrix& m, double mu) {
  if (!(mu > 0.0)) throw ParameterError("ros_svd_test: require mu > 0");
  const double s = top_singular(m).value;
  return decide(s, mu / 2.0, s >= mu / 2.0, "sigma1>=");
}

std::pair<Verdict, RecoveryResult> ros_max_test(const RealMatrix& m) {
  const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols());
  const double thr = std::sqrt(6.0 * std::log(static_cast<double>(std::max(r, c))));
  std::vector<char> rows(static_cast<std::size_t>(r), 0), cols(static_cast<std::size_t>(c), 0);
  double mx = 0.0;
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) {
      const double a = std::abs(m(i, j));
      mx = std::max(mx, a);
      if (a > thr) rows[i] = cols[j] = 1;
    }
  std::vector<int> ri, ci;
  for (int i = 0; i < r; ++i)
    if (rows[i]) ri.push_back(i);
  for (int j = 0; j < c; ++j)
    if (cols[j]) ci.push_back(j);
  RecoveryResult rec;
  rec.row_support = Support(ri, r);
  rec.col_support = Support(ci, c);
  rec.marked = !ri.empty();
  return {decide(mx, thr, mx > thr, "max|M|>"), rec};
}

namespace {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<int> v_idx;
  std::vector<int> v_sign;
  std::vector<int> u_idx;
  std::vector<int> u_sign;
};

// One pass over S_k2 that records the best u for every k1 in [k1_lo, k1_hi].
std::vector<Best> search_side(const RealMatrix& a, int k1_lo, int k1_hi, int k2) {
  const int n = static_cast<int>(a.rows());
  std::vector<Best> best(static_cast<std::size_t>(k1_hi + 1));
  RealVector w(n);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::vector<int> sign(static_cast<std::size_t>(k2));

  for_each_subset(static_cast<int>(a.cols()), k2, [&](const std::vector<int>& s) {
    std::fill(sign.begin(), sign.end(), 1);
    w.setZero();
    for (int j : s) w += a.col(j);
    const unsigned total = 1u << (k2 - 1);  // first sign fixed to +
    for (unsigned step = 0; step < total; ++step) {
      if (step > 0) {
        // Gray code: flip the sign at the lowest set bit of step (offset by one)
        const int bit = __builtin_ctz(step) + 1;
        sign[bit] = -sign[bit];
        w += (2.0 * sign[bit]) * a.col(s[bit]);
      }
      std::iota(order.begin(), order.end(), 0);
      std::partial_sort(order.begin(), order.begin() + k1_hi, order.end(),
                        [&](int x, int y) { return std::abs(w(x)) > std::abs(w(y)); });
      double acc = 0.0;
      for (int t = 0; t < k1_hi; ++t) {
        acc += std::abs(w(order[t]));
        const int k1 = t + 1;
        if (k1 < k1_lo) continue;
        Best& b = best[k1];
        if (acc > b.value) {
          b.value = acc;
          b.v_idx = s;
          b.v_sign = sign;
          b.u_idx.assign(order.begin(), order.begin() + k1);
          b.u_sign.resize(static_cast<std::size_t>(k1));
          for (int z = 0; z < k1; ++z) b.u_sign[z] = w(order[z]) >= 0.0 ? 1 : -1;
        }
      }
    }
  });
  return best;
}

SearchPair to_pair(const Best& b, int rows, int cols) {
  SearchPair p;
  p.u = Eigen::VectorXi::Zero(rows);
  p.v = Eigen::VectorXi::Zero(cols);
  for (std::size_t z = 0; z < b.u_idx.size(); ++z) p.u(b.u_idx[z]) = b.u_sign[z];
  for (std::size_t z = 0; z < b.v_idx.size(); ++z) p.v(b.v_idx[z]) = b.v_sign[z];
  p.value = b.value;
  return p;
}

}  // namespace

SearchPair ros_search_argmax(const RealMatrix& a, int k1, int k2) {
  if (k1 < 1 || k2 < 1 || k1 > a.rows() || k2 > a.cols())
    throw ParameterError("ros_search_argmax: sparsities out of range");
  auto best = search_side(a, k1, k1, k2);
  return to_pair(best[k1], static_cast<int>(a.rows()), static_cast<int>(a.cols()));
}

RecoveryResult ros_search(const RealMatrix& m, int k, double rho, double c1, RandomStream& rng) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw ParameterError("ros_search: matrix must be square");
  if (n > 40 || k > 5) throw RefusalError("ros_search: enumeration limited to n <= 40 and k <= 5");
  if (!(c1 > 0.0 && c1 < 1.0)) throw ParameterError("ros_search: require c1 in (0,1)");
  if (!(rho > 0.0)) throw ParameterError("ros_search: require rho > 0");
  if (k < 1 || k > n) throw ParameterError("ros_search: k out of range");
  auto [a, b] = gaussian_clone(m, rng);
  const int lo = std::max(1, static_cast<int>(std::ceil(c1 * k - 1e-12)));

  RecoveryResult out;
  out.row_support = Support({}, n);
  out.col_support = Support({}, n);
  int best_size = -1;
  for (int k2 = lo; k2 <= k; ++k2) {
    const auto best = search_side(a, lo, k, k2);
    for (int k1 = lo; k1 <= k; ++k1) {
      const SearchPair pr = to_pair(best[k1], n, n);
      // row sums u_i sum_j v_j B_ij and column sums v_j sum_i u_i B_ij
      const RealVector bv = b * pr.v.cast<double>();
      const RealVector ub = b.transpose() * pr.u.cast<double>();
      bool marked = true;
      for (int i = 0; i < n && marked; ++i)
        if (pr.u(i) != 0 && pr.u(i) * bv(i) < 0.5 * k2 * rho) marked = false;
      for (int j = 0; j < n && marked; ++j)
        if (pr.v(j) != 0 && pr.v(j) * ub(j) < 0.5 * k1 * rho) marked = false;
      if (marked && k1 + k2 > best_size) {
        best_size = k1 + k2;
        std::vector<int> ri, ci;
        for (int i = 0; i < n; ++i)
          if (pr.u(i) != 0) ri.push_back(i);
        for (int j = 0; j < n; ++j)
          if (pr.v(j) != 0) ci.push_back(j);
        out.row_support = Support(ri, n);
        out.col_support = Support(ci, n);
        out.marked = true;
      }
    }
  }
  return out;
}

Support largest_gap_cluster(const RealVector& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return Support({}, 0);
  std::vector<double> s(x.size());
  for (int i = 0; i < n; ++i) s[i] = std::abs(x(i));
  std::sort(s.begin(), s.end());
  double cut = s[0];
  double gap = -1.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double g = s[i + 1] - s[i];
    if (g > gap) {  // strict: earliest gap wins ties
      gap = g;
      cut = s[i + 1];
    }
  }
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (std::abs(x(i)) >= cut) idx.push_back(i);
  return Support(idx, n);
}

RecoveryResult ros_spectral_projection(const RealMatrix& m, RandomStream& rng) {
  auto [a, b] = gaussian_clone(m, rng);
  const SingularResult sv = top_singular(a);
  RecoveryResult out;
  // B v is indexed by rows, u^T B by columns
  out.row_support = largest_gap_cluster(b * sv.right);
  out.col_support = largest_gap_cluster(b.transpose() * sv.left);
  out.marked = true;
  return out;
}

RealMatrix empirical_covariance(const DataMatrix& x) {
  return x * x.transpose() / static_cast<double>(x.cols());
}

namespace {
EigenResult covariance_top(const DataMatrix& x) {
  const double n = static_cast<double>(x.cols());
  RealVector tmp;
  return top_eigen(
      [&](const RealVector& v, RealVector& y) {
        tmp.noalias() = x.transpose() * v;
        y.noalias() = x * tmp;
        y /= n;
      },
      static_cast<int>(x.rows()));
}
}  // namespace

Verdict spca_spectral_test(const DataMatrix& x, double c_ratio) {
  const double d = static_cast<double>(x.rows()), n = static_cast<double>(x.cols());
  if (!(c_ratio >= d / n * (1.0 - 1e-12))) throw ParameterError("spca_spectral_test: require cRatio >= d/n");
  const double lam = covariance_top(x).value;
  const double thr = 1.0 + 2.0 * std::sqrt(c_ratio);
  return decide(lam, thr, lam > thr, "lambda1>");
}

Verdict bspca_sum_test(const DataMatrix& x, int k, double theta, double delta) {
  const double d = static_cast<double>(x.rows()), n = static_cast<double>(x.cols());
  const double extra = 2.0 * delta * delta * k * theta;
  if (extra > d) throw ParameterError("bspca_sum_test: require 2 delta^2 k theta <= d");
  const RealVector s = x.transpose() * RealVector::Ones(x.rows());
  const double stat = s.squaredNorm() / n;
  const double thr = d + extra;
  return decide(stat, thr, stat > thr, "sum>");
}

std::pair<double, RealVector> spca_sparse_eig(const RealMatrix& sigma, int k) {
  const int d = static_cast<int>(sigma.rows());
  if (sigma.rows() != sigma.cols()) throw ParameterError("spca_sparse_eig: matrix must be square");
  if (d > 20) throw RefusalError("spca_sparse_eig: enumeration limited to d <= 20");
  if (k < 1 || k > d) throw ParameterError("spca_sparse_eig: require 1 <= k <= d");
  double best = -std::numeric_limits<double>::infinity();
  RealVector vec = RealVector::Zero(d);
  RealMatrix minor(k, k);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  for_each_subset(d, k, [&](const std::vector<int>& s) {
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) minor(a, b) = sigma(s[a], s[b]);
    es.compute(minor);
    const double lam = es.eigenvalues()(k - 1);
    if (lam > best) {
      best = lam;
      vec.setZero();
      for (int a = 0; a < k; ++a) vec(s[a]) = es.eigenvectors()(a, k - 1);
    }
  });
  Eigen::Index arg;
  vec.cwiseAbs().maxCoeff(&arg);
  if (vec(arg) < 0) vec = -vec;
  return {best, vec};
}

Support spca_spectral_recover(const DataMatrix& x, int k, RandomStream& rng) {
  const int d = static_cast<int>(x.rows()), n = static_cast<int>(x.cols());
  if (k < 1) throw ParameterError("spca_spectral_recover: k must be >= 1");
  DataMatrix work = x;
  if (d <= n) {
    // pad with fresh noise rows so the ambient dimension exceeds the sample count
    work.conservativeResize(2 * n, n);
    for (int j = 0; j < n; ++j)
      for (int i = d; i < 2 * n; ++i) work(i, j) = rng.normal();
  }
  const double dd = static_cast<double>(work.rows());
  const RealVector v = covariance_top(work).vector;
  const double thr = std::log(dd) / (k * dd);
  std::vector<int> idx;
  for (int i = 0; i < d; ++i)
    if (std::pow(v(i), 4) >= thr) idx.push_back(i);
  return Support(idx, d);
}

Support spca_kmax_recover(const DataMatrix& x, int k) {
  const auto [lam, v] = spca_sparse_eig(empirical_covariance(x), k);
  (void)lam;
  const double thr = 1.0 / (2.0 * std::sqrt(static_cast<double>(k)));
  std::vector<int> idx;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= thr) idx.push_back(i);
  return Support(idx, static_cast<int>(v.size()));
}

}  // namespace planted
