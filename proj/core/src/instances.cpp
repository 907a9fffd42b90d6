#include "planted/instances.hpp"

#include <algorithm>
#include <cmath>

namespace planted {

Graph erdos_renyi(int n, double p, RandomStream& rng) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.set_edge(i, j, true);
  return g;
}

RealMatrix standard_normal(int rows, int cols, RandomStream& rng) {
  RealMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

RealMatrix goe(int n, RandomStream& rng) {
  RealMatrix m(n, n);
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    m(i, i) = s2 * rng.normal();
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  }
  return m;
}

RealVector sparse_sign_vector(int n, int k, bool signed_entries, RandomStream& rng) {
  RealVector v = RealVector::Zero(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(k));
  for (int i : rng.subset(n, k)) v(i) = signed_entries ? a * rng.rademacher() : a;
  return v;
}

std::pair<int, int> ssbm_window(int k, double delta) {
  const double half = k / 2.0;
  const double w = std::pow(static_cast<double>(k), 1.0 - delta);
  int lo = static_cast<int>(std::ceil(half - w - 1e-12));
  int hi = static_cast<int>(std::floor(half + w + 1e-12));
  lo = std::max(lo, 0);
  hi = std::min(hi, k);
  // k2 = k - k1 must land in the same window.
  lo = std::max(lo, k - hi);
  hi = std::min(hi, k - lo);
  if (lo > hi) throw ParameterError("SSBM community-size window is empty");
  return {lo, hi};
}

namespace {

Support support_of(const RealVector& v) {
  std::vector<int> idx;
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0.0) idx.push_back(i);
  return Support(std::move(idx), static_cast<int>(v.size()));
}

bool is_graph_problem(Problem p) {
  return p == Problem::PC || p == Problem::PIS || p == Problem::PDS || p == Problem::SSBM;
}

}  // namespace

PlantedGraphInstance gen_graph(const ProblemParams& params, Hypothesis h, RandomStream& rng) {
  params.validate();
  if (!is_graph_problem(params.problem))
    throw ParameterError("gen_graph: not a graph problem: " + to_string(params.problem));
  PlantedGraphInstance out;
  out.hypothesis = h;
  out.params = params;
  const int n = params.n;
  const double base = params.problem == Problem::PC ? params.p : params.q;

  if (h == Hypothesis::H0) {
    out.graph = erdos_renyi(n, base, rng);
    return out;
  }

  Graph g(n);
  const auto s = rng.subset(n, params.k);
  std::vector<int> label(static_cast<std::size_t>(n), 0);  // 0 outside, 1 in S, 2 in T
  for (int v : s) label[v] = 1;

  if (params.problem == Problem::SSBM) {
    auto [lo, hi] = ssbm_window(params.k, params.delta_ssbm);
    const int k1 = rng.uniform_int(lo, hi);
    // random split of the planted vertices into the two communities
    std::vector<int> order = s;
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_int(0, i)]);
    std::vector<int> a(order.begin(), order.begin() + k1), b(order.begin() + k1, order.end());
    for (int v : b) label[v] = 2;
    out.communities = std::make_pair(Support(a, n), Support(b, n));
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double pr = base;
      const int li = label[i], lj = label[j];
      switch (params.problem) {
        case Problem::PC:
          if (li && lj) pr = 1.0;
          break;
        case Problem::PIS:
          if (li && lj) pr = 0.0;
          break;
        case Problem::PDS:
          if (li && lj) pr = params.p;
          break;
        case Problem::SSBM:
          if (li && lj) pr = li == lj ? params.q + params.rho : params.q - params.rho;
          break;
        default:
          break;
      }
      if (rng.bernoulli(pr)) g.set_edge(i, j, true);
    }
  }
  out.graph = std::move(g);
  out.support = Support(s, n);
  return out;
}

PlantedMatrixInstance gen_matrix(const ProblemParams& params, Hypothesis h, RandomStream& rng) {
  params.validate();
  PlantedMatrixInstance out;
  out.hypothesis = h;
  out.params = params;
  const int n = params.n, k = params.k;
  const double mu = params.mu;
  switch (params.problem) {
    case Problem::BC: {
      out.matrix = standard_normal(n, n, rng);
      if (h == Hypothesis::H1) {
        auto s = rng.subset(n, k), t = rng.subset(n, k);
        for (int i : s)
          for (int j : t) out.matrix(i, j) += mu;
        out.row_support = Support(s, n);
        out.col_support = Support(t, n);
      }
      return out;
    }
    case Problem::ROS: {
      out.matrix = standard_normal(n, n, rng);
      if (h == Hypothesis::H1) {
        RealVector r = sparse_sign_vector(n, k, true, rng);
        RealVector c = sparse_sign_vector(n, k, true, rng);
        out.matrix.noalias() += mu * r * c.transpose();
        out.row_support = support_of(r);
        out.col_support = support_of(c);
        out.spike_row = r;
        out.spike_col = c;
      }
      return out;
    }
    case Problem::SROS:
    case Problem::SSW: {
      out.matrix = params.problem == Problem::SROS ? standard_normal(n, n, rng) : goe(n, rng);
      if (h == Hypothesis::H1) {
        RealVector r = sparse_sign_vector(n, k, true, rng);
        out.matrix.noalias() += mu * r * r.transpose();
        out.row_support = support_of(r);
        out.col_support = out.row_support;
        out.spike_row = r;
        out.spike_col = r;
      }
      return out;
    }
    default:
      throw ParameterError("gen_matrix: not a matrix problem: " + to_string(params.problem));
  }
}

SpcaInstance gen_spca(const ProblemParams& params, Hypothesis h, RandomStream& rng) {
  params.validate();
  const Problem pr = params.problem;
  if (pr != Problem::SPCA && pr != Problem::USPCA && pr != Problem::BSPCA && pr != Problem::UBSPCA)
    throw ParameterError("gen_spca: not a spiked covariance problem: " + to_string(pr));
  SpcaInstance out;
  out.hypothesis = h;
  out.params = params;
  out.theta = params.theta;
  const int d = params.d, n = params.n;
  out.samples = standard_normal(d, n, rng);
  if (h == Hypothesis::H1) {
    const bool signed_entries = pr == Problem::SPCA || pr == Problem::USPCA;
    RealVector v = sparse_sign_vector(d, params.k, signed_entries, rng);
    const double a = std::sqrt(params.theta);
    for (int i = 0; i < n; ++i) out.samples.col(i) += (a * rng.normal()) * v;
    out.spike = v;
  }
  return out;
}

}  // namespace planted
