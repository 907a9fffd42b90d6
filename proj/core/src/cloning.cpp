#include "planted/cloning.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "planted/lifting.hpp"

namespace planted {

void reflect_in_place(RealMatrix& w) {
  const Eigen::Index n = w.rows(), h = n / 2;
  // rows: i <- W_i + W_{n-1-i}, n-1-i <- W_i - W_{n-1-i}
  for (Eigen::Index i = 0; i < h; ++i) {
    const Eigen::Index r = n - 1 - i;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = w(i, j), b = w(r, j);
      w(i, j) = a + b;
      w(r, j) = a - b;
    }
  }
  for (Eigen::Index j = 0; j < h; ++j) {
    const Eigen::Index r = n - 1 - j;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = w(i, j), b = w(i, r);
      w(i, j) = 0.5 * (a + b);
      w(i, r) = 0.5 * (a - b);
    }
  }
}

RealVector reflect_vector(const RealVector& v) {
  const Eigen::Index n = v.size();
  RealVector out(n);
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    out(i) = v(i) + v(n - 1 - i);
    out(n - 1 - i) = v(i) - v(n - 1 - i);
  }
  return out;
}

RealMatrix reflection_clone(const RealMatrix& m, int ell, RandomStream& rng, SpikeTrack* track) {
  if (m.rows() != m.cols()) throw ParameterError("reflection_clone: matrix must be square");
  if (m.rows() % 2 != 0) throw ParameterError("reflection_clone: n must be even");
  if (ell < 0) throw ParameterError("reflection_clone: ell must be >= 0");
  RealMatrix w = m;
  for (int round = 0; round < ell; ++round) {
    const auto perm = rng.permutation(static_cast<int>(w.rows()));
    w = permute_symmetric(w, perm);
    reflect_in_place(w);
    if (track) {
      RealVector r(track->r.size()), c(track->c.size());
      for (Eigen::Index i = 0; i < r.size(); ++i) r(perm[i]) = track->r(i);
      for (Eigen::Index i = 0; i < c.size(); ++i) c(perm[i]) = track->c(i);
      track->r = reflect_vector(r);
      track->c = reflect_vector(c);
      track->scale *= 0.5;
      track->permutations.push_back(perm);
    }
  }
  return w;
}

HaarColumns haar_columns(int N, int n, RandomStream& rng) {
  if (n < 0 || N < 1 || n > N) throw ParameterError("haar_columns: require 0 <= n <= N");
  HaarColumns h{N, n, RealMatrix(N, n)};
  for (int c = 0; c < n; ++c) {
    for (;;) {
      RealVector g(N);
      for (int i = 0; i < N; ++i) g(i) = rng.normal();
      const double start = g.norm();
      // two Gram-Schmidt passes keep orthogonality at machine precision
      for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < c; ++j) g -= h.entries.col(j).dot(g) * h.entries.col(j);
      const double nrm = g.norm();
      if (nrm > 1e-12 * std::max(1.0, start)) {
        h.entries.col(c) = g / nrm;
        break;
      }
    }
  }
  return h;
}

RealMatrix random_rotate(const RealMatrix& m, int tau, RandomStream& rng) {
  if (tau < 2) throw ParameterError("random_rotate: require tau >= 2");
  const int rows = static_cast<int>(m.rows()), n = static_cast<int>(m.cols());
  RealMatrix padded(rows, tau * n);
  padded.leftCols(n) = m;
  for (int j = n; j < tau * n; ++j)
    for (int i = 0; i < rows; ++i) padded(i, j) = rng.normal();
  const HaarColumns r = haar_columns(tau * n, n, rng);
  return padded * r.entries;
}

double random_rotate_tv_bound(int n, int tau) {
  const double denom = static_cast<double>(tau) * n - n - 3.0;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * (n + 3.0) / denom;
}

std::pair<RealMatrix, RealMatrix> gaussian_clone(const RealMatrix& m, RandomStream& rng) {
  RealMatrix g(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) g(i, j) = rng.normal();
  const double s = 1.0 / std::sqrt(2.0);
  return {s * (m + g), s * (m - g)};
}

PdsClonePlan pds_clone_plan(double p, double q, double P, double Q) {
  if (!(p > q)) throw ParameterError("pds_clone: require p > q");
  if (!(Q > 0.0 && Q < 1.0)) throw ParameterError("pds_clone: require Q in (0,1)");
  if (!(P >= 0.0 && P <= 1.0)) throw ParameterError("pds_clone: require P in [0,1]");
  const double lo = std::sqrt((1.0 - p) / (1.0 - q));
  const double hi = std::sqrt(p / q);
  const double tol = 1e-12;
  auto check = [&](double r, const char* name) {
    if (r < lo * (1.0 - tol) || r > hi * (1.0 + tol))
      throw ParameterError(std::string("pds_clone: ratio ") + name + " = " + std::to_string(r) +
                           " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  };
  check(P / Q, "P/Q");
  check((1.0 - P) / (1.0 - Q), "(1-P)/(1-Q)");
  PdsClonePlan plan{};
  for (int v = 0; v < 4; ++v) {
    const int ones = (v & 1) + ((v >> 1) & 1);
    const double lp = std::pow(P, ones) * std::pow(1.0 - P, 2 - ones);
    const double lq = std::pow(Q, ones) * std::pow(1.0 - Q, 2 - ones);
    plan.edge[v] = ((1.0 - q) * lp - (1.0 - p) * lq) / (p - q);
    plan.non_edge[v] = (p * lq - q * lp) / (p - q);
    // round-off at the window boundary
    if (plan.edge[v] < 0.0 && plan.edge[v] > -1e-12) plan.edge[v] = 0.0;
    if (plan.non_edge[v] < 0.0 && plan.non_edge[v] > -1e-12) plan.non_edge[v] = 0.0;
    if (plan.edge[v] < 0.0 || plan.non_edge[v] < 0.0)
      throw ParameterError("pds_clone: negative pattern probability");
  }
  return plan;
}

std::pair<Graph, Graph> pds_clone(const Graph& g, double p, double q, double P, double Q, RandomStream& rng) {
  const auto plan = pds_clone_plan(p, q, P, Q);
  Graph a(g.n()), b(g.n());
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      const auto& law = g.has_edge(i, j) ? plan.edge : plan.non_edge;
      double u = rng.uniform();
      int v = 3;
      while (v > 0 && law[v] == 0.0) --v;
      for (int t = 0; t < 4; ++t) {
        if (u < law[t]) {
          v = t;
          break;
        }
        u -= law[t];
      }
      if (v & 1) a.set_edge(i, j, true);
      if (v & 2) b.set_edge(i, j, true);
    }
  }
  return {std::move(a), std::move(b)};
}

std::pair<double, double> pds_clone_preset_pds(double p, double q, double w) {
  return {(w * p + (1.0 - w) * q) / 2.0, q / 2.0};
}

std::pair<double, double> pds_clone_preset_pis(double q0) { return {1.0, 1.0 - q0 / 2.0}; }

}  // namespace planted
