#include "planted/lifting.hpp"

#include <cmath>
#include <random>

namespace planted {

namespace {

constexpr std::array<std::array<int, 3>, 4> kCloneSigns = {{
    {+1, +1, +1},
    {-1, +1, -1},
    {+1, -1, -1},
    {-1, -1, +1},
}};

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void track(LiftTrace* trace, int m, const std::vector<int>& perm) {
  if (!trace) return;
  trace->permutations.push_back(perm);
  if (trace->support) trace->support = permute_support(mirror_support(*trace->support, m), perm);
}

}  // namespace

std::array<double, 4> poisson_split(double x, RandomStream& rng) {
  std::array<double, 4> out{};
  auto left = static_cast<long long>(x);
  for (int b = 0; b < 3; ++b) {
    if (left == 0) break;
    std::binomial_distribution<long long> bin(left, 1.0 / (4 - b));
    const long long take = bin(rng.engine());
    out[b] = static_cast<double>(take);
    left -= take;
  }
  out[3] = static_cast<double>(left);
  return out;
}

std::array<double, 4> gaussian_split(double x, RandomStream& rng) {
  const double g[3] = {rng.normal(), rng.normal(), rng.normal()};
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const auto& h = kCloneSigns[i];
    out[i] = 0.5 * (x + h[0] * g[0] + h[1] * g[1] + h[2] * g[2]);
  }
  return out;
}

CloneFamily poisson_family(const KernelSpec& kernel, double lambda0) {
  CloneFamily f;
  f.clone = [](double x, double, RandomStream& rng) { return poisson_split(x, rng); };
  f.param_update = [](double l) { return l / 4.0; };
  f.noise = [](double l, RandomStream& rng) { return static_cast<double>(rng.poisson(l)); };
  f.threshold = 0.0;
  f.initial_kernel = kernel;
  f.lambda0 = lambda0;
  return f;
}

CloneFamily gaussian_family(const KernelSpec& kernel, double mu) {
  CloneFamily f;
  f.clone = [](double x, double, RandomStream& rng) { return gaussian_split(x, rng); };
  f.param_update = [](double l) { return l / 2.0; };
  f.noise = [](double, RandomStream& rng) { return rng.normal(); };
  f.threshold = 0.0;
  f.initial_kernel = kernel;
  f.lambda0 = mu;
  return f;
}

RealMatrix permute_symmetric(const RealMatrix& m, const std::vector<int>& perm) {
  const auto n = m.rows();
  RealMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(perm[i], perm[j]) = m(i, j);
  return out;
}

Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
  Graph out(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.has_edge(i, j)) out.set_edge(perm[i], perm[j], true);
  return out;
}

Support permute_support(const Support& s, const std::vector<int>& perm) {
  std::vector<int> idx;
  idx.reserve(s.indices().size());
  for (int i : s.indices()) idx.push_back(perm[i]);
  return Support(std::move(idx), static_cast<int>(perm.size()));
}

Support mirror_support(const Support& s, int m) {
  std::vector<int> idx = s.indices();
  for (int i : s.indices()) idx.push_back(2 * m - 1 - i);
  return Support(std::move(idx), 2 * m);
}

RealMatrix apply_kernel(const Graph& g, const KernelSpec& spec, RandomStream& rng) {
  spec.validate();
  const int n = g.n();
  RealMatrix w = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = rejection_kernel(g.has_edge(i, j), spec, rng);
  return w;
}

Graph threshold_graph(const RealMatrix& w, double t) {
  const int n = static_cast<int>(w.rows());
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w(i, j) > t) g.set_edge(i, j, true);
  return g;
}

std::array<double, 16> pc_lift_pattern_probs(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw ParameterError("pc_lift: density must lie in [0,1)");
  const double s = std::pow(p, 0.25);
  std::array<double, 16> pr{};
  for (int v = 0; v < 15; ++v) {
    const int ones = __builtin_popcount(static_cast<unsigned>(v));
    pr[v] = std::pow(s, ones) * std::pow(1.0 - s, 4 - ones) / (1.0 - p);
  }
  pr[15] = 0.0;
  return pr;
}

Graph pc_lift(const Graph& g, int ell, double w, RandomStream& rng, LiftTrace* trace) {
  if (ell < 0) throw ParameterError("pc_lift: ell must be >= 0");
  // w = 2 is allowed: Step 1 then adds nothing.
  if (!(w >= 2.0)) throw ParameterError("pc_lift: require w(n) >= 2");
  Graph cur = g;
  const double add = 1.0 - 2.0 / w;
  for (int i = 0; i < cur.n(); ++i)
    for (int j = i + 1; j < cur.n(); ++j)
      if (!cur.has_edge(i, j) && rng.bernoulli(add)) cur.set_edge(i, j, true);
  double p = 1.0 - 1.0 / w;

  for (int round = 0; round < ell; ++round) {
    const int m = cur.n();
    const auto pr = pc_lift_pattern_probs(p);
    std::array<double, 15> cum{};
    double acc = 0.0;
    for (int v = 0; v < 15; ++v) cum[v] = (acc += pr[v]);
    Graph next(2 * m);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        int bits = 15;
        if (!cur.has_edge(i, j)) {
          const double u = rng.uniform() * acc;
          bits = 14;
          for (int v = 0; v < 15; ++v)
            if (u < cum[v]) {
              bits = v;
              break;
            }
        }
        const int ri = 2 * m - 1 - i, rj = 2 * m - 1 - j;
        if (bits & 1) next.set_edge(i, j, true);
        if (bits & 2) next.set_edge(ri, j, true);
        if (bits & 4) next.set_edge(i, rj, true);
        if (bits & 8) next.set_edge(ri, rj, true);
      }
      next.set_edge(i, 2 * m - 1 - i, true);
    }
    const auto perm = rng.permutation(2 * m);
    cur = permute_graph(next, perm);
    track(trace, m, perm);
    p = std::pow(p, 0.25);
  }
  return cur;
}

Graph pc_lift(const Graph& g, int ell, RandomStream& rng, LiftTrace* trace) {
  return pc_lift(g, ell, std::log(static_cast<double>(g.n())), rng, trace);
}

RealMatrix distributional_lift(const RealMatrix& m, int ell, const CloneFamily& family, RandomStream& rng,
                               LiftTrace* trace) {
  if (ell < 0) throw ParameterError("distributional_lift: ell must be >= 0");
  if (m.rows() != m.cols()) throw ContractError("distributional_lift: matrix must be square");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0.0) throw ContractError("distributional_lift: diagonal must be zero");
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) throw ContractError("distributional_lift: matrix must be symmetric");
  }
  RealMatrix cur = m;
  double lambda = family.lambda0;
  for (int round = 0; round < ell; ++round) {
    const int n = static_cast<int>(cur.rows());
    const int two = 2 * n;
    const double next_lambda = family.param_update(lambda);
    RealMatrix next = RealMatrix::Zero(two, two);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto x = family.clone(cur(i, j), lambda, rng);
        const int ri = two - 1 - i, rj = two - 1 - j;
        next(i, j) = next(j, i) = x[0];
        next(ri, j) = next(j, ri) = x[1];
        next(i, rj) = next(rj, i) = x[2];
        next(ri, rj) = next(rj, ri) = x[3];
      }
      const double z = family.noise(next_lambda, rng);
      next(i, two - 1 - i) = next(two - 1 - i, i) = z;
    }
    const auto perm = rng.permutation(two);
    cur = permute_symmetric(next, perm);
    track(trace, n, perm);
    lambda = next_lambda;
  }
  return cur;
}

Densities poisson_lift_densities(int n, int ell, double eps, double c) {
  const double lambda0 = std::pow(static_cast<double>(n), -eps);
  const double scale = std::pow(4.0, -ell);
  return {-std::expm1(-scale * c * lambda0), -std::expm1(-scale * lambda0)};
}

Graph poisson_lift(const Graph& g, int ell, double gamma, double eps, double c, RandomStream& rng,
                   LiftTrace* trace) {
  const KernelSpec k = make_kernel_p1(g.n(), c, gamma, eps);
  const auto fam = poisson_family(k, *k.record.lambda);
  const RealMatrix w = apply_kernel(g, k, rng);
  return threshold_graph(distributional_lift(w, ell, fam, rng, trace), fam.threshold);
}

double gaussian_lift_mu(int n) {
  return std::log(2.0) / (2.0 * std::sqrt(6.0 * std::log(static_cast<double>(n)) + 2.0 * std::log(2.0)));
}

RealMatrix gaussian_lift_matrix(const Graph& g, int ell, RandomStream& rng, LiftTrace* trace) {
  const KernelSpec k = make_kernel_g(g.n(), 1.0, 0.5);
  const auto fam = gaussian_family(k, *k.record.mu);
  const RealMatrix w = apply_kernel(g, k, rng);
  return distributional_lift(w, ell, fam, rng, trace);
}

Graph gaussian_lift_graph(const Graph& g, int ell, RandomStream& rng, LiftTrace* trace) {
  return threshold_graph(gaussian_lift_matrix(g, ell, rng, trace), 0.0);
}

Densities gaussian_lift_densities(int n, int ell) {
  return {phi(std::ldexp(gaussian_lift_mu(n), -ell)), 0.5};
}

GeneralPdsParams general_pds_params(int n, int ell1, int ell2, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("general_pds_reduce: require eps in (0,1)");
  if (ell1 < 0 || ell2 < 0) throw ParameterError("general_pds_reduce: ell1, ell2 must be >= 0");
  GeneralPdsParams out{};
  const int n1 = n << ell1;
  const double top = phi(std::ldexp(gaussian_lift_mu(n), -ell1));
  out.n_out = n1 << ell2;
  out.rho = top - 0.5;
  out.c = std::pow(2.0 * top, eps / 4.0);
  out.lambda = std::pow(static_cast<double>(n1), -eps);
  const double scale = std::pow(4.0, -ell2);
  out.densities = {-std::expm1(-scale * out.c * out.lambda), -std::expm1(-scale * out.lambda)};
  return out;
}

Graph general_pds_reduce(const Graph& g, int ell1, int ell2, double eps, RandomStream& rng, LiftTrace* trace) {
  const auto prm = general_pds_params(g.n(), ell1, ell2, eps);
  const Graph h = gaussian_lift_graph(g, ell1, rng, trace);
  const KernelSpec k = make_kernel_p2(h.n(), prm.rho, prm.c, eps, 1);
  const auto fam = poisson_family(k, prm.lambda);
  const RealMatrix w = apply_kernel(h, k, rng);
  return threshold_graph(distributional_lift(w, ell2, fam, rng, trace), fam.threshold);
}

}  // namespace planted
