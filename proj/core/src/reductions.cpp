#include "planted/reductions.hpp"

#include <cmath>
#include <limits>

#include "planted/cloning.hpp"
#include "planted/lifting.hpp"
#include "planted/linalg.hpp"
#include "planted/rejection.hpp"

namespace planted {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kernel_stage(int n) {
  const double nn = n;
  return 0.5 * nn * (nn - 1.0) / (nn * nn * nn);
}

double inv_sqrt_log(int n) { return 1.0 / std::sqrt(std::log(static_cast<double>(std::max(n, 3)))); }

void close_budget(ReductionOutput& out) {
  double s = 0.0;
  for (const auto& st : out.stages) s += st.bound;
  if (std::isfinite(s))
    out.tv_budget = s;
  else
    out.tv_budget.reset();
}

// Diagonal N(0,2), antisymmetric mixing, one-sided column relabel.
RealMatrix bc_finish(RealMatrix w, RandomStream& rng, std::vector<int>& col_perm) {
  const Eigen::Index n = w.rows();
  const double s2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) w(i, i) = s2 * rng.normal();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double a = rng.normal();
      w(i, j) += a;
      w(j, i) -= a;
    }
  w /= s2;
  col_perm = rng.permutation(static_cast<int>(n));
  RealMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) out.col(col_perm[j]) = w.col(j);
  return out;
}

RealVector indicator(const Support& s) {
  RealVector v = RealVector::Zero(s.universe());
  for (int i : s.indices()) v(i) = 1.0;
  return v;
}

Support support_of(const RealVector& v) {
  std::vector<int> idx;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0.0) idx.push_back(static_cast<int>(i));
  return Support(std::move(idx), static_cast<int>(v.size()));
}

bool reflection_window(int n, int k_out, int k_in) {
  if (k_in < 2) return true;
  return static_cast<double>(k_out) < n / std::log(static_cast<double>(k_in));
}

}  // namespace

ReductionOutput bc_reduce(const Graph& g, int ell, RandomStream& rng, const SourceInfo& src) {
  if (ell < 0) throw ParameterError("bc_reduce: ell must be >= 0");
  const int n = g.n();
  LiftTrace lt;
  lt.support = src.planted;
  RealMatrix w = gaussian_lift_matrix(g, ell, rng, &lt);
  std::vector<int> sigma;
  RealMatrix m = bc_finish(std::move(w), rng, sigma);

  ReductionOutput out;
  out.observation = std::move(m);
  out.target.problem = Problem::BC;
  out.target.n = n << ell;
  out.target.k = src.k << ell;
  out.target.mu = std::ldexp(gaussian_lift_mu(n), -ell) / std::sqrt(2.0);
  out.stages = {{"rk_G", kernel_stage(n)}, {"gaussian_lift+diagonal", inv_sqrt_log(n)}};
  close_budget(out);
  if (lt.support) {
    ReductionTrace tr;
    tr.row_support = lt.support;
    tr.col_support = permute_support(*lt.support, sigma);
    out.trace = tr;
  }
  return out;
}

double bc_recovery_mu(int n, double rho) {
  return std::log1p(2.0 * rho) / (2.0 * std::sqrt(6.0 * std::log(static_cast<double>(n)) + 2.0 * std::log(2.0)));
}

ReductionOutput bc_recovery_reduce(const Graph& g, double rho, RandomStream& rng, const SourceInfo& src) {
  const int n = g.n();
  if (!(rho >= 1.0 / n)) throw ParameterError("bc_recovery_reduce: require rho >= 1/n");
  if (!(rho < 0.5)) throw ParameterError("bc_recovery_reduce: require rho < 1/2");
  const double mu = bc_recovery_mu(n, rho);
  const double bound = gaussian_kernel_mu_bound(n, 0.5 + rho, 0.5);
  // This mean can exceed the kernel's own bound; the kernel is built anyway and
  // the stage is reported without a guarantee.
  const KernelSpec k = make_kernel_g_at(n, 0.5 + rho, 0.5, mu, false);
  RealMatrix w = apply_kernel(g, k, rng);
  std::vector<int> sigma;
  RealMatrix m = bc_finish(std::move(w), rng, sigma);

  ReductionOutput out;
  out.observation = std::move(m);
  out.target.problem = Problem::BC;
  out.target.n = n;
  out.target.k = src.k;
  out.target.mu = mu / std::sqrt(2.0);
  const bool kernel_ok = mu <= bound * (1.0 + 1e-12);
  out.stages = {{"rk_G", kernel_ok ? kernel_stage(n) : kInf}, {"diagonal", inv_sqrt_log(n)}};
  if (!kernel_ok) out.notes.push_back("kernel mean exceeds the rk_G bound at this rho");
  close_budget(out);
  if (src.planted) {
    ReductionTrace tr;
    tr.row_support = src.planted;
    tr.col_support = permute_support(*src.planted, sigma);
    out.trace = tr;
  }
  return out;
}

ReductionOutput ros_reduce(const Graph& g, int ell, RandomStream& rng, const SourceInfo& src) {
  const int n = g.n();
  if (n % 2 != 0) throw ParameterError("ros_reduce: n must be even");
  ReductionOutput bc = bc_reduce(g, 0, rng, src);
  SpikeTrack st;
  const bool tracking = bc.trace.has_value();
  if (tracking) {
    st.r = indicator(*bc.trace->row_support);
    st.c = indicator(*bc.trace->col_support);
  }
  RealMatrix m = reflection_clone(std::get<RealMatrix>(bc.observation), ell, rng, tracking ? &st : nullptr);

  ReductionOutput out;
  out.observation = std::move(m);
  out.target.problem = Problem::ROS;
  out.target.n = n;
  out.target.k = src.k << ell;
  out.target.mu = gaussian_lift_mu(n) * src.k / std::sqrt(2.0);
  out.stages = bc.stages;
  out.stages.push_back({"reflection_clone", src.k > 0 ? 1.0 / src.k : kInf});
  if (!reflection_window(n, out.target.k, src.k)) {
    out.stages.back().bound = kInf;
    out.notes.push_back("2^ell k >= n / log k: no total variation guarantee");
  }
  close_budget(out);
  if (tracking) {
    ReductionTrace tr;
    tr.spike_row = st.r;
    tr.spike_col = st.c;
    tr.row_support = support_of(st.r);
    tr.col_support = support_of(st.c);
    out.trace = tr;
  }
  return out;
}

ReductionOutput sros_reduce(const Graph& g, int k, int ell, RandomStream& rng, const SourceInfo& src) {
  const int n = g.n();
  if (n % 2 != 0) throw ParameterError("sros_reduce: n must be even");
  if (k < 1) throw ParameterError("sros_reduce: k must be >= 1");
  const double km1 = k - 1.0, nm1 = n - 1.0;
  if (km1 * km1 > nm1) throw ParameterError("sros_reduce: require (k-1)^2 <= n-1");
  const KernelSpec ker = make_kernel_g(n, 1.0, 0.5);
  const RealMatrix w = apply_kernel(g, ker, rng);

  RealMatrix a = RealMatrix::Zero(n, n), b = RealMatrix::Zero(n, n), c = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      a(i, j) = rng.normal();
      a(j, i) = -a(i, j);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b(i, j) = rng.normal();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) c(i, j) = rng.normal();

  const double s2 = std::sqrt(2.0);
  const double off = km1 / (2.0 * std::sqrt(nm1));
  const double cc = std::sqrt(std::max(0.0, 1.0 - km1 * km1 / nm1));
  const double diag = 1.0 / (2.0 * std::sqrt(nm1));
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      row += w(i, j) + a(i, j) - s2 * b(i, j);
      if (i != j) m(i, j) = off * (w(i, j) + a(i, j) + s2 * b(i, j)) + cc * c(i, j);
    }
    m(i, i) = diag * row;
  }

  SpikeTrack st;
  const bool tracking = src.planted.has_value();
  if (tracking) {
    st.r = indicator(*src.planted);
    st.c = st.r;
  }
  m = reflection_clone(m, ell, rng, tracking ? &st : nullptr);
  const auto sigma = rng.permutation(n);
  m = permute_symmetric(m, sigma);

  ReductionOutput out;
  out.observation = std::move(m);
  out.target.problem = Problem::SROS;
  out.target.n = n;
  out.target.k = k << ell;
  out.target.mu = gaussian_lift_mu(n) * k * km1 / (2.0 * std::sqrt(nm1));
  out.stages = {{"rk_G", kernel_stage(n)}, {"averaging", 1.0 / n}};
  if (!reflection_window(n, out.target.k, k)) {
    out.stages.back().bound = kInf;
    out.notes.push_back("2^ell k >= n / log k: no total variation guarantee");
  }
  close_budget(out);
  if (tracking) {
    RealVector r(n);
    for (int i = 0; i < n; ++i) r(sigma[i]) = st.r(i);
    ReductionTrace tr;
    tr.spike_row = r;
    tr.spike_col = r;
    tr.row_support = support_of(r);
    tr.col_support = tr.row_support;
    out.trace = tr;
  }
  return out;
}

RealMatrix symmetrize_to_ssw(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("symmetrize_to_ssw: matrix must be square");
  return (m + m.transpose()) / std::sqrt(2.0);
}

double ssbm_reduce_rho(int n, int k, int ell) {
  return phi(gaussian_lift_mu(n) * (k - 1.0) / (std::ldexp(2.0, ell) * std::sqrt(n - 1.0))) - 0.5;
}

ReductionOutput ssbm_reduce(const Graph& g, int k, int ell, RandomStream& rng, const SourceInfo& src) {
  ReductionOutput s = sros_reduce(g, k, ell, rng, src);
  auto& m = std::get<RealMatrix>(s.observation);
  const int n = static_cast<int>(m.rows());
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = rng.rademacher();
  Graph h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (x[i] * x[j] * m(i, j) > 0.0) h.set_edge(i, j, true);

  ReductionOutput out;
  out.observation = std::move(h);
  out.target.problem = Problem::SSBM;
  out.target.n = n;
  out.target.k = s.target.k;
  out.target.q = 0.5;
  out.target.rho = ssbm_reduce_rho(n, k, ell);
  out.stages = s.stages;
  out.stages.push_back({"ssbm_mixture", k > 0 ? 1.0 / k : kInf});
  out.notes = s.notes;
  close_budget(out);
  if (s.trace) {
    ReductionTrace tr;
    tr.row_support = s.trace->row_support;
    tr.col_support = s.trace->row_support;
    tr.spike_row = s.trace->spike_row;
    out.trace = tr;
  }
  return out;
}

ReductionOutput spca_high_sparsity(const Graph& g, int ell, int tau, RandomStream& rng, const SourceInfo& src) {
  if (tau < 2) throw ParameterError("spca_high_sparsity: require tau >= 2");
  ReductionOutput r = ros_reduce(g, ell, rng, src);
  const int n = g.n();
  ReductionOutput out;
  out.observation = random_rotate(std::get<RealMatrix>(r.observation), tau, rng);
  out.target.problem = Problem::SPCA;
  out.target.d = n;
  out.target.n = n;
  out.target.k = r.target.k;
  const double mu = gaussian_lift_mu(n);
  out.target.theta = mu * mu * src.k * src.k / (2.0 * tau * n);
  out.stages = r.stages;
  out.stages.push_back({"random_rotate", random_rotate_tv_bound(n, tau)});
  out.notes = r.notes;
  close_budget(out);
  if (r.trace) {
    ReductionTrace tr;
    tr.row_support = r.trace->row_support;
    tr.spike_row = r.trace->spike_row;
    out.trace = tr;
  }
  return out;
}

ReductionOutput spca_low_sparsity(const Graph& g, int ell, int tau, RandomStream& rng, const SourceInfo& src) {
  if (tau < 2) throw ParameterError("spca_low_sparsity: require tau >= 2");
  ReductionOutput b = bc_reduce(g, ell, rng, src);
  const int n = g.n(), N = n << ell;
  ReductionOutput out;
  out.observation = random_rotate(std::get<RealMatrix>(b.observation), tau, rng);
  out.target.problem = Problem::UBSPCA;
  out.target.d = N;
  out.target.n = N;
  out.target.k = b.target.k;
  const double mu = gaussian_lift_mu(n);
  out.target.theta = mu * mu * src.k * src.k / (std::ldexp(2.0, ell) * tau * n);
  out.stages = b.stages;
  out.stages.push_back({"random_rotate", random_rotate_tv_bound(N, tau)});
  close_budget(out);
  if (b.trace) {
    ReductionTrace tr;
    tr.row_support = b.trace->row_support;
    out.trace = tr;
  }
  return out;
}

ReductionOutput spca_recovery_reduce(const Graph& g, double rho, int tau, RandomStream& rng,
                                     const SourceInfo& src) {
  if (tau < 2) throw ParameterError("spca_recovery_reduce: require tau >= 2");
  ReductionOutput b = bc_recovery_reduce(g, rho, rng, src);
  const int n = g.n();
  ReductionOutput out;
  out.observation = random_rotate(std::get<RealMatrix>(b.observation), tau, rng);
  out.target.problem = Problem::UBSPCA;
  out.target.d = n;
  out.target.n = n;
  out.target.k = src.k;
  // spike strength of the biclustering stage is (mu/sqrt2) k
  const double lam = b.target.mu * src.k;
  out.target.theta = lam * lam / (static_cast<double>(tau) * n);
  out.stages = b.stages;
  out.stages.push_back({"random_rotate", random_rotate_tv_bound(n, tau)});
  out.notes = b.notes;
  close_budget(out);
  if (b.trace) {
    ReductionTrace tr;
    tr.row_support = b.trace->row_support;
    out.trace = tr;
  }
  return out;
}

namespace {

double log_or_zero(int k) { return k >= 2 ? std::log(static_cast<double>(k)) : 0.0; }

std::int64_t edges_within(const Graph& g, const Support& s) {
  std::int64_t c = 0;
  const auto& v = s.indices();
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) c += g.has_edge(v[a], v[b]);
  return c;
}

RealMatrix restrict(const RealMatrix& m, const Support& rows, const Support& cols) {
  RealMatrix out(rows.size(), cols.size());
  for (int a = 0; a < rows.size(); ++a)
    for (int b = 0; b < cols.size(); ++b) out(a, b) = m(rows.indices()[a], cols.indices()[b]);
  return out;
}

}  // namespace

Verdict detect_via_recovery(Problem problem, const RecoverFn& recover, const DetectionInput& instance,
                            const DetectionParams& params, RandomStream& rng) {
  const int k = params.k;
  const double kk = k;
  const double pairs = kk * (kk - 1.0) / 2.0;
  Verdict v;
  switch (problem) {
    case Problem::BC:
    case Problem::ROS: {
      const auto* m = std::get_if<RealMatrix>(&instance);
      if (!m) throw ParameterError("detect_via_recovery: matrix instance expected");
      auto [m1, m2] = gaussian_clone(*m, rng);
      RandomStream sub = rng.split(1);
      const RecoveryResult r = recover(DetectionInput{m1}, sub);
      const Support& rows = r.row_support;
      const Support& cols = r.col_support ? *r.col_support : r.row_support;
      const RealMatrix w = restrict(m2, rows, cols);
      if (problem == Problem::BC) {
        v.statistic = w.size() ? w.sum() : 0.0;
        v.threshold = kk * params.tau_k.value_or(log_or_zero(k));
        v.rule = "sum>=";
      } else {
        v.statistic = w.size() ? top_singular(w).value : 0.0;
        v.threshold = 2.0 * std::sqrt(kk) + std::sqrt(2.0 * log_or_zero(k));
        v.rule = "sigma1>=";
      }
      v.decision = v.statistic >= v.threshold ? Hypothesis::H1 : Hypothesis::H0;
      return v;
    }
    case Problem::PIS: {
      const auto* g = std::get_if<Graph>(&instance);
      if (!g) throw ParameterError("detect_via_recovery: graph instance expected");
      const double q0 = params.q;
      auto [P, Q] = pds_clone_preset_pis(q0);
      auto [g1, g2] = pds_clone(g->complement(), 1.0, 1.0 - q0, P, Q, rng);
      RandomStream sub = rng.split(1);
      const RecoveryResult r = recover(DetectionInput{g1.complement()}, sub);
      const double qc = q0 / 2.0;
      v.statistic = static_cast<double>(edges_within(g2.complement(), r.row_support));
      v.threshold = pairs * qc - kk * std::sqrt(qc * (1.0 - qc) * log_or_zero(k));
      v.rule = "edges<=";
      v.decision = v.statistic <= v.threshold ? Hypothesis::H1 : Hypothesis::H0;
      return v;
    }
    case Problem::PDS: {
      const auto* g = std::get_if<Graph>(&instance);
      if (!g) throw ParameterError("detect_via_recovery: graph instance expected");
      auto [P, Q] = pds_clone_preset_pds(params.p, params.q, params.pds_w);
      auto [g1, g2] = pds_clone(*g, params.p, params.q, P, Q, rng);
      RandomStream sub = rng.split(1);
      const RecoveryResult r = recover(DetectionInput{g1}, sub);
      v.statistic = static_cast<double>(edges_within(g2, r.row_support));
      v.threshold = pairs * Q + kk * std::sqrt(Q * (1.0 - Q) * log_or_zero(k));
      v.rule = "edges>=";
      v.decision = v.statistic >= v.threshold ? Hypothesis::H1 : Hypothesis::H0;
      return v;
    }
    case Problem::SPCA: {
      const auto* s = std::get_if<SamplePair>(&instance);
      if (!s) throw ParameterError("detect_via_recovery: two sample matrices expected for SPCA");
      RandomStream sub = rng.split(1);
      const RecoveryResult r = recover(DetectionInput{s->first}, sub);
      const int n = static_cast<int>(s->second.cols());
      RealMatrix xs(r.row_support.size(), n);
      for (int a = 0; a < r.row_support.size(); ++a) xs.row(a) = s->second.row(r.row_support.indices()[a]);
      const RealMatrix cov = xs * xs.transpose() / static_cast<double>(n);
      v.statistic = cov.size() ? top_eigen(cov).value : 0.0;
      v.threshold = 1.0 + 2.0 * std::sqrt(kk / n);
      v.rule = "lambda1>=";
      v.decision = v.statistic >= v.threshold ? Hypothesis::H1 : Hypothesis::H0;
      return v;
    }
    default:
      throw ParameterError("detect_via_recovery: unsupported problem " + to_string(problem));
  }
}

}  // namespace planted
