#include <gtest/gtest.h>

#include <cmath>

#include "planted/cloning.hpp"
#include "planted/instances.hpp"
#include "planted/lifting.hpp"
#include "planted/reductions.hpp"
#include "planted/stats.hpp"

using namespace planted;

namespace {

PlantedGraphInstance pc(int n, int k, Hypothesis h, RandomStream& r) {
  ProblemParams p;
  p.problem = Problem::PC;
  p.n = n;
  p.k = k;
  p.p = 0.5;
  return gen_graph(p, h, r);
}

SourceInfo info(const PlantedGraphInstance& g, int k) { return SourceInfo{k, g.support}; }

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double lift_mu(double n) { return std::log(2.0) / (2.0 * std::sqrt(6.0 * std::log(n) + 2.0 * std::log(2.0))); }

void expect_budget_is_sum(const ReductionOutput& out) {
  double s = 0;
  for (const auto& st : out.stages) s += st.bound;
  if (std::isfinite(s)) {
    ASSERT_TRUE(out.tv_budget.has_value());
    EXPECT_DOUBLE_EQ(*out.tv_budget, s);
  } else {
    EXPECT_FALSE(out.tv_budget.has_value());
  }
}

std::vector<double> entries(const RealMatrix& m) { return {m.data(), m.data() + m.size()}; }
double ncdf(double v) { return 0.5 * std::erfc(-v / std::sqrt(2.0)); }

}  // namespace

TEST(BcReduce, ShapeTargetBudget) {
  RandomStream r(1);
  const auto g = pc(32, 4, Hypothesis::H1, r);
  const Graph before = g.graph;
  const auto out = bc_reduce(g.graph, 2, r, info(g, 4));
  EXPECT_EQ(g.graph, before);
  const auto& m = std::get<RealMatrix>(out.observation);
  EXPECT_EQ(m.rows(), 128);
  EXPECT_EQ(out.target.k, 16);
  EXPECT_NEAR(out.target.mu, std::pow(2.0, -2.5) * lift_mu(32), 1e-15);
  expect_budget_is_sum(out);
  ASSERT_TRUE(out.trace.has_value());
  EXPECT_EQ(out.trace->row_support->size(), 16);
  EXPECT_EQ(out.trace->col_support->size(), 16);
}

TEST(BcReduce, NullEntriesGaussian) {
  RandomStream r(2);
  std::vector<double> x;
  for (int t = 0; t < 4; ++t) {
    const auto g = pc(128, 8, Hypothesis::H0, r);
    const auto m = std::get<RealMatrix>(bc_reduce(g.graph, 0, r).observation);
    const auto e = entries(m);
    x.insert(x.end(), e.begin(), e.end());
  }
  EXPECT_GT(gof_test(x, ncdf).p_value, 1e-3);
}

TEST(BcReduce, TrackedMeanShift) {
  RandomStream r(3);
  const int n = 128, k = 16, trials = 20;
  double in = 0, out_s = 0;
  std::int64_t nin = 0, nout = 0;
  for (int t = 0; t < trials; ++t) {
    const auto g = pc(n, k, Hypothesis::H1, r);
    const auto o = bc_reduce(g.graph, 0, r, info(g, k));
    const auto& m = std::get<RealMatrix>(o.observation);
    const auto rm = o.trace->row_support->mask(), cm = o.trace->col_support->mask();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (rm[i] && cm[j]) {
          in += m(i, j);
          ++nin;
        } else {
          out_s += m(i, j);
          ++nout;
        }
      }
  }
  const double want = lift_mu(n) / std::sqrt(2.0);
  EXPECT_NEAR(in / nin, want, 3.0 / std::sqrt(static_cast<double>(nin)));
  EXPECT_NEAR(out_s / nout, 0.0, 3.0 / std::sqrt(static_cast<double>(nout)));
}

TEST(BcRecovery, MuAndSupport) {
  EXPECT_NEAR(bc_recovery_mu(1000, 0.1), std::log(1.2) / (2 * std::sqrt(6 * std::log(1000.0) + 2 * std::log(2.0))),
              1e-15);
  EXPECT_NEAR(bc_recovery_mu(1000, 0.1), 0.013929, 1e-6);
  RandomStream r(4);
  for (int t = 0; t < 5; ++t) {
    const auto g = pc(64, 6, Hypothesis::H1, r);
    const auto o = bc_recovery_reduce(g.graph, 0.1, r, info(g, 6));
    EXPECT_EQ(*o.trace->row_support, *g.support);
    EXPECT_NEAR(o.target.mu, bc_recovery_mu(64, 0.1) / std::sqrt(2.0), 1e-15);
    expect_budget_is_sum(o);
  }
  EXPECT_THROW(bc_recovery_reduce(Graph(10), 0.01, r), ParameterError);
}

TEST(RosReduce, TrackedSpikeNorm) {
  RandomStream r(5);
  const int n = 64, k = 4, ell = 2;
  for (int t = 0; t < 5; ++t) {
    const auto g = pc(n, k, Hypothesis::H1, r);
    const auto o = ros_reduce(g.graph, ell, r, info(g, k));
    ASSERT_TRUE(o.trace && o.trace->spike_row);
    const RealVector& sr = *o.trace->spike_row;
    for (int i = 0; i < sr.size(); ++i) ASSERT_EQ(sr(i), std::round(sr(i)));
    ASSERT_EQ(sr.squaredNorm(), static_cast<double>((1 << ell) * k));
    ASSERT_EQ(o.trace->spike_col->squaredNorm(), static_cast<double>((1 << ell) * k));
    EXPECT_EQ(o.target.k, 16);
    EXPECT_NEAR(o.target.mu, lift_mu(n) * k / std::sqrt(2.0), 1e-15);
    expect_budget_is_sum(o);
  }
}

TEST(RosReduce, ZeroRoundsEqualsBc) {
  RandomStream r(6);
  const auto g = pc(32, 4, Hypothesis::H1, r);
  RandomStream a(77), b(77);
  const auto x = std::get<RealMatrix>(ros_reduce(g.graph, 0, a).observation);
  const auto y = std::get<RealMatrix>(bc_reduce(g.graph, 0, b).observation);
  EXPECT_TRUE((x.array() == y.array()).all());
}

TEST(RosReduce, WindowViolationUnbounded) {
  RandomStream r(7);
  const auto g = pc(16, 4, Hypothesis::H1, r);
  const auto o = ros_reduce(g.graph, 3, r, info(g, 4));  // 32 >= 16 / ln 4
  EXPECT_FALSE(o.tv_budget.has_value());
  EXPECT_FALSE(o.notes.empty());
}

TEST(SrosReduce, NullVariances) {
  RandomStream r(8);
  const int n = 64;
  double off = 0, dg = 0;
  std::int64_t no = 0, nd = 0;
  for (int t = 0; t < 30; ++t) {
    const auto g = pc(n, 4, Hypothesis::H0, r);
    const auto m = std::get<RealMatrix>(sros_reduce(g.graph, 4, 0, r).observation);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) {
          dg += m(i, j) * m(i, j);
          ++nd;
        } else {
          off += m(i, j) * m(i, j);
          ++no;
        }
      }
  }
  EXPECT_NEAR(off / no, 1.0, 0.05);
  EXPECT_NEAR(dg / nd, 1.0, 0.1);
}

TEST(SrosReduce, TargetAndPreconditions) {
  RandomStream r(9);
  const auto g = pc(64, 4, Hypothesis::H1, r);
  const auto o = sros_reduce(g.graph, 4, 1, r, info(g, 4));
  EXPECT_EQ(o.target.k, 8);
  EXPECT_NEAR(o.target.mu, lift_mu(64) * 4 * 3 / (2 * std::sqrt(63.0)), 1e-15);
  EXPECT_EQ(o.trace->row_support->size(), 8);
  EXPECT_THROW(sros_reduce(g.graph, 10, 0, r), ParameterError);  // 81 > 63
}

TEST(Symmetrize, Cases) {
  RandomStream r(10);
  RealMatrix a = standard_normal(6, 6, r);
  const RealMatrix s = a + a.transpose();
  EXPECT_LE((symmetrize_to_ssw(s) - std::sqrt(2.0) * s).cwiseAbs().maxCoeff(), 1e-14);
  const RealMatrix anti = a - a.transpose();
  EXPECT_LE(symmetrize_to_ssw(anti).cwiseAbs().maxCoeff(), 1e-15);
  double off = 0, dg = 0;
  const int B = 200;
  for (int t = 0; t < B; ++t) {
    const RealMatrix w = symmetrize_to_ssw(standard_normal(20, 20, r));
    ASSERT_TRUE(w.isApprox(w.transpose(), 0.0));
    off += w(0, 1) * w(0, 1) + w(3, 7) * w(3, 7);
    dg += w(2, 2) * w(2, 2);
  }
  EXPECT_NEAR(off / (2 * B), 1.0, 0.2);
  EXPECT_NEAR(dg / B, 2.0, 0.4);
}

TEST(SsbmReduce, RhoFormula) {
  const double want = phi(lift_mu(1000) * 31 / (2 * std::sqrt(999.0))) - 0.5;
  EXPECT_NEAR(ssbm_reduce_rho(1000, 32, 0), want, 1e-15);
  EXPECT_NEAR(want, 0.010360, 5e-6);  // documented to four significant places
}

TEST(SsbmReduce, NullEdgesHalf) {
  RandomStream r(11);
  std::int64_t e = 0, pairs = 0;
  for (int t = 0; t < 10; ++t) {
    const auto g = pc(64, 4, Hypothesis::H0, r);
    const auto o = ssbm_reduce(g.graph, 4, 0, r);
    e += std::get<Graph>(o.observation).edge_count();
    pairs += 64 * 63 / 2;
  }
  EXPECT_TRUE(within_se(e, pairs, 0.5, 3.0));
}

TEST(SpcaReductions, ThetaFormulas) {
  // arithmetic oracle for the documented operating point
  const double mu = lift_mu(1000);
  EXPECT_NEAR(mu * mu * 1024 / (2 * 1e4), 1.436e-4, 1e-6);

  RandomStream r(12);
  const int n = 32, k = 4, tau = 2;
  const auto g = pc(n, k, Hypothesis::H1, r);
  const auto hi = spca_high_sparsity(g.graph, 0, tau, r, info(g, k));
  EXPECT_NEAR(hi.target.theta, lift_mu(n) * lift_mu(n) * k * k / (2.0 * tau * n), 1e-15);
  const auto lo = spca_low_sparsity(g.graph, 0, tau, r, info(g, k));
  EXPECT_NEAR(lo.target.theta, hi.target.theta, 1e-15);
  EXPECT_EQ(*lo.trace->row_support, *g.support);
  const auto& x = std::get<RealMatrix>(hi.observation);
  EXPECT_EQ(x.rows(), n);
  EXPECT_EQ(x.cols(), n);
  expect_budget_is_sum(hi);

  const auto rec = spca_recovery_reduce(g.graph, 0.1, tau, r, info(g, k));
  const double m2 = bc_recovery_mu(n, 0.1) / std::sqrt(2.0);
  EXPECT_NEAR(rec.target.theta, (m2 * k) * (m2 * k) / (tau * n), 1e-15);
  EXPECT_EQ(*rec.trace->row_support, *g.support);
}

TEST(SpcaReductions, NullPooledGaussian) {
  RandomStream r(13);
  std::vector<double> x;
  for (int t = 0; t < 4; ++t) {
    const auto g = pc(64, 4, Hypothesis::H0, r);
    const auto e = entries(std::get<RealMatrix>(spca_high_sparsity(g.graph, 0, 2, r).observation));
    x.insert(x.end(), e.begin(), e.end());
  }
  EXPECT_GT(gof_test(x, ncdf).p_value, 1e-3);
}

TEST(DetectViaRecovery, BcOracle) {
  RandomStream r(14);
  const int n = 100, k = 20, trials = 30;
  ProblemParams p;
  p.problem = Problem::BC;
  p.n = n;
  p.k = k;
  p.mu = 1.0;
  int err = 0;
  for (int t = 0; t < trials; ++t) {
    for (Hypothesis h : {Hypothesis::H0, Hypothesis::H1}) {
      const auto inst = gen_matrix(p, h, r);
      const Support rows = inst.row_support.value_or(Support(r.subset(n, k), n));
      const Support cols = inst.col_support.value_or(Support(r.subset(n, k), n));
      RecoverFn oracle = [&](const DetectionInput&, RandomStream&) {
        RecoveryResult rr;
        rr.row_support = rows;
        rr.col_support = cols;
        return rr;
      };
      const Verdict v = detect_via_recovery(Problem::BC, oracle, inst.matrix, DetectionParams{k}, r);
      EXPECT_DOUBLE_EQ(v.threshold, k * std::log(static_cast<double>(k)));
      err += v.decision != h;
    }
  }
  EXPECT_LE(err, 2);
}

TEST(DetectViaRecovery, WrongInputKind) {
  RandomStream r(15);
  RecoverFn f = [](const DetectionInput&, RandomStream&) { return RecoveryResult{}; };
  EXPECT_THROW(detect_via_recovery(Problem::BC, f, Graph(4), DetectionParams{2}, r), ParameterError);
  EXPECT_THROW(detect_via_recovery(Problem::SSBM, f, Graph(4), DetectionParams{2}, r), ParameterError);
}
