#include <gtest/gtest.h>

#include <cmath>

#include "planted/instances.hpp"
#include "planted/lifting.hpp"
#include "planted/rejection.hpp"
#include "planted/stats.hpp"

using namespace planted;

namespace {

Graph clique_graph(int n, const std::vector<int>& s, double p, RandomStream& r) {
  Graph g = erdos_renyi(n, p, r);
  for (int a : s)
    for (int b : s)
      if (a < b) g.set_edge(a, b, true);
  return g;
}

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST(PcLift, PatternProbabilitiesNormalised) {
  for (double p : {0.0, 0.3, 0.5, 0.9, 0.999}) {
    const auto pr = pc_lift_pattern_probs(p);
    // oracle: enumerate the 4 bits explicitly
    double total = 0;
    const double s = std::pow(p, 0.25);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) {
            const int v = a | b << 1 | c << 2 | d << 3;
            if (v == 15) continue;
            const int ones = a + b + c + d;
            double want = 1.0;
            for (int t = 0; t < 4; ++t) want *= t < ones ? s : 1 - s;
            want /= 1 - p;
            EXPECT_NEAR(pr[v], want, 1e-12);
            total += pr[v];
          }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_EQ(pr[15], 0.0);
  }
}

TEST(PcLift, WTwoAddsNothing) {
  RandomStream r(1);
  const Graph g = erdos_renyi(30, 0.3, r);
  EXPECT_EQ(pc_lift(g, 0, 2.0, r), g);
}

TEST(PcLift, CliqueDoublesAndIsTracked) {
  RandomStream r(2);
  for (int t = 0; t < 10; ++t) {
    const auto s = r.subset(32, 5);
    const Graph g = clique_graph(32, s, 0.5, r);
    LiftTrace tr;
    tr.support = Support(s, 32);
    const Graph h = pc_lift(g, 3, r, &tr);
    ASSERT_EQ(h.n(), 256);
    ASSERT_EQ(tr.permutations.size(), 3u);
    ASSERT_EQ(tr.support->size(), 40);
    for (int a : tr.support->indices())
      for (int b : tr.support->indices())
        if (a != b) ASSERT_TRUE(h.has_edge(a, b));
  }
}

TEST(PcLift, MirrorSupport) {
  const Support s({0, 2}, 4);
  EXPECT_EQ(mirror_support(s, 4).indices(), (std::vector<int>{0, 2, 5, 7}));
}

TEST(PcLift, NullEdgeDensity) {
  // G(n, 1/2) lifted once has density (1 - 1/w)^(1/4) off the forced pairs
  RandomStream r(3);
  const int n = 200;
  const double w = std::log(static_cast<double>(n));
  std::int64_t e = 0, pairs = 0;
  for (int t = 0; t < 5; ++t) {
    const Graph h = pc_lift(erdos_renyi(n, 0.5, r), 1, w, r);
    e += h.edge_count() - n;  // remove the n forced edges
    pairs += static_cast<std::int64_t>(2 * n) * (2 * n - 1) / 2 - n;
  }
  EXPECT_TRUE(within_se(e, pairs, std::pow(1 - 1 / w, 0.25), 4.0));
}

TEST(Splits, PoissonConservesCount) {
  RandomStream r(4);
  for (int t = 0; t < 1000; ++t) {
    const double x = static_cast<double>(r.poisson(5.0));
    const auto s = poisson_split(x, r);
    ASSERT_EQ(s[0] + s[1] + s[2] + s[3], x);
  }
}

TEST(Splits, GaussianSumAndOrthogonality) {
  RandomStream r(5);
  for (int t = 0; t < 100; ++t) {
    const double x = r.normal();
    const auto s = gaussian_split(x, r);
    // the four sign rows sum to (4, 0, 0, 0), so the outputs sum to 2x
    ASSERT_NEAR(s[0] + s[1] + s[2] + s[3], 2 * x, 1e-12);
  }
}

TEST(DistributionalLift, IdentityAtZeroRounds) {
  RandomStream r(6);
  RealMatrix m = RealMatrix::Zero(5, 5);
  m(1, 2) = m(2, 1) = 3.0;
  const auto fam = poisson_family(make_kernel_p1(100, 2.0, 0.01, 0.5), 0.1);
  EXPECT_TRUE((distributional_lift(m, 0, fam, r).array() == m.array()).all());
  RealMatrix bad = m;
  bad(0, 0) = 1.0;
  EXPECT_THROW(distributional_lift(bad, 1, fam, r), ContractError);
}

TEST(DistributionalLift, PoissonEntriesThinned) {
  RandomStream r(7);
  const int n = 40;
  const double lam = 0.8;
  const auto fam = poisson_family(make_kernel_p1(100, 2.0, 0.01, 0.5), lam);
  std::vector<std::int64_t> x;
  while (x.size() < 100000) {
    RealMatrix m = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = static_cast<double>(r.poisson(lam));
    const RealMatrix out = distributional_lift(m, 2, fam, r);
    ASSERT_EQ(out.rows(), 4 * n);
    for (int i = 0; i < out.rows(); ++i)
      for (int j = i + 1; j < out.cols(); ++j) x.push_back(static_cast<std::int64_t>(out(i, j)));
  }
  std::vector<double> pmf;
  const double l = lam / 16;
  for (int v = 0; v < 6; ++v) pmf.push_back(std::exp(-l + v * std::log(l) - std::lgamma(v + 1.0)));
  EXPECT_GT(gof_test(x, DiscreteReference{0, pmf}).p_value, 1e-3);
}

TEST(PoissonLift, Densities) {
  const Densities d = poisson_lift_densities(100, 1, 0.5, 2.0);
  EXPECT_NEAR(d.q, 1 - std::exp(-0.025), 1e-15);
  EXPECT_NEAR(d.p, 1 - std::exp(-0.05), 1e-15);
  EXPECT_NEAR(d.q, 0.02469, 1e-5);
  EXPECT_NEAR(d.p, 0.04877, 1e-5);
  EXPECT_GT(d.p, d.q);
}

TEST(PoissonLift, NullEdgeFrequency) {
  RandomStream r(8);
  const int n = 100;
  const Densities d = poisson_lift_densities(n, 1, 0.5, 2.0);
  std::int64_t e = 0, pairs = 0;
  for (int t = 0; t < 20; ++t) {
    const Graph h = poisson_lift(erdos_renyi(n, 0.01, r), 1, 0.01, 0.5, 2.0, r);
    e += h.edge_count();
    pairs += static_cast<std::int64_t>(2 * n) * (2 * n - 1) / 2;
  }
  EXPECT_TRUE(within_se(e, pairs, d.q, 3.0));
}

TEST(GaussianLift, MuAndDensities) {
  EXPECT_NEAR(gaussian_lift_mu(1000), 0.05296, 5e-6);
  const Densities d = gaussian_lift_densities(1000, 2);
  EXPECT_NEAR(d.p, phi(gaussian_lift_mu(1000) / 4), 1e-15);
  EXPECT_EQ(d.q, 0.5);
}

TEST(GaussianLift, NullGraphIsHalfDense) {
  RandomStream r(9);
  const int n = 128;
  std::int64_t e = 0, pairs = 0;
  for (int t = 0; t < 4; ++t) {
    const Graph h = gaussian_lift_graph(erdos_renyi(n, 0.5, r), 1, r);
    ASSERT_EQ(h.n(), 2 * n);
    e += h.edge_count();
    pairs += static_cast<std::int64_t>(2 * n) * (2 * n - 1) / 2;
  }
  EXPECT_TRUE(within_se(e, pairs, 0.5, 3.0));
}

TEST(GaussianLift, SupportTracked) {
  RandomStream r(10);
  const auto s = r.subset(64, 6);
  const Graph g = clique_graph(64, s, 0.5, r);
  LiftTrace tr;
  tr.support = Support(s, 64);
  const RealMatrix m = gaussian_lift_matrix(g, 2, r, &tr);
  EXPECT_EQ(m.rows(), 256);
  EXPECT_EQ(tr.support->size(), 24);
  EXPECT_TRUE(m.isApprox(m.transpose(), 0.0));
}

TEST(GeneralPds, Parameters) {
  const auto prm = general_pds_params(100, 1, 1, 0.5);
  EXPECT_EQ(prm.n_out, 400);
  EXPECT_NEAR(prm.densities.q, 1 - std::exp(-0.25 * std::pow(200.0, -0.5)), 1e-15);
  EXPECT_NEAR(prm.densities.q, 0.017523, 1e-6);
  EXPECT_GT(prm.c, 1.0);
  EXPECT_GT(prm.densities.p, prm.densities.q);
}

TEST(GeneralPds, RunsAndDoubles) {
  RandomStream r(11);
  const Graph h = general_pds_reduce(erdos_renyi(32, 0.5, r), 1, 1, 0.5, r);
  EXPECT_EQ(h.n(), 128);
}
