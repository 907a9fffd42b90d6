#include <gtest/gtest.h>

#include <cmath>

#include "planted/random.hpp"
#include "planted/stats.hpp"
#include "planted/types.hpp"

using namespace planted;

TEST(RandomStream, SplitExtendsPath) {
  const RandomStream parent(7);
  const RandomStream child = split_stream(parent, 0);
  EXPECT_EQ(child.seed(), 7u);
  ASSERT_EQ(child.path().size(), 1u);
  EXPECT_EQ(child.path()[0], 0u);
  EXPECT_EQ(child.split(3).path(), (std::vector<std::uint64_t>{0, 3}));
}

TEST(RandomStream, SameInputsSameSequence) {
  RandomStream a(11, {1, 2}), b(11, {1, 2});
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
    ASSERT_EQ(a.normal(), b.normal());
    ASSERT_EQ(a.poisson(3.5), b.poisson(3.5));
  }
}

TEST(RandomStream, SiblingsDiffer) {
  RandomStream a = RandomStream(5).split(0), b = RandomStream(5).split(1);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64();
  EXPECT_EQ(same, 0);
}

TEST(RandomStream, SiblingUniformsUncorrelated) {
  RandomStream a = RandomStream(7).split(0), b = RandomStream(7).split(1);
  std::vector<double> x(100000), y(100000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = a.uniform();
    y[i] = b.uniform();
  }
  EXPECT_LE(std::abs(correlation_test(x, y).statistic), 0.02);
}

TEST(RandomStream, PermutationAndSubset) {
  RandomStream r(3);
  for (int t = 0; t < 50; ++t) {
    auto p = r.permutation(20);
    std::vector<int> s = p;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < 20; ++i) ASSERT_EQ(s[i], i);
    auto sub = r.subset(20, 7);
    ASSERT_EQ(sub.size(), 7u);
    ASSERT_TRUE(std::is_sorted(sub.begin(), sub.end()));
    ASSERT_TRUE(std::adjacent_find(sub.begin(), sub.end()) == sub.end());
    ASSERT_GE(sub.front(), 0);
    ASSERT_LT(sub.back(), 20);
  }
}

TEST(RandomStream, UniformIntInclusive) {
  RandomStream r(9);
  bool lo = false, hi = false;
  for (int i = 0; i < 2000; ++i) {
    const int v = r.uniform_int(2, 5);
    ASSERT_GE(v, 2);
    ASSERT_LE(v, 5);
    lo |= v == 2;
    hi |= v == 5;
  }
  EXPECT_TRUE(lo && hi);
}

TEST(Graph, SymmetricAndLoopFree) {
  Graph g(5);
  g.set_edge(1, 3, true);
  EXPECT_TRUE(g.has_edge(3, 1));
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_THROW(g.set_edge(2, 2, true), ContractError);
  g.set_edge(3, 1, false);
  EXPECT_FALSE(g.has_edge(1, 3));
  EXPECT_EQ(g.edge_count(), 0);
}

TEST(Graph, ComplementCountsAndAdjacency) {
  RandomStream r(1);
  Graph g(12);
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      if (r.bernoulli(0.3)) g.set_edge(i, j, true);
  const Graph c = g.complement();
  EXPECT_EQ(g.edge_count() + c.edge_count(), 66);
  EXPECT_EQ(c.complement(), g);
  const RealMatrix a = g.adjacency();
  EXPECT_TRUE(a.isApprox(a.transpose()));
  EXPECT_EQ(a.diagonal().sum(), 0.0);
  EXPECT_EQ(a.sum(), 2.0 * g.edge_count());
}

TEST(Support, Validation) {
  Support s({4, 1, 2}, 6);
  EXPECT_EQ(s.indices(), (std::vector<int>{1, 2, 4}));
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(3));
  EXPECT_EQ(s.mask(), (std::vector<char>{0, 1, 1, 0, 1, 0}));
  EXPECT_THROW(Support({1, 1}, 3), ContractError);
  EXPECT_THROW(Support({3}, 3), ContractError);
  EXPECT_THROW(Support({-1}, 3), ContractError);
}

TEST(ProblemParams, Validation) {
  ProblemParams p;
  p.problem = Problem::PC;
  p.n = 10;
  p.k = 11;
  EXPECT_THROW(p.validate(), ParameterError);
  p.k = 3;
  EXPECT_NO_THROW(p.validate());
  p.problem = Problem::SSBM;
  p.q = 0.3;
  p.rho = 0.4;
  EXPECT_THROW(p.validate(), ParameterError);
  p.rho = 0.3;
  EXPECT_NO_THROW(p.validate());
  p.problem = Problem::SPCA;
  p.d = 2;
  EXPECT_THROW(p.validate(), ParameterError);
}

TEST(Enums, RoundTrip) {
  for (Problem p : {Problem::PC, Problem::PIS, Problem::PDS, Problem::SSBM, Problem::BC, Problem::ROS, Problem::SROS,
                    Problem::SSW, Problem::SPCA, Problem::BSPCA, Problem::USPCA, Problem::UBSPCA})
    EXPECT_EQ(problem_from_string(to_string(p)), p);
  EXPECT_EQ(hypothesis_from_string(to_string(Hypothesis::H1)), Hypothesis::H1);
  EXPECT_THROW(problem_from_string("XYZ"), ParameterError);
}
