#include <gtest/gtest.h>

#include <cmath>

#include "planted/rejection.hpp"
#include "planted/stats.hpp"
#include "planted/types.hpp"

using namespace planted;

namespace {
double normal_cdf(double x, double m) { return 0.5 * std::erfc(-(x - m) / std::sqrt(2.0)); }

std::vector<double> pois_pmf(double lam, int m) {
  std::vector<double> out;
  double t = std::exp(-lam);
  for (int v = 0; v < m; ++v) {
    out.push_back(t);
    t *= lam / (v + 1);
  }
  return out;
}
}  // namespace

TEST(KernelFormulas, PoissonOne) {
  const KernelSpec a = make_kernel_p1(100, 2.0, 0.01, 0.5);
  EXPECT_NEAR(*a.record.lambda, 0.1, 1e-15);
  EXPECT_EQ(a.p, 1.0);
  // N = ceil(6 ln n / ln(1/q))
  const KernelSpec b = make_kernel_p1(1000, 1.05, 0.5, 0.5);
  EXPECT_EQ(b.N, 60);
  EXPECT_EQ(b.N, static_cast<int>(std::ceil(6 * std::log(1000.0) / std::log(2.0))));
  // 3/eps = 6 > log_2(1/0.02) = 5.64
  EXPECT_THROW(make_kernel_p1(100, 2.0, 0.02, 0.5), ParameterError);
}

TEST(KernelFormulas, PoissonTwo) {
  const KernelSpec a = make_kernel_p2(100, 0.1, 1.01, 0.5);
  EXPECT_EQ(a.N, 277);
  EXPECT_NEAR(a.p, 0.6, 1e-15);
  EXPECT_NEAR(make_kernel_p2(100, 0.49, 1.01, 0.5).p, 0.99, 1e-15);
  EXPECT_THROW(make_kernel_p2(100, 0.1, 2.0, 0.5), ParameterError);
}

TEST(KernelFormulas, Gaussian) {
  const KernelSpec g = make_kernel_g(1000, 1.0, 0.5);
  EXPECT_NEAR(*g.record.delta, std::log(2.0), 1e-15);
  const double mu = std::log(2.0) / (2.0 * std::sqrt(6.0 * std::log(1000.0) + 2.0 * std::log(2.0)));
  EXPECT_NEAR(*g.record.mu, mu, 1e-15);
  EXPECT_NEAR(mu, 0.05296, 5e-6);
  EXPECT_EQ(g.N, 60);
  EXPECT_NEAR(gaussian_kernel_delta(0.6, 0.5), std::log(1.2), 1e-15);
  EXPECT_NEAR(gaussian_kernel_delta(0.6, 0.5), 0.1823, 1e-4);
  EXPECT_THROW(make_kernel_g_at(1000, 1.0, 0.5, 2 * mu), ParameterError);
  EXPECT_NO_THROW(make_kernel_g_at(1000, 1.0, 0.5, 2 * mu, false));
}

TEST(KernelFormulas, CeilTolerance) {
  EXPECT_EQ(ceil_tol(10.0 + 1e-13), 10);
  EXPECT_EQ(ceil_tol(10.1), 11);
  EXPECT_EQ(ceil_tol(3.0), 3);
}

TEST(RejectionKernel, PerfectSamplerAtPEqualsOne) {
  KernelSpec s = make_kernel_g(1000, 1.0, 0.5);
  s.N = 1;
  RandomStream r(1);
  std::vector<double> x;
  for (int i = 0; i < 20000; ++i) {
    const auto d = rejection_kernel_draw(true, s, r);
    ASSERT_FALSE(d.exhausted);
    ASSERT_EQ(d.iterations, 1);
    x.push_back(d.value);
  }
  const double mu = *s.record.mu;
  EXPECT_GT(gof_test(x, [mu](double v) { return normal_cdf(v, mu); }).p_value, 1e-3);
}

TEST(RejectionKernel, ExhaustedBudgetReturnsZero) {
  KernelSpec s = make_kernel_g(1000, 1.0, 0.5);
  s.N = 0;
  RandomStream r(2);
  const auto d = rejection_kernel_draw(false, s, r);
  EXPECT_TRUE(d.exhausted);
  EXPECT_EQ(d.value, 0.0);
}

TEST(RejectionKernel, GaussianMixtureMatchesNull) {
  const KernelSpec s = make_kernel_g(1000, 1.0, 0.5);
  RandomStream r(3);
  std::vector<double> x;
  for (int i = 0; i < 200000; ++i) x.push_back(rejection_kernel(r.bernoulli(0.5), s, r));
  EXPECT_GT(gof_test(x, [](double v) { return normal_cdf(v, 0.0); }).p_value, 1e-3);
}

TEST(RejectionKernel, PoissonTwoMixtureMatchesNull) {
  const KernelSpec s = make_kernel_p2(100, 0.1, 1.01, 0.5);
  RandomStream r(4);
  std::vector<std::int64_t> x;
  for (int i = 0; i < 200000; ++i) x.push_back(static_cast<std::int64_t>(rejection_kernel(r.bernoulli(0.5), s, r)));
  EXPECT_GT(gof_test(x, DiscreteReference{0, pois_pmf(*s.record.lambda, 8)}).p_value, 1e-3);
}

TEST(RejectionKernel, PoissonOneBothEndpoints) {
  const KernelSpec s = make_kernel_p1(100, 2.0, 0.01, 0.5);
  RandomStream r(5);
  std::vector<std::int64_t> one, mix;
  for (int i = 0; i < 100000; ++i) {
    one.push_back(static_cast<std::int64_t>(rejection_kernel(true, s, r)));
    mix.push_back(static_cast<std::int64_t>(rejection_kernel(r.bernoulli(0.01), s, r)));
  }
  EXPECT_GT(gof_test(one, DiscreteReference{0, pois_pmf(0.2, 8)}).p_value, 1e-3);
  EXPECT_GT(gof_test(mix, DiscreteReference{0, pois_pmf(0.1, 8)}).p_value, 1e-3);
}

TEST(RejectionKernel, Deterministic) {
  const KernelSpec s = make_kernel_g(1000, 0.7, 0.5);
  RandomStream a(9), b(9);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(rejection_kernel(i % 3 == 0, s, a), rejection_kernel(i % 3 == 0, s, b));
}

TEST(Laws, PoissonCdfMatchesSum) {
  const Law l = PoissonLaw{2.5};
  const auto pmf = pois_pmf(2.5, 12);
  double acc = 0;
  for (int v = 0; v < 12; ++v) {
    acc += pmf[v];
    EXPECT_NEAR(cdf(l, v), acc, 1e-12);
    EXPECT_NEAR(std::exp(log_density(l, v)), pmf[v], 1e-12);
  }
  EXPECT_NEAR(cdf(NormalLaw{1.0, 2.0}, 1.0), 0.5, 1e-15);
}
