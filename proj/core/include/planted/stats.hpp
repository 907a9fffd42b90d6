#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace planted {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% by default
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.959963984540054);

// true when successes/trials lies within z standard errors of p
bool within_se(std::int64_t successes, std::int64_t trials, double p, double z = 3.0);

struct TestReport {
  std::string method;  // "KS" | "chi-square" | "mean-cov" | "correlation"
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
  int df = 0;  // chi-square only
  bool pass(double alpha = 1e-3) const { return p_value > alpha; }
};

using Cdf = std::function<double(double)>;

// Probabilities for the integers lo, lo+1, ...; mass beyond the last entry is
// folded into the last bin.
struct DiscreteReference {
  std::int64_t lo = 0;
  std::vector<double> probs;
};

// Asymptotic Kolmogorov tail with Stephens' small-sample correction.
double kolmogorov_pvalue(double d, double n_eff);

TestReport gof_test(std::vector<double> samples, const Cdf& cdf);
TestReport gof_test(const std::vector<std::int64_t>& samples, const DiscreteReference& ref);

enum class TwoSampleMethod { KS, ChiSquare, MeanCov };
TestReport two_sample_test(std::vector<double> a, std::vector<double> b,
                           TwoSampleMethod method = TwoSampleMethod::KS);

TestReport correlation_test(const std::vector<double>& a, const std::vector<double>& b);

// Laws over outcomes 0..size-1; shorter vectors are padded with zeros.
using DiscreteLaw = std::vector<double>;
double exact_tv_small(const DiscreteLaw& a, const DiscreteLaw& b);

// Law of an n x n 0/1 matrix with P-distributed entries on a uniformly
// column-permuted diagonal and Q elsewhere. Outcome index: bit (i*n+j).
DiscreteLaw permuted_diagonal_law(int n, double p, double q);
DiscreteLaw product_law(int n, double q);

}  // namespace planted
