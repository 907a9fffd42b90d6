#include "planted/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "planted/types.hpp"

namespace planted {

namespace {

constexpr double kMaxOutcomes = 1e7;

void need(std::size_t n, const char* who) {
  if (n < 100) throw ParameterError(std::string(who) + ": at least 100 samples required");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double two_sided_normal(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

double chi2_upper(double stat, int df) {
  if (df <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), stat));
}

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw ParameterError("wilson_interval: trials must be positive");
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (ph + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
  Interval iv{clamp01(centre - half), clamp01(centre + half)};
  // guard against rounding at the endpoints
  iv.lo = std::min(iv.lo, ph);
  iv.hi = std::max(iv.hi, ph);
  return iv;
}

bool within_se(std::int64_t successes, std::int64_t trials, double p, double z) {
  const double n = static_cast<double>(trials);
  const double se = std::sqrt(p * (1 - p) / n);
  return std::abs(static_cast<double>(successes) / n - p) <= z * se;
}

double kolmogorov_pvalue(double d, double n_eff) {
  const double sn = std::sqrt(n_eff);
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lam * lam);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return clamp01(2.0 * sum);
}

TestReport gof_test(std::vector<double> samples, const Cdf& cdf) {
  need(samples.size(), "gof_test");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  TestReport r;
  r.method = "KS";
  r.statistic = d;
  r.p_value = kolmogorov_pvalue(d, n);
  r.n_a = static_cast<std::int64_t>(samples.size());
  return r;
}

TestReport gof_test(const std::vector<std::int64_t>& samples, const DiscreteReference& ref) {
  need(samples.size(), "gof_test");
  if (ref.probs.empty()) throw ParameterError("gof_test: empty reference");
  const double n = static_cast<double>(samples.size());
  const std::size_t m = ref.probs.size();

  std::vector<double> obs(m, 0.0), prob(ref.probs);
  double mass = std::accumulate(prob.begin(), prob.end() - 1, 0.0);
  prob.back() = std::max(0.0, 1.0 - mass);
  for (std::int64_t s : samples) {
    std::int64_t b = s - ref.lo;
    if (b < 0) b = 0;  // below-support values are counted in the first bin
    if (b >= static_cast<std::int64_t>(m)) b = static_cast<std::int64_t>(m) - 1;
    obs[static_cast<std::size_t>(b)] += 1.0;
  }

  // merge adjacent bins left to right until each expects >= 5
  std::vector<double> eo, ee;
  double co = 0.0, ce = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    co += obs[i];
    ce += prob[i] * n;
    if (ce >= 5.0) {
      eo.push_back(co);
      ee.push_back(ce);
      co = ce = 0.0;
    }
  }
  if (ce > 0.0 || co > 0.0) {
    if (ee.empty()) {
      eo.push_back(co);
      ee.push_back(ce);
    } else {
      eo.back() += co;
      ee.back() += ce;
    }
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < ee.size(); ++i) {
    if (ee[i] <= 0.0) {
      if (eo[i] > 0.0) stat = std::numeric_limits<double>::infinity();
      continue;
    }
    stat += (eo[i] - ee[i]) * (eo[i] - ee[i]) / ee[i];
  }
  TestReport r;
  r.method = "chi-square";
  r.statistic = stat;
  r.df = static_cast<int>(ee.size()) - 1;
  r.p_value = std::isinf(stat) ? 0.0 : chi2_upper(stat, r.df);
  r.n_a = static_cast<std::int64_t>(samples.size());
  return r;
}

namespace {

TestReport ks2(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  TestReport r;
  r.method = "KS";
  r.statistic = d;
  r.p_value = kolmogorov_pvalue(d, na * nb / (na + nb));
  return r;
}

// Binned comparison on integer-valued samples (values are rounded).
TestReport chisq2(const std::vector<double>& a, const std::vector<double>& b) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
  for (const auto* v : {&a, &b})
    for (double x : *v) {
      const auto y = static_cast<std::int64_t>(std::llround(x));
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  if (hi - lo > 10'000'000) throw RefusalError("two_sample_test: chi-square support too wide");
  const std::size_t m = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> ca(m, 0.0), cb(m, 0.0);
  for (double x : a) ca[static_cast<std::size_t>(std::llround(x) - lo)] += 1;
  for (double x : b) cb[static_cast<std::size_t>(std::llround(x) - lo)] += 1;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size()), nt = na + nb;

  std::vector<double> ma, mb;
  double sa = 0, sb = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sa += ca[i];
    sb += cb[i];
    const double tot = sa + sb;
    if (tot * std::min(na, nb) / nt >= 5.0) {
      ma.push_back(sa);
      mb.push_back(sb);
      sa = sb = 0;
    }
  }
  if (sa + sb > 0) {
    if (ma.empty()) {
      ma.push_back(sa);
      mb.push_back(sb);
    } else {
      ma.back() += sa;
      mb.back() += sb;
    }
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double tot = ma[i] + mb[i];
    const double ea = tot * na / nt, eb = tot * nb / nt;
    stat += (ma[i] - ea) * (ma[i] - ea) / ea + (mb[i] - eb) * (mb[i] - eb) / eb;
  }
  TestReport r;
  r.method = "chi-square";
  r.statistic = stat;
  r.df = static_cast<int>(ma.size()) - 1;
  r.p_value = chi2_upper(stat, r.df);
  return r;
}

struct Moments {
  double mean, var, m4;
};
Moments moments(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mu = mean(x);
  double s2 = 0, s4 = 0;
  for (double v : x) {
    const double d2 = (v - mu) * (v - mu);
    s2 += d2;
    s4 += d2 * d2;
  }
  return {mu, s2 / (n - 1), s4 / n};
}

// Welch t on means and a kurtosis-aware z test on log variances, Bonferroni-combined.
TestReport meancov2(const std::vector<double>& a, const std::vector<double>& b) {
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const Moments ma = moments(a), mb = moments(b);
  const double va = ma.var / na, vb = mb.var / nb;
  double p_mean = 1.0, t = 0.0;
  if (va + vb > 0) {
    t = (ma.mean - mb.mean) / std::sqrt(va + vb);
    const double df = (va + vb) * (va + vb) / (va * va / (na - 1) + vb * vb / (nb - 1));
    p_mean = 2.0 * boost::math::cdf(boost::math::complement(boost::math::students_t(df), std::abs(t)));
  } else if (ma.mean != mb.mean) {
    p_mean = 0.0;
  }
  double p_var = 1.0;
  if (ma.var > 0 && mb.var > 0) {
    auto lvar = [](const Moments& m, double n) {
      return std::max(m.m4 / (m.var * m.var) - (n - 3) / (n - 1), 1e-12) / n;
    };
    const double z = (std::log(ma.var) - std::log(mb.var)) / std::sqrt(lvar(ma, na) + lvar(mb, nb));
    p_var = two_sided_normal(z);
  } else if (ma.var != mb.var) {
    p_var = 0.0;
  }
  TestReport r;
  r.method = "mean-cov";
  r.statistic = t;
  r.p_value = clamp01(2.0 * std::min(p_mean, p_var));
  return r;
}

}  // namespace

TestReport two_sample_test(std::vector<double> a, std::vector<double> b, TwoSampleMethod method) {
  need(a.size(), "two_sample_test");
  need(b.size(), "two_sample_test");
  const auto na = static_cast<std::int64_t>(a.size()), nb = static_cast<std::int64_t>(b.size());
  TestReport r;
  switch (method) {
    case TwoSampleMethod::KS: r = ks2(std::move(a), std::move(b)); break;
    case TwoSampleMethod::ChiSquare: r = chisq2(a, b); break;
    case TwoSampleMethod::MeanCov: r = meancov2(a, b); break;
  }
  r.n_a = na;
  r.n_b = nb;
  return r;
}

TestReport correlation_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ParameterError("correlation_test: length mismatch");
  need(a.size(), "correlation_test");
  const double n = static_cast<double>(a.size());
  const double ma = mean(a), mb = mean(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  const double rho = (saa > 0 && sbb > 0) ? sab / std::sqrt(saa * sbb) : 0.0;
  const double rc = std::clamp(rho, -1.0 + 1e-15, 1.0 - 1e-15);
  TestReport r;
  r.method = "correlation";
  r.statistic = rho;
  r.p_value = two_sided_normal(std::atanh(rc) * std::sqrt(n - 3));
  r.n_a = r.n_b = static_cast<std::int64_t>(a.size());
  return r;
}

double exact_tv_small(const DiscreteLaw& a, const DiscreteLaw& b) {
  const std::size_t m = std::max(a.size(), b.size());
  if (static_cast<double>(m) > kMaxOutcomes) throw RefusalError("exact_tv_small: more than 1e7 outcomes");
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    s += std::abs(x - y);
  }
  return 0.5 * s;
}

namespace {
void check_cells(int n) {
  if (n < 1 || static_cast<double>(n) * n > std::log2(kMaxOutcomes))
    throw RefusalError("law enumeration: too many outcomes");
}
}  // namespace

DiscreteLaw permuted_diagonal_law(int n, double p, double q) {
  check_cells(n);
  const int cells = n * n;
  DiscreteLaw law(std::size_t{1} << cells, 0.0);
  std::vector<int> tau(static_cast<std::size_t>(n));
  std::iota(tau.begin(), tau.end(), 0);
  double count = 0.0;
  std::vector<char> diag(static_cast<std::size_t>(cells));
  do {
    count += 1.0;
    std::fill(diag.begin(), diag.end(), 0);
    for (int i = 0; i < n; ++i) diag[i * n + tau[i]] = 1;
    for (std::size_t x = 0; x < law.size(); ++x) {
      double pr = 1.0;
      for (int c = 0; c < cells; ++c) {
        const double b = diag[c] ? p : q;
        pr *= (x >> c) & 1 ? b : 1.0 - b;
      }
      law[x] += pr;
    }
  } while (std::next_permutation(tau.begin(), tau.end()));
  for (double& v : law) v /= count;
  return law;
}

DiscreteLaw product_law(int n, double q) {
  check_cells(n);
  const int cells = n * n;
  DiscreteLaw law(std::size_t{1} << cells);
  for (std::size_t x = 0; x < law.size(); ++x) {
    const int ones = __builtin_popcountll(x);
    law[x] = std::pow(q, ones) * std::pow(1.0 - q, cells - ones);
  }
  return law;
}

}  // namespace planted
