#include "planted/rejection.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "planted/types.hpp"

namespace planted {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }
}  // namespace

int ceil_tol(double x) { return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)))); }

double log_density(const Law& law, double x) {
  if (const auto* pl = std::get_if<PoissonLaw>(&law)) {
    if (x < 0.0 || x != std::floor(x)) return -kInf;
    if (pl->lambda == 0.0) return x == 0.0 ? 0.0 : -kInf;
    return x * std::log(pl->lambda) - pl->lambda - std::lgamma(x + 1.0);
  }
  const auto& nl = std::get<NormalLaw>(law);
  const double z = (x - nl.mean) / nl.sd;
  return -0.5 * z * z - std::log(nl.sd) - 0.5 * std::log(2.0 * M_PI);
}

double sample(const Law& law, RandomStream& rng) {
  if (const auto* pl = std::get_if<PoissonLaw>(&law)) return static_cast<double>(rng.poisson(pl->lambda));
  const auto& nl = std::get<NormalLaw>(law);
  return rng.normal(nl.mean, nl.sd);
}

double cdf(const Law& law, double x) {
  if (const auto* pl = std::get_if<PoissonLaw>(&law)) {
    if (x < 0.0) return 0.0;
    if (pl->lambda == 0.0) return 1.0;
    return boost::math::gamma_q(std::floor(x) + 1.0, pl->lambda);
  }
  const auto& nl = std::get<NormalLaw>(law);
  return 0.5 * std::erfc(-(x - nl.mean) / (nl.sd * std::sqrt(2.0)));
}

void KernelSpec::validate() const {
  if (!(p > q)) throw ParameterError("kernel requires p > q");
  if (!(q >= 0.0 && p <= 1.0)) throw ParameterError("kernel endpoints must lie in [0,1]");
  if (N < 1) throw ParameterError("kernel iteration budget N must be >= 1");
}

KernelDraw rejection_kernel_draw(bool b, const KernelSpec& spec, RandomStream& rng) {
  KernelDraw out;
  const double lp = std::log(spec.p), lq = safe_log(spec.q);
  const double l1p = safe_log(1.0 - spec.p), l1q = std::log(1.0 - spec.q);
  for (int it = 1; it <= spec.N; ++it) {
    out.iterations = it;
    double z, r;
    if (!b) {
      z = sample(spec.g, rng);
      // log of q f(z) / (p g(z))
      r = lq + log_density(spec.f, z) - lp - log_density(spec.g, z);
    } else {
      z = sample(spec.f, rng);
      // log of (1-p) g(z) / ((1-q) f(z))
      r = l1p + log_density(spec.g, z) - l1q - log_density(spec.f, z);
    }
    if (std::isnan(r)) throw NumericError("rejection kernel: non-finite density ratio");
    if (r <= 0.0 && rng.uniform() < -std::expm1(r)) {
      out.value = z;
      return out;
    }
  }
  out.exhausted = true;
  out.value = 0.0;
  return out;
}

double rejection_kernel(bool b, const KernelSpec& spec, RandomStream& rng) {
  return rejection_kernel_draw(b, spec, rng).value;
}

KernelSpec make_kernel_p1(int n, double c, double q, double eps) {
  if (n < 2) throw ParameterError("make_kernel_p1: n must be >= 2");
  if (!(c > 1.0)) throw ParameterError("make_kernel_p1: require c > 1");
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("make_kernel_p1: require q in (0,1)");
  if (!(eps > 0.0)) throw ParameterError("make_kernel_p1: require eps > 0");
  const double lhs = 3.0 / eps, rhs = std::log(1.0 / q) / std::log(c);
  if (lhs > rhs * (1.0 + 1e-12))
    throw ParameterError("make_kernel_p1: violated 3/eps <= log_c(1/q) (" + std::to_string(lhs) + " > " +
                         std::to_string(rhs) + ")");
  const double lambda = std::pow(static_cast<double>(n), -eps);
  KernelSpec s;
  s.p = 1.0;
  s.q = q;
  s.f = PoissonLaw{c * lambda};
  s.g = PoissonLaw{lambda};
  s.N = ceil_tol(6.0 * std::log(static_cast<double>(n)) / std::log(1.0 / q));
  s.record.lambda = lambda;
  s.record.c = c;
  s.record.eps = eps;
  return s;
}

KernelSpec make_kernel_p2(int n, double rho, double c, double eps, int K) {
  if (n < 2) throw ParameterError("make_kernel_p2: n must be >= 2");
  if (!(rho > 0.0 && rho < 0.5)) throw ParameterError("make_kernel_p2: require rho in (0,1/2)");
  if (!(c > 1.0)) throw ParameterError("make_kernel_p2: require c > 1");
  if (!(eps > 0.0)) throw ParameterError("make_kernel_p2: require eps > 0");
  const double lambda = std::pow(static_cast<double>(n), -eps);
  if (lambda > 1.0) throw ParameterError("make_kernel_p2: require lambda = n^-eps <= 1");
  const double lhs = (K + 3) / eps, rhs = std::log1p(2.0 * rho) / std::log(c);
  // General-PDS-Reduction sits exactly on this boundary, hence the relative slack.
  if (lhs > rhs * (1.0 + 1e-12))
    throw ParameterError("make_kernel_p2: violated (K+3)/eps <= log_c(1+2rho) (" + std::to_string(lhs) +
                         " > " + std::to_string(rhs) + ")");
  KernelSpec s;
  s.p = 0.5 + rho;
  s.q = 0.5;
  s.f = PoissonLaw{c * lambda};
  s.g = PoissonLaw{lambda};
  s.N = ceil_tol(6.0 * std::log(static_cast<double>(n)) / rho);
  s.record.lambda = lambda;
  s.record.c = c;
  s.record.rho = rho;
  s.record.eps = eps;
  return s;
}

double gaussian_kernel_delta(double p, double q) {
  const double a = std::log(p / q);
  const double b = p >= 1.0 ? kInf : std::log((1.0 - q) / (1.0 - p));
  return std::min(a, b);
}

double gaussian_kernel_mu_bound(int n, double p, double q) {
  const double delta = gaussian_kernel_delta(p, q);
  return delta / (2.0 * std::sqrt(6.0 * std::log(static_cast<double>(n)) + 2.0 * std::log(1.0 / (p - q))));
}

KernelSpec make_kernel_g_at(int n, double p, double q, double mu, bool enforce_bound) {
  if (n < 2) throw ParameterError("make_kernel_g: n must be >= 2");
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("make_kernel_g: require q in (0,1)");
  if (!(p > q && p <= 1.0)) throw ParameterError("make_kernel_g: require q < p <= 1");
  const double delta = gaussian_kernel_delta(p, q);
  const double bound = gaussian_kernel_mu_bound(n, p, q);
  if (!(mu > 0.0)) throw ParameterError("make_kernel_g: require mu > 0");
  if (enforce_bound && mu > bound * (1.0 + 1e-12))
    throw ParameterError("make_kernel_g: mu " + std::to_string(mu) + " exceeds bound " + std::to_string(bound));
  KernelSpec s;
  s.p = p;
  s.q = q;
  s.f = NormalLaw{mu, 1.0};
  s.g = NormalLaw{0.0, 1.0};
  s.N = ceil_tol(6.0 * std::log(static_cast<double>(n)) / delta);
  s.record.mu = mu;
  s.record.delta = delta;
  return s;
}

KernelSpec make_kernel_g(int n, double p, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("make_kernel_g: require q in (0,1)");
  if (!(p > q && p <= 1.0)) throw ParameterError("make_kernel_g: require q < p <= 1");
  return make_kernel_g_at(n, p, q, gaussian_kernel_mu_bound(n, p, q), true);
}

}  // namespace planted
