#pragma once

#include <optional>
#include <variant>

#include "planted/random.hpp"

namespace planted {

struct PoissonLaw {
  double lambda = 1.0;
};
struct NormalLaw {
  double mean = 0.0;
  double sd = 1.0;
};
using Law = std::variant<PoissonLaw, NormalLaw>;

double log_density(const Law& law, double x);
double sample(const Law& law, RandomStream& rng);
double cdf(const Law& law, double x);

struct KernelRecord {
  std::optional<double> lambda, c, mu, delta, rho, eps;
};

struct KernelSpec {
  double p = 1.0;
  double q = 0.5;
  Law f;  // target law for Bern(p)
  Law g;  // target law for Bern(q)
  int N = 1;
  KernelRecord record;

  void validate() const;
};

struct KernelDraw {
  double value = 0.0;
  bool exhausted = false;
  int iterations = 0;
};

KernelDraw rejection_kernel_draw(bool b, const KernelSpec& spec, RandomStream& rng);
double rejection_kernel(bool b, const KernelSpec& spec, RandomStream& rng);

// Bern(1) -> Pois(c*lambda), Bern(q) -> Pois(lambda), lambda = n^-eps.
KernelSpec make_kernel_p1(int n, double c, double q, double eps);
// Bern(1/2+rho) -> Pois(c*lambda), Bern(1/2) -> Pois(lambda).
KernelSpec make_kernel_p2(int n, double rho, double c, double eps, int K = 1);
// Bern(p) -> N(mu,1), Bern(q) -> N(0,1) with mu at its largest permitted value.
KernelSpec make_kernel_g(int n, double p, double q);
// Same pair of endpoints with a caller-chosen mean. When enforce_bound is set the
// mean must not exceed the value make_kernel_g would pick.
KernelSpec make_kernel_g_at(int n, double p, double q, double mu, bool enforce_bound = true);

double gaussian_kernel_delta(double p, double q);
double gaussian_kernel_mu_bound(int n, double p, double q);

// ceil(x) that ignores round-off just above an integer.
int ceil_tol(double x);

}  // namespace planted
