#include "planted/random.hpp"

#include <algorithm>
#include <numeric>

#include "planted/types.hpp"

namespace planted {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {
std::seed_seq make_seq(std::uint64_t seed, const std::vector<std::uint64_t>& path) {
  std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
  for (std::uint64_t c : path) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  std::vector<std::uint32_t> words;
  std::uint64_t s = h;
  for (int i = 0; i < 4; ++i) {
    s = splitmix64(s);
    words.push_back(static_cast<std::uint32_t>(s));
    words.push_back(static_cast<std::uint32_t>(s >> 32));
  }
  return std::seed_seq(words.begin(), words.end());
}
}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path)
    : seed_(seed), path_(std::move(path)) {
  auto seq = make_seq(seed_, path_);
  engine_.seed(seq);
}

RandomStream RandomStream::split(std::uint64_t child_index) const {
  auto p = path_;
  p.push_back(child_index);
  return RandomStream(seed_, std::move(p));
}

double RandomStream::uniform() { return std::generate_canonical<double, 64>(engine_); }

double RandomStream::normal() { return normal_(engine_); }

double RandomStream::normal(double mean, double sd) { return mean + sd * normal_(engine_); }

bool RandomStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

std::int64_t RandomStream::poisson(double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("poisson rate must be >= 0");
  if (lambda == 0.0) return 0;
  std::poisson_distribution<std::int64_t> d(lambda);
  return d(engine_);
}

int RandomStream::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(engine_);
}

std::vector<int> RandomStream::permutation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[uniform_int(0, i)]);
  return p;
}

std::vector<int> RandomStream::subset(int n, int k) {
  if (k < 0 || k > n) throw ParameterError("subset size out of range");
  // partial Fisher-Yates
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = 0; i < k; ++i) std::swap(p[i], p[uniform_int(i, n - 1)]);
  std::vector<int> s(p.begin(), p.begin() + k);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace planted
