#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace planted {

// Splittable stream: (seed, path) is hashed into the engine key, so any two
// distinct addresses give unrelated sequences and the same address replays.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0, std::vector<std::uint64_t> path = {});

  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  RandomStream split(std::uint64_t child_index) const;

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                      // [0,1)
  double normal();                       // N(0,1)
  double normal(double mean, double sd);
  bool bernoulli(double p);
  std::int64_t poisson(double lambda);
  int uniform_int(int lo, int hi);       // inclusive
  int rademacher() { return bernoulli(0.5) ? 1 : -1; }
  std::vector<int> permutation(int n);
  // Uniform k-subset of [0, n), sorted.
  std::vector<int> subset(int n, int k);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> path_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

inline RandomStream split_stream(const RandomStream& parent, std::uint64_t child_index) {
  return parent.split(child_index);
}

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace planted
