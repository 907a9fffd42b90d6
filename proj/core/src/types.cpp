#include "planted/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace planted {

namespace {
constexpr std::array<const char*, 12> kProblemNames = {
    "PC", "PIS", "PDS", "SSBM", "BC", "ROS", "SROS", "SSW", "SPCA", "BSPCA", "USPCA", "UBSPCA"};
}

std::string to_string(Problem p) { return kProblemNames[static_cast<std::size_t>(p)]; }

std::string to_string(Hypothesis h) { return h == Hypothesis::H0 ? "H0" : "H1"; }

Problem problem_from_string(const std::string& s) {
  for (std::size_t i = 0; i < kProblemNames.size(); ++i)
    if (s == kProblemNames[i]) return static_cast<Problem>(i);
  throw ParameterError("unknown problem tag: " + s);
}

Hypothesis hypothesis_from_string(const std::string& s) {
  if (s == "H0" || s == "0") return Hypothesis::H0;
  if (s == "H1" || s == "1") return Hypothesis::H1;
  throw ParameterError("unknown hypothesis: " + s);
}

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw ParameterError("graph size must be nonnegative");
  adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

void Graph::set_edge(int i, int j, bool on) {
  if (i == j) {
    if (on) throw ContractError("self-loops are not allowed");
    return;
  }
  adj_[idx(i, j)] = on;
  adj_[idx(j, i)] = on;
}

std::int64_t Graph::edge_count() const {
  std::int64_t c = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) c += adj_[idx(i, j)];
  return c;
}

Graph Graph::complement() const {
  Graph h(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) h.set_edge(i, j, !has_edge(i, j));
  return h;
}

RealMatrix Graph::adjacency() const {
  RealMatrix a(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a(i, j) = adj_[idx(i, j)];
  return a;
}

Support::Support(std::vector<int> idx, int n) : idx_(std::move(idx)), n_(n) {
  std::sort(idx_.begin(), idx_.end());
  if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
    throw ContractError("support indices must be distinct");
  if (!idx_.empty() && (idx_.front() < 0 || idx_.back() >= n))
    throw ContractError("support index out of range");
}

bool Support::contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

std::vector<char> Support::mask() const {
  std::vector<char> m(static_cast<std::size_t>(n_), 0);
  for (int i : idx_) m[static_cast<std::size_t>(i)] = 1;
  return m;
}

void ProblemParams::validate() const {
  auto prob = [](double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) throw ParameterError(std::string(name) + " must lie in [0,1]");
  };
  if (n < 1) throw ParameterError("n must be >= 1");
  const bool sample_problem = problem == Problem::SPCA || problem == Problem::BSPCA ||
                              problem == Problem::USPCA || problem == Problem::UBSPCA;
  const int dim = sample_problem ? d : n;
  if (sample_problem && d < 1) throw ParameterError("d must be >= 1");
  if (k < 1 || k > dim) throw ParameterError("require 1 <= k <= n (or d)");
  prob(p, "p");
  prob(q, "q");
  if (!(theta >= 0.0)) throw ParameterError("theta must be >= 0");
  if (!(mu >= 0.0)) throw ParameterError("mu must be >= 0");
  if (problem == Problem::SSBM) {
    if (!(rho >= 0.0 && rho <= std::min(q, 1.0 - q)))
      throw ParameterError("SSBM requires 0 <= rho <= min(q, 1-q)");
    if (!(delta_ssbm > 0.0 && delta_ssbm < 0.5)) throw ParameterError("delta_ssbm must be in (0,1/2)");
  }
  if (problem == Problem::BSPCA || problem == Problem::UBSPCA) {
    if (!(delta_bspca > 0.0 && delta_bspca < 0.5)) throw ParameterError("delta_bspca must be in (0,1/2)");
  }
}

}  // namespace planted
