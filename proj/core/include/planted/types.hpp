#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace planted {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using DataMatrix = Eigen::MatrixXd;  // d x n, one sample per column

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when an exponential-time routine is asked to run beyond its size limit.
struct RefusalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Hypothesis { H0, H1 };

enum class Problem { PC, PIS, PDS, SSBM, BC, ROS, SROS, SSW, SPCA, BSPCA, USPCA, UBSPCA };

std::string to_string(Problem p);
std::string to_string(Hypothesis h);
Problem problem_from_string(const std::string& s);
Hypothesis hypothesis_from_string(const std::string& s);

// Simple undirected graph, dense adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  bool has_edge(int i, int j) const { return adj_[idx(i, j)] != 0; }
  void set_edge(int i, int j, bool on);
  std::int64_t edge_count() const;
  Graph complement() const;
  // 0/1 adjacency as a real matrix, zero diagonal.
  RealMatrix adjacency() const;
  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

// Sorted distinct indices in [0, n).
class Support {
 public:
  Support() = default;
  Support(std::vector<int> idx, int n);

  const std::vector<int>& indices() const { return idx_; }
  int size() const { return static_cast<int>(idx_.size()); }
  int universe() const { return n_; }
  bool contains(int i) const;
  std::vector<char> mask() const;
  bool operator==(const Support& o) const { return idx_ == o.idx_ && n_ == o.n_; }

 private:
  std::vector<int> idx_;
  int n_ = 0;
};

struct ProblemParams {
  Problem problem = Problem::PC;
  int n = 0;
  int k = 0;
  int d = 0;
  double p = 0.5;
  double q = 0.5;
  double rho = 0.0;
  double mu = 0.0;
  double theta = 0.0;
  double delta_ssbm = 0.25;
  double delta_bspca = 0.25;

  // Throws ParameterError naming the violated invariant.
  void validate() const;
};

struct Verdict {
  Hypothesis decision = Hypothesis::H0;
  double statistic = 0.0;
  double threshold = 0.0;
  // Name of the comparison that produced the decision, e.g. "sum>" or "max>".
  std::string rule;
};

struct RecoveryResult {
  Support row_support;
  std::optional<Support> col_support;
  bool marked = false;
};

}  // namespace planted
