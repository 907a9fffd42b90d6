#include "planted/serialize.hpp"

#include <cmath>

namespace planted {

namespace {

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = to_json(*v);
}

json interval_json(const Interval& iv) { return json::array({real_to_json(iv.lo), real_to_json(iv.hi)}); }

void need(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("json: missing field '") + key + "'");
}

}  // namespace

json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParameterError("json: bad real '" + s + "'");
  }
  return j.get<double>();
}

json to_json(const ProblemParams& p) {
  return json{{"problem", to_string(p.problem)},
              {"n", p.n},
              {"k", p.k},
              {"d", p.d},
              {"p", p.p},
              {"q", p.q},
              {"rho", p.rho},
              {"mu", p.mu},
              {"theta", p.theta},
              {"delta_ssbm", p.delta_ssbm},
              {"delta_bspca", p.delta_bspca}};
}

ProblemParams params_from_json(const json& j) {
  ProblemParams p;
  need(j, "problem");
  p.problem = problem_from_string(j.at("problem").get<std::string>());
  p.n = j.value("n", p.n);
  p.k = j.value("k", p.k);
  p.d = j.value("d", p.d);
  p.p = j.value("p", p.p);
  p.q = j.value("q", p.q);
  p.rho = j.value("rho", p.rho);
  p.mu = j.value("mu", p.mu);
  p.theta = j.value("theta", p.theta);
  p.delta_ssbm = j.value("delta_ssbm", p.delta_ssbm);
  p.delta_bspca = j.value("delta_bspca", p.delta_bspca);
  return p;
}

json to_json(const Support& s) { return json{{"n", s.universe()}, {"indices", s.indices()}}; }

Support support_from_json(const json& j) {
  return Support(j.at("indices").get<std::vector<int>>(), j.at("n").get<int>());
}

json to_json(const Graph& g) {
  json rows = json::array();
  for (int i = 0; i < g.n(); ++i) {
    std::string r(static_cast<std::size_t>(g.n()), '0');
    for (int j = 0; j < g.n(); ++j)
      if (i != j && g.has_edge(i, j)) r[j] = '1';
    rows.push_back(std::move(r));
  }
  return json{{"n", g.n()}, {"adjacency", std::move(rows)}};
}

Graph graph_from_json(const json& j) {
  const auto rows = j.at("adjacency").get<std::vector<std::string>>();
  const int n = static_cast<int>(rows.size());
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw ParameterError("json: adjacency row length mismatch");
    for (int j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) throw ParameterError("json: adjacency not symmetric");
      if (rows[i][j] == '1') g.set_edge(i, j, true);
    }
  }
  return g;
}

json to_json(const RealMatrix& m) {
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) e.push_back(m(i, j));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(e)}};
}

RealMatrix matrix_from_json(const json& j) {
  const auto r = j.at("rows").get<Eigen::Index>(), c = j.at("cols").get<Eigen::Index>();
  const auto e = j.at("entries").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(e.size()) != r * c) throw ParameterError("json: entry count mismatch");
  RealMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = e[static_cast<std::size_t>(i * c + k)];
  return m;
}

json to_json(const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

RealVector vector_from_json(const json& j) {
  const auto e = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(e.data(), static_cast<Eigen::Index>(e.size()));
}

json to_json(const PlantedGraphInstance& inst) {
  json j = to_json(inst.graph);
  j["kind"] = "graph";
  j["problem"] = to_string(inst.params.problem);
  j["k"] = inst.params.k;
  j["hypothesis"] = to_string(inst.hypothesis);
  j["params"] = to_json(inst.params);
  put_opt(j, "support", inst.support);
  if (inst.communities)
    j["communities"] = json::array({to_json(inst.communities->first), to_json(inst.communities->second)});
  return j;
}

json to_json(const PlantedMatrixInstance& inst) {
  json j = to_json(inst.matrix);
  j["kind"] = "matrix";
  j["problem"] = to_string(inst.params.problem);
  j["n"] = inst.params.n;
  j["k"] = inst.params.k;
  j["hypothesis"] = to_string(inst.hypothesis);
  j["params"] = to_json(inst.params);
  put_opt(j, "row_support", inst.row_support);
  put_opt(j, "col_support", inst.col_support);
  put_opt(j, "spike_row", inst.spike_row);
  put_opt(j, "spike_col", inst.spike_col);
  return j;
}

json to_json(const SpcaInstance& inst) {
  json j = to_json(inst.samples);
  j["kind"] = "samples";
  j["problem"] = to_string(inst.params.problem);
  j["n"] = inst.params.n;
  j["k"] = inst.params.k;
  j["hypothesis"] = to_string(inst.hypothesis);
  j["params"] = to_json(inst.params);
  j["theta"] = inst.theta;
  put_opt(j, "spike", inst.spike);
  return j;
}

PlantedGraphInstance graph_instance_from_json(const json& j) {
  PlantedGraphInstance inst;
  inst.graph = graph_from_json(j);
  inst.hypothesis = hypothesis_from_string(j.at("hypothesis").get<std::string>());
  inst.params = params_from_json(j.at("params"));
  if (j.contains("support")) inst.support = support_from_json(j["support"]);
  if (j.contains("communities"))
    inst.communities = std::make_pair(support_from_json(j["communities"][0]), support_from_json(j["communities"][1]));
  return inst;
}

PlantedMatrixInstance matrix_instance_from_json(const json& j) {
  PlantedMatrixInstance inst;
  inst.matrix = matrix_from_json(j);
  inst.hypothesis = hypothesis_from_string(j.at("hypothesis").get<std::string>());
  inst.params = params_from_json(j.at("params"));
  if (j.contains("row_support")) inst.row_support = support_from_json(j["row_support"]);
  if (j.contains("col_support")) inst.col_support = support_from_json(j["col_support"]);
  if (j.contains("spike_row")) inst.spike_row = vector_from_json(j["spike_row"]);
  if (j.contains("spike_col")) inst.spike_col = vector_from_json(j["spike_col"]);
  return inst;
}

SpcaInstance spca_instance_from_json(const json& j) {
  SpcaInstance inst;
  inst.samples = matrix_from_json(j);
  inst.hypothesis = hypothesis_from_string(j.at("hypothesis").get<std::string>());
  inst.params = params_from_json(j.at("params"));
  inst.theta = j.value("theta", 0.0);
  if (j.contains("spike")) inst.spike = vector_from_json(j["spike"]);
  return inst;
}

json to_json(const Observation& obs) {
  if (std::holds_alternative<Graph>(obs)) {
    json j = to_json(std::get<Graph>(obs));
    j["kind"] = "graph";
    return j;
  }
  json j = to_json(std::get<RealMatrix>(obs));
  j["kind"] = "matrix";
  return j;
}

Observation observation_from_json(const json& j) {
  if (j.contains("observation")) return observation_from_json(j["observation"]);
  if (j.contains("adjacency")) return graph_from_json(j);
  if (j.contains("entries")) return matrix_from_json(j);
  throw ParameterError("json: no graph or matrix found");
}

json to_json(const Verdict& v) {
  return json{{"decision", to_string(v.decision)},
              {"statistic", real_to_json(v.statistic)},
              {"threshold", real_to_json(v.threshold)},
              {"rule", v.rule}};
}

json to_json(const RecoveryResult& r) {
  json j{{"row_support", to_json(r.row_support)}, {"marked", r.marked}};
  put_opt(j, "col_support", r.col_support);
  return j;
}

json to_json(const ReductionOutput& r) {
  json stages = json::array();
  for (const auto& s : r.stages) stages.push_back({{"stage", s.stage}, {"bound", real_to_json(s.bound)}});
  json j{{"observation", to_json(r.observation)},
         {"target", to_json(r.target)},
         {"tv_budget", r.tv_budget ? real_to_json(*r.tv_budget) : json("unbounded")},
         {"stages", std::move(stages)},
         {"notes", r.notes}};
  if (r.trace) {
    json t = json::object();
    put_opt(t, "row_support", r.trace->row_support);
    put_opt(t, "col_support", r.trace->col_support);
    put_opt(t, "spike_row", r.trace->spike_row);
    put_opt(t, "spike_col", r.trace->spike_col);
    j["trace"] = std::move(t);
  }
  return j;
}

json to_json(const TestReport& r) {
  json j{{"method", r.method},
         {"statistic", real_to_json(r.statistic)},
         {"p_value", real_to_json(r.p_value)},
         {"n_a", r.n_a},
         {"n_b", r.n_b}};
  if (r.method == "chi-square") j["df"] = r.df;
  return j;
}

json to_json(const ErrorReport& r) {
  json j{{"type1", r.type1},
         {"type2", r.type2},
         {"type1_ci", interval_json(r.type1_ci)},
         {"type2_ci", interval_json(r.type2_ci)},
         {"trials", r.trials},
         {"seed", r.seed},
         {"failures_h0", r.failures_h0},
         {"failures_h1", r.failures_h1},
         {"failure_messages", r.failure_messages},
         {"params", to_json(r.params)},
         {"solver", r.solver}};
  if (r.pipeline) j["pipeline"] = *r.pipeline;
  return j;
}

json to_json(const ScheduleResult& r) {
  json vals = json::object();
  for (const auto& [k, v] : r.values) vals[k] = real_to_json(v);
  json j{{"theorem", r.theorem},
         {"alpha", r.alpha},
         {"beta", r.beta},
         {"n", r.n},
         {"N", real_to_json(r.N)},
         {"K", real_to_json(r.K)},
         {"ell", r.ell},
         {"k", real_to_json(r.k)},
         {"values", std::move(vals)},
         {"information_impossible", r.information_impossible},
         {"notes", r.notes}};
  if (r.gamma) j["gamma"] = real_to_json(*r.gamma);
  return j;
}

json to_json(const ExperimentConfig& c) {
  json j{{"problem", to_json(c.problem)},
         {"solver", {{"name", c.solver.name}, {"params", c.solver.params}}},
         {"trials", c.trials},
         {"seed", c.seed},
         {"output", c.output}};
  if (c.pipeline) j["pipeline"] = {{"reduction", c.pipeline->reduction}, {"params", c.pipeline->params}};
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  need(j, "problem");
  need(j, "solver");
  c.problem = params_from_json(j["problem"]);
  const json& s = j["solver"];
  if (s.is_string()) {
    c.solver.name = s.get<std::string>();
  } else {
    c.solver.name = s.at("name").get<std::string>();
    if (s.contains("params")) c.solver.params = s["params"];
  }
  if (j.contains("pipeline") && !j["pipeline"].is_null()) {
    const json& p = j["pipeline"];
    PipelineSpec ps;
    if (p.is_string()) {
      ps.reduction = p.get<std::string>();
    } else {
      ps.reduction = p.at("reduction").get<std::string>();
      if (p.contains("params")) ps.params = p["params"];
    }
    c.pipeline = ps;
  }
  c.trials = j.value("trials", 1);
  c.seed = j.value("seed", std::uint64_t{0});
  c.output = j.value("output", std::string{});
  return c;
}

}  // namespace planted
