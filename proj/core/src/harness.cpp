#include "planted/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "planted/instances.hpp"
#include "planted/lifting.hpp"
#include "planted/rejection.hpp"
#include "planted/solvers.hpp"

namespace planted {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_graph_problem(Problem p) {
  return p == Problem::PC || p == Problem::PIS || p == Problem::PDS || p == Problem::SSBM;
}
bool is_sample_problem(Problem p) {
  return p == Problem::SPCA || p == Problem::BSPCA || p == Problem::USPCA || p == Problem::UBSPCA;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

const RealMatrix& as_matrix(const Observation& obs, const std::string& solver) {
  if (!std::holds_alternative<RealMatrix>(obs)) throw ParameterError(solver + ": expects a matrix observation");
  return std::get<RealMatrix>(obs);
}
const Graph& as_graph(const Observation& obs, const std::string& solver) {
  if (!std::holds_alternative<Graph>(obs)) throw ParameterError(solver + ": expects a graph observation");
  return std::get<Graph>(obs);
}

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"bc_sum_max", "pds_edge",      "ssbm_spectral", "ros_svd",
                                              "ros_max",    "spca_spectral", "bspca_sum"};
  return names;
}

bool solver_exists(const std::string& name) {
  const auto& s = solver_names();
  return std::find(s.begin(), s.end(), name) != s.end();
}

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"bc_reduce",     "ros_reduce",         "sros_reduce",
                                              "ssw_reduce",    "ssbm_reduce",        "spca_high_sparsity",
                                              "spca_low_sparsity", "pc_lift",        "gaussian_lift",
                                              "complement"};
  return names;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (!solver_exists(solver.name)) throw ParameterError("unknown solver: " + solver.name);
  problem.validate();
  if (pipeline) {
    const auto& p = pipeline_names();
    if (std::find(p.begin(), p.end(), pipeline->reduction) == p.end())
      throw ParameterError("unknown pipeline: " + pipeline->reduction);
    if (problem.problem != Problem::PC) throw ParameterError("pipelines start from a PC source");
  }
}

Observation generate_observation(const ProblemParams& params, Hypothesis h, RandomStream& rng) {
  if (is_graph_problem(params.problem)) return gen_graph(params, h, rng).graph;
  if (is_sample_problem(params.problem)) return gen_spca(params, h, rng).samples;
  return gen_matrix(params, h, rng).matrix;
}

ReductionOutput run_pipeline(const PipelineSpec& spec, const ProblemParams& source, Hypothesis h,
                             RandomStream& rng) {
  RandomStream gen_rng = rng.split(0);
  RandomStream red_rng = rng.split(1);
  const PlantedGraphInstance inst = gen_graph(source, h, gen_rng);
  SourceInfo src;
  src.k = source.k;
  src.planted = inst.support;
  const json& p = spec.params;
  const int ell = get_or<int>(p, "ell", 1);
  const std::string& r = spec.reduction;

  if (r == "bc_reduce") return bc_reduce(inst.graph, ell, red_rng, src);
  if (r == "ros_reduce") return ros_reduce(inst.graph, ell, red_rng, src);
  if (r == "sros_reduce") return sros_reduce(inst.graph, source.k, ell, red_rng, src);
  if (r == "ssw_reduce") {
    ReductionOutput out = sros_reduce(inst.graph, source.k, ell, red_rng, src);
    out.observation = symmetrize_to_ssw(std::get<RealMatrix>(out.observation));
    out.target.problem = Problem::SSW;
    out.target.mu /= std::sqrt(2.0);
    return out;
  }
  if (r == "ssbm_reduce") return ssbm_reduce(inst.graph, source.k, ell, red_rng, src);
  if (r == "spca_high_sparsity")
    return spca_high_sparsity(inst.graph, ell, get_or<int>(p, "tau", 2), red_rng, src);
  if (r == "spca_low_sparsity")
    return spca_low_sparsity(inst.graph, ell, get_or<int>(p, "tau", 2), red_rng, src);

  ReductionOutput out;
  out.target = source;
  if (r == "pc_lift") {
    const double w = get_or<double>(p, "w", std::log(static_cast<double>(source.n)));
    out.observation = pc_lift(inst.graph, ell, w, red_rng);
    out.target.n = source.n << ell;
    out.target.k = source.k << ell;
    out.target.p = std::exp(std::log1p(-1.0 / w) / std::ldexp(1.0, 2 * ell));
    out.notes.push_back("PC target with edge density p");
    return out;
  }
  if (r == "gaussian_lift") {
    const Densities d = gaussian_lift_densities(source.n, ell);
    out.observation = gaussian_lift_graph(inst.graph, ell, red_rng);
    out.target.problem = Problem::PDS;
    out.target.n = source.n << ell;
    out.target.k = source.k << ell;
    out.target.p = d.p;
    out.target.q = d.q;
    return out;
  }
  if (r == "complement") {
    out.observation = inst.graph.complement();
    out.target.problem = Problem::PIS;
    out.target.q = 1.0 - source.p;
    return out;
  }
  throw ParameterError("unknown pipeline: " + r);
}

Verdict run_solver(const SolverSpec& spec, const Observation& obs, const ProblemParams& params) {
  const json& p = spec.params;
  const std::string& s = spec.name;
  const int k = get_or<int>(p, "k", params.k);
  if (s == "bc_sum_max")
    return bc_sum_max_test(as_matrix(obs, s), k, get_or<double>(p, "mu", params.mu), get_or<double>(p, "c", 1.0));
  if (s == "pds_edge")
    return pds_edge_tests(as_graph(obs, s), k, get_or<double>(p, "p", params.p), get_or<double>(p, "q", params.q),
                          get_or<bool>(p, "scan_subgraphs", false));
  if (s == "ssbm_spectral") return ssbm_spectral_test(as_graph(obs, s), get_or<double>(p, "q", params.q));
  if (s == "ros_svd") return ros_svd_test(as_matrix(obs, s), get_or<double>(p, "mu", params.mu));
  if (s == "ros_max") return ros_max_test(as_matrix(obs, s)).first;
  if (s == "spca_spectral") {
    const RealMatrix& x = as_matrix(obs, s);
    const double c = get_or<double>(p, "c_ratio", static_cast<double>(x.rows()) / static_cast<double>(x.cols()));
    return spca_spectral_test(x, c);
  }
  if (s == "bspca_sum")
    return bspca_sum_test(as_matrix(obs, s), k, get_or<double>(p, "theta", params.theta),
                          get_or<double>(p, "delta", params.delta_bspca));
  throw ParameterError("unknown solver: " + s);
}

ErrorReport run_error_experiment(const ExperimentConfig& config, RandomStream& rng) {
  config.validate();
  ErrorReport rep;
  rep.trials = config.trials;
  rep.seed = config.seed;
  rep.params = config.problem;
  rep.solver = config.solver.name;
  if (config.pipeline) rep.pipeline = config.pipeline->reduction;

  int errors[2] = {0, 0};
  int fails[2] = {0, 0};
  for (int hi = 0; hi < 2; ++hi) {
    const Hypothesis h = hi == 0 ? Hypothesis::H0 : Hypothesis::H1;
    const RandomStream branch = rng.split(static_cast<std::uint64_t>(hi));
    for (int t = 0; t < config.trials; ++t) {
      RandomStream s = branch.split(static_cast<std::uint64_t>(t));
      try {
        Verdict v;
        if (config.pipeline) {
          const ReductionOutput out = run_pipeline(*config.pipeline, config.problem, h, s);
          v = run_solver(config.solver, out.observation, out.target);
        } else {
          const Observation obs = generate_observation(config.problem, h, s);
          v = run_solver(config.solver, obs, config.problem);
        }
        if (v.decision != h) ++errors[hi];
      } catch (const std::exception& e) {
        ++errors[hi];
        ++fails[hi];
        if (rep.failure_messages.size() < 20)
          rep.failure_messages.push_back(to_string(h) + " trial " + std::to_string(t) + ": " + e.what());
      }
    }
  }
  rep.type1 = static_cast<double>(errors[0]) / config.trials;
  rep.type2 = static_cast<double>(errors[1]) / config.trials;
  rep.type1_ci = wilson_interval(errors[0], config.trials);
  rep.type2_ci = wilson_interval(errors[1], config.trials);
  rep.failures_h0 = fails[0];
  rep.failures_h1 = fails[1];
  return rep;
}

ErrorReport run_error_experiment(const ExperimentConfig& config) {
  RandomStream rng(config.seed);
  return run_error_experiment(config, rng);
}

ScheduleResult param_schedule(const std::string& theorem, double alpha, double beta,
                              std::optional<double> gamma, std::int64_t n, std::optional<double> w) {
  if (n < 2) throw ParameterError("param_schedule: require n >= 2");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("param_schedule: require 0 < beta < 1");
  ScheduleResult r;
  r.theorem = theorem;
  r.alpha = alpha;
  r.beta = beta;
  r.n = n;
  const double nn = static_cast<double>(n);
  const double lg2 = std::log2(nn), ln = std::log(nn);
  const double mu_base = std::log(2.0) / (2.0 * std::sqrt(6.0 * ln + 2.0 * std::log(2.0)));

  double g = 0.0;
  if (theorem == "pis") {
    if (!(alpha >= 0.0 && alpha < 2.0)) throw ParameterError("pis: require 0 <= alpha < 2");
    if (!(beta < 0.5 + alpha / 4.0)) throw ParameterError("pis: require beta < 1/2 + alpha/4");
    g = (2.0 * beta - alpha) / (2.0 - alpha);
    r.ell = ceil_tol(alpha * lg2 / (2.0 - alpha));
    r.information_impossible = beta < alpha;
  } else if (theorem == "pds_gaussian" || theorem == "bc") {
    if (!(alpha >= 0.0 && alpha < 1.0))
      throw ParameterError(theorem + ": require 0 <= alpha < 1");
    if (theorem == "bc" && !(alpha > 0.0)) throw ParameterError("bc: require alpha > 0");
    if (!(beta < 0.5 + alpha / 2.0)) throw ParameterError(theorem + ": require beta < 1/2 + alpha/2");
    g = (beta - alpha) / (1.0 - alpha);
    r.ell = ceil_tol(alpha * lg2 / (1.0 - alpha));
    r.information_impossible = beta < 2.0 * alpha;
  } else if (theorem == "ros") {
    if (!(alpha > 0.0)) throw ParameterError("ros: require alpha > 0");
    if (!(beta < 0.5 + alpha)) throw ParameterError("ros: require beta < 1/2 + alpha");
    g = beta - alpha;
    r.ell = ceil_tol(alpha * lg2);
    r.information_impossible = beta < 2.0 * alpha;
  } else {
    throw ParameterError("param_schedule: unknown theorem tag '" + theorem + "'");
  }
  if (gamma && std::abs(*gamma - g) > 1e-12)
    r.notes.push_back("supplied gamma ignored; the schedule fixes gamma from (alpha, beta)");
  r.gamma = g;
  r.ell = std::max(r.ell, 0);
  r.k = std::max(1, ceil_tol(std::pow(nn, g)));
  const double two_l = std::ldexp(1.0, r.ell);
  r.K = two_l * r.k;
  r.N = theorem == "ros" ? 2.0 * nn : two_l * nn;
  const double logN = std::log(r.N);
  r.values["log_K_over_log_N"] = std::log(r.K) / logN;

  if (theorem == "pis") {
    const double ww = w.value_or(ln);
    if (!(ww > 1.0)) throw ParameterError("pis: require w > 1");
    // 1 - (1 - 1/w)^(4^-ell), evaluated without cancellation
    const double q = -std::expm1(std::log1p(-1.0 / ww) / std::ldexp(1.0, 2 * r.ell));
    r.values["w"] = ww;
    r.values["q"] = q;
    r.values["log_qinv_over_log_N"] = -std::log(q) / logN;
  } else if (theorem == "pds_gaussian") {
    const double x = mu_base / two_l;
    const double p = phi(x);
    r.values["mu"] = mu_base;
    r.values["p"] = p;
    r.values["q"] = 0.5;
    // p - 1/2 via erf to keep precision at tiny offsets
    r.values["log_gapinv_over_log_N"] = -std::log(0.5 * std::erf(x / std::sqrt(2.0))) / logN;
  } else if (theorem == "bc") {
    const double mu = mu_base / (two_l * std::sqrt(2.0));
    r.values["mu"] = mu;
    r.values["log_muinv_over_log_N"] = -std::log(mu) / logN;
  } else {
    const double mu = mu_base * r.k / std::sqrt(2.0);
    r.values["mu"] = mu;
    r.values["log_K_over_mu_over_log_N"] = std::log(r.K / mu) / logN;
  }
  if (r.K > r.N) r.notes.push_back("K exceeds N at this n");
  if (r.information_impossible) r.notes.push_back("below the information-theoretic limit");
  return r;
}

ProblemParams params_at(const ProblemParams& base, double alpha, double beta) {
  ProblemParams p = base;
  const int dim = is_sample_problem(base.problem) ? base.d : base.n;
  p.k = std::clamp(ceil_tol(std::pow(static_cast<double>(dim), beta)), 1, dim);
  const double s = std::pow(static_cast<double>(dim), -alpha);
  switch (base.problem) {
    case Problem::PC: break;
    case Problem::PIS: p.q = s; break;
    case Problem::PDS: p.p = base.q + s; break;
    case Problem::SSBM: p.rho = s; break;
    case Problem::BC: p.mu = s; break;
    case Problem::ROS:
    case Problem::SROS:
    case Problem::SSW: p.mu = p.k * s; break;
    default: p.theta = s; break;
  }
  return p;
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string extra_params(const ProblemParams& p) {
  std::ostringstream os;
  os << "problem=" << to_string(p.problem);
  switch (p.problem) {
    case Problem::PC: os << ";p=" << num(p.p); break;
    case Problem::PIS: os << ";q=" << num(p.q); break;
    case Problem::PDS: os << ";p=" << num(p.p) << ";q=" << num(p.q); break;
    case Problem::SSBM: os << ";q=" << num(p.q) << ";rho=" << num(p.rho); break;
    case Problem::BC:
    case Problem::ROS:
    case Problem::SROS:
    case Problem::SSW: os << ";mu=" << num(p.mu); break;
    default: os << ";d=" << p.d << ";theta=" << num(p.theta); break;
  }
  return os.str();
}

}  // namespace

std::string phase_sweep(const std::vector<GridPoint>& grid, const ExperimentConfig& config) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  const RandomStream root(config.seed);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const GridPoint& gp = grid[i];
    double a = gp.alpha.value_or(kNaN), b = gp.beta.value_or(kNaN);
    ProblemParams params = config.problem;
    double t1 = kNaN, t2 = kNaN;
    try {
      if (gp.raw)
        params = *gp.raw;
      else if (gp.alpha && gp.beta)
        params = params_at(config.problem, a, b);
      else
        throw ParameterError("grid point needs (alpha, beta) or raw params");
      ExperimentConfig c = config;
      c.problem = params;
      RandomStream rng = root.split(i);
      const ErrorReport rep = run_error_experiment(c, rng);
      t1 = rep.type1;
      t2 = rep.type2;
    } catch (const std::exception&) {
      // recorded as a NaN row
    }
    out << num(a) << ',' << num(b) << ',' << params.n << ',' << params.k << ',' << extra_params(params) << ','
        << config.solver.name << ',' << num(t1) << ',' << num(t2) << ',' << config.trials << ',' << config.seed
        << '\n';
  }
  return out.str();
}

}  // namespace planted
