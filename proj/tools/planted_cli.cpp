// planted: command line front end for generators, reductions, solvers and the harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "planted/cloning.hpp"
#include "planted/harness.hpp"
#include "planted/instances.hpp"
#include "planted/lifting.hpp"
#include "planted/serialize.hpp"
#include "planted/solvers.hpp"
#include "planted/stats.hpp"

using namespace planted;

namespace {

std::uint64_t seed_override(std::uint64_t seed) {
  if (const char* s = std::getenv("PLANTED_SEED")) return std::stoull(s);
  return seed;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  return json::parse(in);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

bool graph_problem(Problem p) {
  return p == Problem::PC || p == Problem::PIS || p == Problem::PDS || p == Problem::SSBM;
}
bool sample_problem(Problem p) {
  return p == Problem::SPCA || p == Problem::BSPCA || p == Problem::USPCA || p == Problem::UBSPCA;
}

struct ParamArgs {
  std::string problem = "PC";
  ProblemParams p;
  void add(CLI::App* app) {
    app->add_option("--problem", problem, "PC PIS PDS SSBM BC ROS SROS SSW SPCA BSPCA USPCA UBSPCA");
    app->add_option("--n", p.n, "vertices / matrix side / sample count")->required();
    app->add_option("--k", p.k, "planted size")->required();
    app->add_option("--d", p.d, "dimension (sample problems)");
    app->add_option("--p", p.p);
    app->add_option("--q", p.q);
    app->add_option("--rho", p.rho);
    app->add_option("--mu", p.mu);
    app->add_option("--theta", p.theta);
    app->add_option("--delta-ssbm", p.delta_ssbm);
    app->add_option("--delta-bspca", p.delta_bspca);
  }
  ProblemParams get() {
    p.problem = problem_from_string(problem);
    return p;
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

// Validation checks runnable from the command line; each prints TestReports.
json run_check(const std::string& name, std::uint64_t seed, int samples) {
  RandomStream rng(seed);
  json out{{"check", name}, {"seed", seed}, {"samples", samples}};
  if (name == "permuted_diagonal") {
    const double tv = exact_tv_small(permuted_diagonal_law(3, 0.9, 0.5), product_law(3, 0.5));
    out["tv"] = tv;
    out["bound"] = std::sqrt(0.64 / 2.0);
    out["pass"] = tv <= std::sqrt(0.64 / 2.0);
    return out;
  }
  if (name == "poisson_split") {
    std::array<std::vector<std::int64_t>, 4> c;
    for (int b = 0; b < samples; ++b) {
      const double x = static_cast<double>(rng.poisson(0.8));
      const auto s = poisson_split(x, rng);
      for (int i = 0; i < 4; ++i) c[i].push_back(static_cast<std::int64_t>(s[i]));
    }
    std::vector<double> probs;
    for (int v = 0; v < 12; ++v) probs.push_back(std::exp(-0.2 + v * std::log(0.2) - std::lgamma(v + 1.0)));
    json reps = json::array();
    for (int i = 0; i < 4; ++i) reps.push_back(to_json(gof_test(c[i], DiscreteReference{0, probs})));
    out["reports"] = reps;
    return out;
  }
  if (name == "gaussian_clone") {
    RealMatrix m(1, samples);
    for (int j = 0; j < samples; ++j) m(0, j) = rng.normal();
    auto [a, b] = gaussian_clone(m, rng);
    std::vector<double> va(a.data(), a.data() + a.size()), vb(b.data(), b.data() + b.size());
    out["reports"] = json::array({to_json(correlation_test(va, vb))});
    out["max_sum_defect"] = ((a + b) - std::sqrt(2.0) * m).cwiseAbs().maxCoeff();
    return out;
  }
  if (name == "bc_h0") {
    ProblemParams p;
    p.problem = Problem::BC;
    p.n = 100;
    p.k = 10;
    p.mu = 1.0;
    const RealMatrix m = gen_matrix(p, Hypothesis::H0, rng).matrix;
    std::vector<double> va(m.data(), m.data() + m.size()), vb;
    for (Eigen::Index i = 0; i < m.size(); ++i) vb.push_back(rng.normal());
    out["reports"] = json::array({to_json(two_sample_test(va, vb, TwoSampleMethod::KS))});
    return out;
  }
  throw ParameterError("unknown check '" + name + "' (permuted_diagonal, poisson_split, gaussian_clone, bc_h0)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planted-structure problems: generators, reductions, solvers, experiments"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Sample an instance and print it as JSON");
  ParamArgs gen_p;
  gen_p.add(gen);
  std::string gen_h = "H1", gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--hypothesis", gen_h);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out);

  // reduce
  auto* red = app.add_subcommand("reduce", "Run a reduction from a planted clique instance");
  std::string red_from = "PC", red_to, red_h = "H1", red_out;
  int red_n = 0, red_k = 0, red_ell = 1, red_tau = 2;
  double red_w = 0.0;
  std::uint64_t red_seed = 0;
  red->add_option("--from", red_from);
  red->add_option("--to", red_to, "PC PIS PDS BC ROS SROS SSW SSBM SPCA UBSPCA")->required();
  red->add_option("--n", red_n)->required();
  red->add_option("--k", red_k)->required();
  red->add_option("--ell", red_ell);
  red->add_option("--tau", red_tau);
  red->add_option("--w", red_w, "PC lifting schedule (default ln n)");
  red->add_option("--hypothesis", red_h);
  red->add_option("--seed", red_seed);
  red->add_option("--out", red_out);

  // solve
  auto* sol = app.add_subcommand("solve", "Run a test or recovery algorithm on a serialized instance");
  std::string sol_alg, sol_in, sol_out;
  std::optional<int> sol_k;
  std::optional<double> sol_mu, sol_p, sol_q, sol_theta, sol_delta, sol_c, sol_rho;
  bool sol_scan = false;
  std::uint64_t sol_seed = 0;
  sol->add_option("--algorithm", sol_alg,
                  "bc_sum_max pds_edge ssbm_spectral ros_svd ros_max spca_spectral bspca_sum "
                  "ros_search ros_spectral_projection spca_spectral_recover spca_kmax_recover")
      ->required();
  sol->add_option("--input", sol_in)->required();
  sol->add_option("--k", sol_k);
  sol->add_option("--mu", sol_mu);
  sol->add_option("--p", sol_p);
  sol->add_option("--q", sol_q);
  sol->add_option("--theta", sol_theta);
  sol->add_option("--delta", sol_delta);
  sol->add_option("--c-ratio", sol_c);
  sol->add_option("--rho", sol_rho);
  sol->add_flag("--scan-subgraphs", sol_scan);
  sol->add_option("--seed", sol_seed);
  sol->add_option("--out", sol_out);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte Carlo Type I/II error experiment from a JSON config");
  std::string exp_cfg;
  exp->add_option("--config", exp_cfg)->required();

  // validate
  auto* val = app.add_subcommand("validate", "Statistical self-checks");
  std::string val_check = "permuted_diagonal";
  std::uint64_t val_seed = 0;
  int val_samples = 100000;
  val->add_option("--check", val_check, "permuted_diagonal poisson_split gaussian_clone bc_h0");
  val->add_option("--seed", val_seed);
  val->add_option("--samples", val_samples);

  // schedule
  auto* sch = app.add_subcommand("schedule", "Evaluate a hardness-theorem parameter schedule");
  std::string sch_thm;
  double sch_a = 0, sch_b = 0;
  std::int64_t sch_n = 0;
  std::optional<double> sch_w, sch_g;
  sch->add_option("--theorem", sch_thm, "pis pds_gaussian bc ros")->required();
  sch->add_option("--alpha", sch_a)->required();
  sch->add_option("--beta", sch_b)->required();
  sch->add_option("--gamma", sch_g);
  sch->add_option("--n", sch_n)->required();
  sch->add_option("--w", sch_w);

  // sweep
  auto* swp = app.add_subcommand("sweep", "Phase-diagram sweep over an (alpha, beta) grid; prints CSV");
  std::string swp_cfg, swp_alphas, swp_betas, swp_out;
  swp->add_option("--config", swp_cfg)->required();
  swp->add_option("--alphas", swp_alphas, "comma separated")->required();
  swp->add_option("--betas", swp_betas, "comma separated")->required();
  swp->add_option("--out", swp_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const ProblemParams p = gen_p.get();
      p.validate();
      RandomStream rng(seed_override(gen_seed));
      const Hypothesis h = hypothesis_from_string(gen_h);
      json j;
      if (graph_problem(p.problem))
        j = to_json(gen_graph(p, h, rng));
      else if (sample_problem(p.problem))
        j = to_json(gen_spca(p, h, rng));
      else
        j = to_json(gen_matrix(p, h, rng));
      emit(j.dump(), gen_out);
    } else if (*red) {
      if (problem_from_string(red_from) != Problem::PC) throw ParameterError("reductions start from PC");
      ProblemParams src;
      src.problem = Problem::PC;
      src.n = red_n;
      src.k = red_k;
      src.p = 0.5;
      src.validate();
      static const std::map<std::string, std::string> route{
          {"PC", "pc_lift"},         {"PIS", "complement"},      {"PDS", "gaussian_lift"},
          {"BC", "bc_reduce"},       {"ROS", "ros_reduce"},      {"SROS", "sros_reduce"},
          {"SSW", "ssw_reduce"},     {"SSBM", "ssbm_reduce"},    {"SPCA", "spca_high_sparsity"},
          {"UBSPCA", "spca_low_sparsity"}};
      const std::string to = to_string(problem_from_string(red_to));
      auto it = route.find(to);
      if (it == route.end()) throw ParameterError("no reduction to " + to);
      PipelineSpec spec{it->second, {{"ell", red_ell}, {"tau", red_tau}}};
      if (red_w > 0) spec.params["w"] = red_w;
      RandomStream rng(seed_override(red_seed));
      const ReductionOutput out = run_pipeline(spec, src, hypothesis_from_string(red_h), rng);
      emit(to_json(out).dump(), red_out);
    } else if (*sol) {
      const json in = read_json(sol_in);
      ProblemParams ip;
      if (in.contains("params")) ip = params_from_json(in["params"]);
      if (in.contains("target")) ip = params_from_json(in["target"]);
      const Observation obs = observation_from_json(in);
      const int k = sol_k.value_or(ip.k);
      RandomStream rng(seed_override(sol_seed));
      json res;
      auto matrix = [&]() -> const RealMatrix& {
        if (!std::holds_alternative<RealMatrix>(obs)) throw ParameterError(sol_alg + ": expects a matrix");
        return std::get<RealMatrix>(obs);
      };
      if (sol_alg == "ros_max") {
        auto [v, r] = ros_max_test(matrix());
        res = {{"verdict", to_json(v)}, {"recovery", to_json(r)}};
      } else if (sol_alg == "ros_search") {
        const double mu = sol_mu.value_or(ip.mu);
        res = {{"recovery", to_json(ros_search(matrix(), k, sol_rho.value_or(mu / k), 0.5, rng))}};
      } else if (sol_alg == "ros_spectral_projection") {
        res = {{"recovery", to_json(ros_spectral_projection(matrix(), rng))}};
      } else if (sol_alg == "spca_spectral_recover") {
        res = {{"support", to_json(spca_spectral_recover(matrix(), k, rng))}};
      } else if (sol_alg == "spca_kmax_recover") {
        res = {{"support", to_json(spca_kmax_recover(matrix(), k))}};
      } else {
        SolverSpec s{sol_alg, json::object()};
        s.params["k"] = k;
        if (sol_mu) s.params["mu"] = *sol_mu;
        if (sol_p) s.params["p"] = *sol_p;
        if (sol_q) s.params["q"] = *sol_q;
        if (sol_theta) s.params["theta"] = *sol_theta;
        if (sol_delta) s.params["delta"] = *sol_delta;
        if (sol_c) s.params["c_ratio"] = *sol_c;
        if (sol_scan) s.params["scan_subgraphs"] = true;
        res = {{"verdict", to_json(run_solver(s, obs, ip))}};
      }
      emit(res.dump(2), sol_out);
    } else if (*exp) {
      ExperimentConfig c = config_from_json(read_json(exp_cfg));
      c.seed = seed_override(c.seed);
      const ErrorReport rep = run_error_experiment(c);
      const std::string text = to_json(rep).dump(2);
      std::cout << text << '\n';
      if (!c.output.empty()) emit(text, c.output);
    } else if (*val) {
      std::cout << run_check(val_check, seed_override(val_seed), val_samples).dump(2) << '\n';
    } else if (*sch) {
      std::cout << to_json(param_schedule(sch_thm, sch_a, sch_b, sch_g, sch_n, sch_w)).dump(2) << '\n';
    } else if (*swp) {
      ExperimentConfig c = config_from_json(read_json(swp_cfg));
      c.seed = seed_override(c.seed);
      std::vector<GridPoint> grid;
      for (double a : parse_list(swp_alphas))
        for (double b : parse_list(swp_betas)) grid.push_back({a, b, std::nullopt});
      const std::string csv = phase_sweep(grid, c);
      emit(csv, swp_out.empty() ? c.output : swp_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
