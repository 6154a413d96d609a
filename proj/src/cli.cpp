#include "meproute/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "meproute/engine.hpp"
#include "meproute/errors.hpp"
#include "meproute/generators.hpp"
#include "meproute/json_io.hpp"
#include "meproute/oracle.hpp"
#include "meproute/svg.hpp"
#include "meproute/tsplib.hpp"

namespace meproute::cli {

namespace {

using nlohmann::json;

int log_level() {
  const char* env = std::getenv("MEP_ROUTE_LOG");
  if (!env) return 0;
  const std::string v = env;
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

void info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[meproute] " << msg << "\n";
}

struct Options {
  std::string input;
  std::string output;
  std::string trace_path;
  std::string svg_path;
  std::string variant;
  int salesmen = 0;         // 0 = keep instance value
  double eta = -1.0;        // <0 = keep
  double radius = -1.0;     // <0 = keep
  std::string metric = "squared";
  std::string interior_zero = "on";
  std::string strict_returning_prob = "off";
  std::uint64_t seed = 1;
  // schedule overrides; NaN = use default
  double beta_init = -1, beta_growth = -1, beta_max = -1;
  double theta_init = -1, theta_decay = -1, theta_min = -1;
  int max_sweeps = 0;
  // generate
  std::string preset = "uniform";
  int nodes = 30;
  int per_ring = 15;
  std::vector<double> ring_radii{1.0, 2.0};
  std::vector<double> box{0.0, 0.0, 1.0, 1.0};
  double gen_radius = 0.0;
  std::string format = "json";
};

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--variant", opt.variant)
      ->check(CLI::IsMember({"basic", "mtsp-open", "mtsp-returning", "mtsp-depot", "cetsp"}));
  cmd->add_option("--salesmen", opt.salesmen);
  cmd->add_option("--eta", opt.eta);
  cmd->add_option("--radius", opt.radius);
  cmd->add_option("--seed", opt.seed);
  cmd->add_option("--interior-zero", opt.interior_zero)->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--strict-returning-prob", opt.strict_returning_prob)
      ->check(CLI::IsMember({"on", "off"}));
}

void add_schedule_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--beta-init", opt.beta_init);
  cmd->add_option("--beta-growth", opt.beta_growth);
  cmd->add_option("--beta-max", opt.beta_max);
  cmd->add_option("--theta-init", opt.theta_init);
  cmd->add_option("--theta-decay", opt.theta_decay);
  cmd->add_option("--theta-min", opt.theta_min);
  cmd->add_option("--max-sweeps", opt.max_sweeps);
}

ProblemInstance load_instance(const Options& opt) {
  std::ifstream in(opt.input);
  if (!in) throw Error("cannot open input file: " + opt.input);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  ProblemInstance instance;
  const bool tsplib = opt.input.size() > 4 && opt.input.substr(opt.input.size() - 4) == ".tsp";
  if (tsplib) {
    instance = parse_tsplib(text);
  } else {
    instance = load_instance_json(text);
  }

  if (!opt.variant.empty()) {
    instance.variant = *variant_from_name(opt.variant);
    if (instance.variant == Variant::SingleDepotReturningMTSP && !instance.depot) {
      throw Error("mtsp-depot requires a depot in the instance file");
    }
    if (instance.variant != Variant::SingleDepotReturningMTSP) instance.depot.reset();
    if (instance.variant == Variant::BasicReturningTSP ||
        instance.variant == Variant::ReturningCETSP) {
      instance.salesmen = 1;
    } else if (instance.salesmen < 2) {
      instance.salesmen = 2;
    }
    if (instance.variant != Variant::ReturningCETSP) {
      for (Node& node : instance.nodes) node.radius = 0.0;
    }
  }
  if (opt.salesmen > 0) instance.salesmen = opt.salesmen;
  if (opt.eta >= 0.0) instance.balance_eta = opt.eta;
  if (opt.radius >= 0.0) {
    for (Node& node : instance.nodes) node.radius = opt.radius;
  }
  instance.validate();
  return instance;
}

Schedule resolve_schedule(const Options& opt, const ProblemInstance& instance) {
  Schedule s = Schedule::defaults_for(instance);
  if (opt.beta_init > 0) s.beta_init = opt.beta_init;
  if (opt.beta_growth > 0) s.beta_growth = opt.beta_growth;
  if (opt.beta_max > 0) s.beta_max = opt.beta_max;
  if (opt.theta_init > 0) s.theta_init = opt.theta_init;
  if (opt.theta_decay > 0) s.theta_decay = opt.theta_decay;
  if (opt.theta_min > 0) s.theta_min = opt.theta_min;
  if (opt.max_sweeps > 0) s.max_sweeps = opt.max_sweeps;
  s.rng_seed = opt.seed;
  s.validate();
  return s;
}

SolverOptions resolve_solver_options(const Options& opt) {
  SolverOptions so;
  so.interior_zero = opt.interior_zero == "on";
  so.strict_returning_prob = opt.strict_returning_prob == "on";
  return so;
}

json config_json(const std::string& command, const Options& opt, const ProblemInstance& instance,
                 const Schedule* schedule) {
  json c;
  c["command"] = command;
  c["input"] = opt.input;
  c["output"] = opt.output;
  c["variant"] = variant_name(instance.variant);
  c["salesmen"] = instance.salesmen;
  c["eta"] = instance.balance_eta;
  c["metric"] = opt.metric;
  c["interior_zero"] = opt.interior_zero;
  c["strict_returning_prob"] = opt.strict_returning_prob;
  c["seed"] = opt.seed;
  if (opt.radius >= 0.0) c["radius"] = opt.radius;
  if (schedule) {
    c["schedule"] = {{"beta_init", schedule->beta_init},
                     {"beta_growth", schedule->beta_growth},
                     {"beta_max", schedule->beta_max},
                     {"theta_init", schedule->theta_init},
                     {"theta_decay", schedule->theta_decay},
                     {"theta_min", schedule->theta_min},
                     {"stability_tol", schedule->stability_tol},
                     {"sweep_tol", schedule->sweep_tol},
                     {"max_sweeps", schedule->max_sweeps},
                     {"perturbation", schedule->perturbation}};
  }
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write output file: " + path);
  out << text;
}

Metric metric_from(const std::string& name) {
  return name == "euclidean" ? Metric::Euclidean : Metric::Squared;
}

int run_solve(const Options& opt) {
  const ProblemInstance instance = load_instance(opt);
  const Schedule schedule = resolve_schedule(opt, instance);
  const SolverOptions solver_options = resolve_solver_options(opt);
  const json config = config_json("solve", opt, instance, &schedule);

  const AnnealResult result = anneal(instance, schedule, solver_options);
  info("solved: " + std::to_string(result.trace.steps.size()) + " schedule steps, length " +
       std::to_string(result.solution.euclidean_length));
  if (log_level() >= 2) {
    for (const auto& e : result.trace.events) std::cerr << "[meproute] trace: " << e << "\n";
  }

  json out = solution_to_json(result.solution);
  out["config"] = config;
  emit(opt.output, out.dump(2) + "\n");
  if (!opt.trace_path.empty()) {
    emit(opt.trace_path, result.trace.to_csv() + "# config: " + config.dump() + "\n");
  }
  if (!opt.svg_path.empty()) {
    emit(opt.svg_path, render_svg(result.solution, instance, "config: " + config.dump()));
  }
  return 0;
}

int run_oracle(const Options& opt) {
  const ProblemInstance instance = load_instance(opt);
  const json config = config_json("oracle", opt, instance, nullptr);
  const OracleResult result = instance.variant == Variant::ReturningCETSP
                                  ? cetsp_order_oracle(instance)
                                  : exact_solve(instance, metric_from(opt.metric));
  json out;
  out["solution"] = solution_to_json(result.best_solution);
  out["optimal_value"] = result.optimal_value;
  out["evaluated_count"] = result.evaluated_count;
  out["config"] = config;
  emit(opt.output, out.dump(2) + "\n");
  return 0;
}

int run_compare(const Options& opt) {
  const ProblemInstance instance = load_instance(opt);
  const Schedule schedule = resolve_schedule(opt, instance);
  const SolverOptions solver_options = resolve_solver_options(opt);
  const json config = config_json("compare", opt, instance, &schedule);
  const Metric metric = metric_from(opt.metric);

  const AnnealResult solved = anneal(instance, schedule, solver_options);
  double solver_value = 0.0;
  double oracle_value = 0.0;
  if (instance.variant == Variant::ReturningCETSP) {
    solver_value = solved.solution.euclidean_length;  // waypoint cycle
    oracle_value = cetsp_order_oracle(instance).optimal_value;
  } else {
    solver_value = tours_objective(instance, solved.solution.tours, metric);
    oracle_value = exact_solve(instance, metric).optimal_value;
  }

  json out;
  out["solver"] = solver_value;
  out["oracle"] = oracle_value;
  out["gap"] = oracle_value != 0.0 ? (solver_value - oracle_value) / oracle_value : 0.0;
  out["solution"] = solution_to_json(solved.solution);
  out["config"] = config;
  emit(opt.output, out.dump(2) + "\n");
  return 0;
}

int run_generate(const Options& opt) {
  ProblemInstance instance;
  if (opt.preset == "rings30") {
    instance = generate_rings(opt.per_ring, opt.ring_radii[0], opt.ring_radii[1], opt.seed);
  } else if (opt.preset == "paper59") {
    instance = paper59_depot();
  } else if (opt.preset == "uniform") {
    instance = generate_uniform(opt.nodes, {opt.box[0], opt.box[1]}, {opt.box[2], opt.box[3]},
                                opt.gen_radius, opt.seed);
  } else {
    throw Error("unknown preset: " + opt.preset);
  }
  if (!opt.variant.empty()) {
    instance.variant = *variant_from_name(opt.variant);
    if (instance.variant == Variant::BasicReturningTSP ||
        instance.variant == Variant::ReturningCETSP) {
      instance.salesmen = 1;
    } else if (instance.salesmen < 2) {
      instance.salesmen = 2;
    }
    if (instance.variant == Variant::SingleDepotReturningMTSP && !instance.depot) {
      instance.depot = Depot{instance.centroid()};
    }
    if (instance.variant != Variant::SingleDepotReturningMTSP) instance.depot.reset();
  }
  if (opt.salesmen > 0) instance.salesmen = opt.salesmen;
  if (opt.eta >= 0.0) instance.balance_eta = opt.eta;
  if (opt.radius >= 0.0) {
    for (Node& node : instance.nodes) node.radius = opt.radius;
  }
  instance.validate();

  const json config = config_json("generate", opt, instance, nullptr);
  if (opt.format == "tsplib") {
    emit(opt.output, write_tsplib(instance, opt.preset, "config: " + config.dump()));
  } else {
    json out = instance_to_json(instance);
    out["config"] = config;
    emit(opt.output, out.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"deterministic-annealing TSP/mTSP/CETSP solver"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* solve = app.add_subcommand("solve", "anneal an instance and write the tours");
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force reference solution");
  CLI::App* generate = app.add_subcommand("generate", "write a synthetic instance");
  CLI::App* compare = app.add_subcommand("compare", "solve and report the gap to the oracle");

  for (CLI::App* cmd : {solve, oracle, compare}) {
    cmd->add_option("--input", opt.input)->required();
    add_common_flags(cmd, opt);
  }
  for (CLI::App* cmd : {solve, compare}) {
    add_schedule_flags(cmd, opt);
    cmd->add_option("--trace", opt.trace_path);
    cmd->add_option("--svg", opt.svg_path);
  }
  for (CLI::App* cmd : {oracle, compare}) {
    cmd->add_option("--metric", opt.metric)->check(CLI::IsMember({"euclidean", "squared"}));
  }
  for (CLI::App* cmd : {solve, oracle, generate, compare}) {
    cmd->add_option("--output,-o", opt.output);
  }
  add_common_flags(generate, opt);
  generate->add_option("--preset", opt.preset)
      ->check(CLI::IsMember({"uniform", "rings30", "paper59"}));
  generate->add_option("--nodes", opt.nodes);
  generate->add_option("--per-ring", opt.per_ring);
  generate->add_option("--radii", opt.ring_radii)->expected(2);
  generate->add_option("--box", opt.box)->expected(4);
  generate->add_option("--gen-radius", opt.gen_radius);
  generate->add_option("--format", opt.format)->check(CLI::IsMember({"json", "tsplib"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (solve->parsed()) return run_solve(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (generate->parsed()) return run_generate(opt);
    if (compare->parsed()) return run_compare(opt);
    std::cerr << "no command given\n";
    return 1;
  } catch (const NumericalDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleSizeLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace meproute::cli
