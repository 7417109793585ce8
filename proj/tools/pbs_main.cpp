// pbs: command-line front end for the preemptive bipartite scheduling library.
//
// Subcommands: generate, solve, validate, oracle, bench. Data goes to stdout
// or the --out file; diagnostics go to stderr. Exit codes: 0 success, 1 domain
// error (invalid input, failed validation), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pbs/bench.hpp"
#include "pbs/instance.hpp"
#include "pbs/oracle.hpp"
#include "pbs/rng.hpp"
#include "pbs/schedule.hpp"
#include "pbs/schedulers.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << data;
  if (!out) throw std::runtime_error("cannot write " + path);
}

// --seed wins, then PBS_SCHED_SEED, then 42.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
  if (seed_given) return seed_flag;
  if (const char* env = std::getenv("PBS_SCHED_SEED")) {
    const std::string text(env);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(text, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("PBS_SCHED_SEED", "not an unsigned integer: " + text);
    }
    if (used != text.size())
      throw CLI::ValidationError("PBS_SCHED_SEED", "not an unsigned integer: " + text);
    return value;
  }
  return 42;
}

std::vector<pbs::Algorithm> parse_algos(const std::string& list) {
  std::vector<pbs::Algorithm> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto algo = pbs::algorithm_from_name(name);
    if (!algo) throw CLI::ValidationError("--algos", "unknown algorithm: " + name);
    out.push_back(*algo);
  }
  if (out.empty()) throw CLI::ValidationError("--algos", "empty algorithm list");
  return out;
}

std::string summary_line(const pbs::SolveReport& rep) {
  const auto [p, q] = rep.ratio_to_lower_bound();
  std::ostringstream ss;
  ss << "algo=" << rep.algorithm << " cost=" << rep.cost << " rounds=" << rep.n_rounds
     << " ratio=" << p << '/' << q << '\n';
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preemptive bipartite scheduling toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a random instance");
  int gen_n = 0, gen_m = 0;
  long long gen_wmax = 120, gen_d = 0;
  double gen_density = 1.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of sources")->required();
  gen->add_option("--m", gen_m, "number of destinations")->required();
  gen->add_option("--wmax", gen_wmax, "maximum edge weight");
  gen->add_option("--density", gen_density, "edge presence probability");
  gen->add_option("--d", gen_d, "setup cost");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // solve
  auto* sol = app.add_subcommand("solve", "schedule an instance");
  std::string sol_in, sol_out, sol_algo = "hsa", sol_mode = "hybrid";
  long long sol_t = 9, sol_d = 0;
  sol->add_option("--in", sol_in, "instance file (default stdin)");
  sol->add_option("--algo", sol_algo, "posa, os01pt, hsa, or sga");
  sol->add_option("--mode", sol_mode, "hsa selection rule: hybrid or threshold")
      ->check(CLI::IsMember({"hybrid", "threshold"}));
  sol->add_option("--t", sol_t, "setup threshold for --mode threshold");
  auto* sol_d_opt = sol->add_option("--d", sol_d, "override the instance setup cost");
  sol->add_option("--out,--emit-schedule", sol_out, "write the schedule here");

  // validate
  auto* val = app.add_subcommand("validate", "check a schedule against an instance");
  std::string val_in, val_schedule;
  long long val_d = 0;
  val->add_option("--in", val_in, "instance file (default stdin)");
  val->add_option("--schedule", val_schedule, "schedule file")->required();
  auto* val_d_opt = val->add_option("--d", val_d, "override the instance setup cost");

  // oracle
  auto* ora = app.add_subcommand("oracle", "exhaustive optimum for tiny instances");
  std::string ora_in, ora_out;
  long long ora_d = 0;
  int ora_max_edges = 12;
  ora->add_option("--in", ora_in, "instance file (default stdin)");
  ora->add_option("--max-edges", ora_max_edges, "edge-count limit");
  auto* ora_d_opt = ora->add_option("--d", ora_d, "override the instance setup cost");
  ora->add_option("--out", ora_out, "write the witness schedule here");

  // bench
  auto* ben = app.add_subcommand("bench", "sweep setup costs and emit CSV");
  pbs::SweepConfig cfg;
  long long ben_d_from = 0, ben_d_to = 100, ben_d_step = 1;
  std::uint64_t ben_seed = 0;
  std::string ben_algos = "posa,os01pt,hsa,sga", ben_preset, ben_out;
  auto* ben_n = ben->add_option("--n", cfg.n_sources, "number of sources");
  auto* ben_m = ben->add_option("--m", cfg.n_dests, "number of destinations");
  auto* ben_w = ben->add_option("--wmax", cfg.w_max, "maximum edge weight");
  auto* ben_dens = ben->add_option("--density", cfg.density, "edge presence probability");
  auto* ben_from = ben->add_option("--d-from", ben_d_from, "first setup cost");
  auto* ben_to = ben->add_option("--d-to", ben_d_to, "last setup cost");
  auto* ben_step = ben->add_option("--d-step", ben_d_step, "setup cost stride");
  auto* ben_reps = ben->add_option("--reps", cfg.instances_per_d, "instances per setup cost");
  auto* ben_algos_opt = ben->add_option("--algos", ben_algos, "comma-separated algorithms");
  ben->add_option("--preset", ben_preset, "paper, paper-d09, or paper-ci")
      ->check(CLI::IsMember({"paper", "paper-d09", "paper-ci"}));
  ben->add_option("--jobs", cfg.jobs, "worker threads");
  auto* ben_seed_opt = ben->add_option("--seed", ben_seed, "sweep seed");
  ben->add_flag("--reuse-instances", cfg.reuse_instances,
                "one instance set shared by every setup cost");
  ben->add_option("--out", ben_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      const pbs::Instance inst =
          pbs::generate_uniform(gen_n, gen_m, gen_wmax, gen_density, gen_d,
                                resolve_seed(!gen_seed_opt->empty(), gen_seed));
      write_output(gen_out, pbs::serialize_instance(inst));
      return 0;
    }

    if (sol->parsed()) {
      pbs::Instance inst = pbs::parse_instance(read_input(sol_in));
      if (!sol_d_opt->empty()) inst.setup = sol_d;
      pbs::SolveReport rep;
      if (sol_algo == "hsa" && sol_mode == "threshold") {
        rep = pbs::hsa_threshold(inst, sol_t);
      } else {
        const auto algo = pbs::algorithm_from_name(sol_algo);
        if (!algo) throw CLI::ValidationError("--algo", "unknown algorithm: " + sol_algo);
        rep = pbs::solve(inst, *algo);
      }
      if (!sol_out.empty()) write_output(sol_out, pbs::serialize_schedule(rep.schedule));
      std::cout << summary_line(rep);
      return 0;
    }

    if (val->parsed()) {
      pbs::Instance inst = pbs::parse_instance(read_input(val_in));
      if (!val_d_opt->empty()) inst.setup = val_d;
      const pbs::Schedule sched = pbs::parse_schedule(read_input(val_schedule));
      if (const auto v = pbs::validate(sched, inst)) {
        std::cerr << "invalid: " << v->message << '\n';
        return 1;
      }
      std::cout << "ok cost=" << pbs::cost(sched, inst.setup)
                << " rounds=" << sched.n_rounds() << '\n';
      return 0;
    }

    if (ora->parsed()) {
      pbs::Instance inst = pbs::parse_instance(read_input(ora_in));
      if (!ora_d_opt->empty()) inst.setup = ora_d;
      const pbs::OracleResult res = pbs::optimal_cost(inst, ora_max_edges);
      if (!ora_out.empty()) write_output(ora_out, pbs::serialize_schedule(res.witness));
      std::cout << "optimum=" << res.optimal_cost
                << " rounds=" << res.witness.n_rounds()
                << " matchings=" << res.matchings_considered << '\n';
      return 0;
    }

    // bench
    if (!ben_preset.empty()) {
      cfg.n_sources = 30;
      cfg.n_dests = 30;
      cfg.w_max = 120;
      cfg.density = ben_preset == "paper-d09" ? 0.9 : 1.0;
      ben_d_from = 0;
      ben_d_to = 100;
      ben_d_step = ben_preset == "paper-ci" ? 5 : 1;
      cfg.instances_per_d = ben_preset == "paper-ci" ? 50 : 500;
      ben_algos = "posa,os01pt,hsa,sga";
      // Explicit flags still override the preset values.
      if (!ben_n->empty()) cfg.n_sources = ben_n->as<int>();
      if (!ben_m->empty()) cfg.n_dests = ben_m->as<int>();
      if (!ben_w->empty()) cfg.w_max = ben_w->as<long long>();
      if (!ben_dens->empty()) cfg.density = ben_dens->as<double>();
      if (!ben_from->empty()) ben_d_from = ben_from->as<long long>();
      if (!ben_to->empty()) ben_d_to = ben_to->as<long long>();
      if (!ben_step->empty()) ben_d_step = ben_step->as<long long>();
      if (!ben_reps->empty()) cfg.instances_per_d = ben_reps->as<int>();
      if (!ben_algos_opt->empty()) ben_algos = ben_algos_opt->as<std::string>();
    }
    if (ben_d_step < 1) throw CLI::ValidationError("--d-step", "must be at least 1");
    if (ben_d_from > ben_d_to) throw CLI::ValidationError("--d-from", "exceeds --d-to");
    cfg.d_values.clear();
    for (long long d = ben_d_from; d <= ben_d_to; d += ben_d_step) cfg.d_values.push_back(d);
    cfg.algorithms = parse_algos(ben_algos);
    cfg.seed = resolve_seed(!ben_seed_opt->empty(), ben_seed);
    const pbs::SweepReport report = pbs::run_sweep(cfg);
    write_output(ben_out, pbs::to_csv(report));
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
