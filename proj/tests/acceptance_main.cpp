// Runs the nine release criteria and prints one [PASS]/[FAIL] line each.
// Exits nonzero if any criterion fails. By default criteria 6-8 use the
// reduced sweep (d stepped by 5, 50 instances per d); --full switches them to
// the nominal preset (every d, 500 instances per d), which takes hours on a
// single core.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pbs/bench.hpp"
#include "pbs/instance.hpp"
#include "pbs/oracle.hpp"
#include "pbs/rational.hpp"
#include "pbs/rng.hpp"
#include "pbs/schedule.hpp"
#include "pbs/schedulers.hpp"

using namespace pbs;

namespace {

constexpr std::uint64_t kSuiteSeed = 42;

const Algorithm kAll[] = {Algorithm::Posa, Algorithm::Os01pt, Algorithm::Hsa,
                          Algorithm::Sga};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::string lap() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::ostringstream ss;
    ss << " (" << ms / 1000 << "." << (ms % 1000) / 100 << "s)";
    start = std::chrono::steady_clock::now();
    return ss.str();
  }
};

// Shared 1000-instance suite for criteria 1-4 and the schedule half of 9.
struct SuiteResult {
  int total = 0;
  int invalid = 0;          // validate failure or cost < L, any algorithm
  int posa_duration_off = 0;
  int os_rounds_off = 0;
  int hsa_identity_off = 0;
  std::string first_issue;
  // First replicates, kept for the determinism re-run.
  std::vector<std::string> base_instances;
  std::vector<std::string> base_schedules;
};

Instance suite_instance(SplitMix64& master, int i) {
  const int n = 1 + static_cast<int>(master.next_below(30));
  const int m = 1 + static_cast<int>(master.next_below(30));
  const double densities[] = {0.5, 0.9, 1.0};
  const double density = densities[i % 3];
  const Weight d = static_cast<Weight>(master.next_below(101));
  return generate_uniform(n, m, 120, density, d, master.next());
}

SuiteResult run_suite(int count, int keep) {
  SuiteResult res;
  SplitMix64 master(kSuiteSeed);
  for (int i = 0; i < count; ++i) {
    const Instance inst = suite_instance(master, i);
    const InstanceStats st = stats(inst);
    const bool complete = i % 3 == 2;
    if (i < keep) res.base_instances.push_back(serialize_instance(inst));

    Weight posa_cost = 0, os_cost = 0;
    for (const Algorithm a : kAll) {
      const SolveReport rep = solve(inst, a);
      if (i < keep) res.base_schedules.push_back(serialize_schedule(rep.schedule));
      const auto violation = validate(rep.schedule, inst);
      if (violation || rep.cost < st.lower_bound) {
        ++res.invalid;
        if (res.first_issue.empty()) {
          std::ostringstream ss;
          ss << rep.algorithm << " on instance " << i << ": "
             << (violation ? violation->message : "cost below the lower bound");
          res.first_issue = ss.str();
        }
      }
      switch (a) {
        case Algorithm::Posa:
          posa_cost = rep.cost;
          if (rep.total_duration != st.w_load) ++res.posa_duration_off;
          break;
        case Algorithm::Os01pt:
          os_cost = rep.cost;
          if (rep.n_rounds > st.delta || (complete && rep.n_rounds != st.delta))
            ++res.os_rounds_off;
          break;
        case Algorithm::Hsa:
          if (rep.cost != std::min(posa_cost, os_cost)) ++res.hsa_identity_off;
          break;
        case Algorithm::Sga:
          break;
      }
    }
    ++res.total;
  }
  return res;
}

// Criterion 5 bookkeeping.
struct OracleSuite {
  long long instances = 0;
  long long undercuts = 0;        // some algorithm beat the oracle
  long long ratio_violations = 0; // hsa above 3/2 of the optimum
  long long strict_gaps = 0;      // optimum strictly above W + d * delta
  Rational max_hsa_ratio = 0;
};

void oracle_check(const Instance& inst, OracleSuite& suite) {
  const OracleResult res = optimal_cost(inst);
  const InstanceStats st = stats(inst);
  ++suite.instances;
  if (res.optimal_cost > st.lower_bound) ++suite.strict_gaps;
  Weight hsa_cost = 0;
  for (const Algorithm a : kAll) {
    const SolveReport rep = solve(inst, a);
    if (Rational(rep.cost) < res.optimal_cost) ++suite.undercuts;
    if (a == Algorithm::Hsa) hsa_cost = rep.cost;
  }
  if (res.optimal_cost > 0) {
    const Rational ratio = Rational(hsa_cost) / res.optimal_cost;
    if (ratio > suite.max_hsa_ratio) suite.max_hsa_ratio = ratio;
    if (ratio > Rational(3, 2)) ++suite.ratio_violations;
  }
}

OracleSuite run_oracle_suite() {
  OracleSuite suite;
  // Every shape up to 2x2, every weight assignment over {0..4}, d 0..3.
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  for (const auto& [n, m] : shapes) {
    const int cells = n * m;
    std::vector<Weight> w(cells, 0);
    for (;;) {
      for (Weight d = 0; d <= 3; ++d) {
        Instance inst;
        inst.n_sources = n;
        inst.n_dests = m;
        inst.setup = d;
        inst.weights.assign(n, std::vector<Weight>(m, 0));
        for (int k = 0; k < cells; ++k) inst.weights[k / m][k % m] = w[k];
        oracle_check(inst, suite);
      }
      int k = 0;
      while (k < cells && w[k] == 4) w[k++] = 0;
      if (k == cells) break;
      ++w[k];
    }
  }
  // Plus random 3x3 draws under the oracle's edge cap.
  SplitMix64 rng(kSuiteSeed);
  for (int i = 0; i < 200; ++i) {
    const Instance inst = generate_uniform(3, 3, 4, 0.8, i % 4, rng.next());
    oracle_check(inst, suite);
  }
  return suite;
}

SweepConfig sweep_config(bool full) {
  SweepConfig cfg;  // 30x30, w_max 120, density 1.0, all four algorithms
  cfg.d_values.clear();
  for (Weight d = 0; d <= 100; d += full ? 1 : 5) cfg.d_values.push_back(d);
  cfg.instances_per_d = full ? 500 : 50;
  cfg.seed = kSuiteSeed;
  cfg.jobs = 1;
  return cfg;
}

std::string fmt(const Rational& x) { return format_fixed6(x); }

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--full") {
      full = true;
    } else {
      std::cerr << "usage: pbs_acceptance [--full]\n";
      return 2;
    }
  }

  int failures = 0;
  const auto report = [&](int id, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": "
              << detail << '\n';
    std::cout.flush();
    if (!pass) ++failures;
  };

  Timer timer;

  // Criteria 1-4 share one pass over the 1000-instance validity suite.
  const SuiteResult suite = run_suite(1000, 25);
  {
    const std::string took = timer.lap();
    std::ostringstream ss;
    ss << suite.total << " instances, 4 algorithms: ";
    if (suite.invalid == 0)
      ss << "all schedules valid with cost >= lower bound";
    else
      ss << suite.invalid << " failures, first: " << suite.first_issue;
    ss << took;
    report(1, suite.invalid == 0, ss.str());
  }
  report(2, suite.posa_duration_off == 0,
         suite.posa_duration_off == 0
             ? "posa transmits for exactly the max load on all 1000 instances"
             : "posa duration missed the max load on " +
                   std::to_string(suite.posa_duration_off) + " instances");
  report(3, suite.os_rounds_off == 0,
         suite.os_rounds_off == 0
             ? "os01pt rounds equal the max degree when complete, never exceed it"
             : "os01pt round count off on " + std::to_string(suite.os_rounds_off) +
                   " instances");
  report(4, suite.hsa_identity_off == 0,
         suite.hsa_identity_off == 0
             ? "hsa cost equals min(posa, os01pt) on all 1000 instances"
             : "hsa identity broken on " + std::to_string(suite.hsa_identity_off) +
                   " instances");

  // Criterion 5: exhaustive tiny suite against the oracle.
  {
    timer.lap();
    const OracleSuite osuite = run_oracle_suite();
    const std::string took = timer.lap();
    const bool pass = osuite.undercuts == 0 && osuite.ratio_violations == 0 &&
                      osuite.strict_gaps > 0;
    std::ostringstream ss;
    ss << osuite.instances << " instances, max hsa/optimum = "
       << fmt(osuite.max_hsa_ratio) << ", optimum above the naive bound on "
       << osuite.strict_gaps << " instances";
    if (osuite.undercuts > 0) ss << ", " << osuite.undercuts << " oracle undercuts";
    if (osuite.ratio_violations > 0)
      ss << ", " << osuite.ratio_violations << " instances above 3/2";
    ss << took;
    report(5, pass, ss.str());
  }

  // Criteria 6-8 share one sweep.
  const SweepConfig cfg = sweep_config(full);
  const std::string preset_note =
      full ? "d 0..100 step 1, 500 per d" : "d 0..100 step 5, 50 per d";
  timer.lap();
  const SweepReport sweep = run_sweep(cfg);
  const std::string sweep_took = timer.lap();
  {
    std::optional<Weight> cross = crossover(sweep);
    std::string grid_note = preset_note;
    if (!full) {
      // The step-5 grid cannot see a crossover below d=5. The verdict is
      // defined on a step-1 grid, so probe the skipped low-d region at the
      // same replication before calling it.
      SweepConfig probe = cfg;
      probe.d_values = {1, 2, 3, 4};
      probe.algorithms = {Algorithm::Posa, Algorithm::Os01pt};
      const std::optional<Weight> fine = crossover(run_sweep(probe));
      if (fine && (!cross || *fine < *cross)) cross = fine;
      grid_note += ", step-1 probe of d 1..4";
    }
    std::ostringstream ss;
    if (cross)
      ss << "posa/os01pt mean-ratio crossover at d=" << *cross;
    else
      ss << "no posa/os01pt mean-ratio crossover in range";
    ss << " (target [5, 15]; " << grid_note << ")" << sweep_took;
    report(6, cross && *cross >= 5 && *cross <= 15, ss.str());
  }
  {
    Rational worst = 0;
    Weight worst_d = 0;
    for (const Weight d : cfg.d_values) {
      const Rational r = sweep.row(d, "hsa").worst_ratio;
      if (r > worst) {
        worst = r;
        worst_d = d;
      }
    }
    std::ostringstream ss;
    ss << "hsa worst ratio " << fmt(worst) << " at d=" << worst_d
       << " (limit 1.35)";
    report(7, worst <= Rational(27, 20), ss.str());
  }
  {
    bool never_worse = true;
    Weight bad_d = 0;
    for (const Weight d : cfg.d_values)
      if (sweep.row(d, "hsa").mean_ratio > sweep.row(d, "sga").mean_ratio) {
        never_worse = false;
        bad_d = d;
        break;
      }
    const GapReport gaps = compare(sweep, "hsa", "sga");
    std::ostringstream ss;
    if (never_worse)
      ss << "hsa mean ratio never above sga, max relative gap "
         << fmt(gaps.max_gap) << " (floor 0.02)";
    else
      ss << "hsa mean ratio above sga at d=" << bad_d;
    report(8, never_worse && gaps.max_gap >= Rational(1, 50), ss.str());
  }

  // Criterion 9: byte-identical reruns, parallel and serial.
  {
    timer.lap();
    SweepConfig parallel = cfg;
    parallel.jobs = 4;
    const bool csv_same = to_csv(run_sweep(parallel)) == to_csv(sweep);

    SplitMix64 master(kSuiteSeed);
    bool replay_same = true;
    for (int i = 0; i < 25 && replay_same; ++i) {
      const Instance inst = suite_instance(master, i);
      if (serialize_instance(inst) != suite.base_instances[i]) replay_same = false;
      for (int a = 0; a < 4 && replay_same; ++a)
        if (serialize_schedule(solve(inst, kAll[a]).schedule) !=
            suite.base_schedules[static_cast<std::size_t>(i) * 4 + a])
          replay_same = false;
    }
    const std::string took = timer.lap();
    std::ostringstream ss;
    if (csv_same && replay_same)
      ss << "sweep CSV identical at jobs 1 and 4, instances and schedules "
            "identical on replay";
    else if (!csv_same)
      ss << "sweep CSV differs between jobs 1 and 4";
    else
      ss << "replayed instances or schedules differ";
    ss << took;
    report(9, csv_same && replay_same, ss.str());
  }

  std::cout << (9 - failures) << "/9 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
