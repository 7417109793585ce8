#include "pbs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pbs/rng.hpp"
#include "pbs/schedule.hpp"

namespace pbs {

namespace {

void check_config(const SweepConfig& cfg) {
  auto bad = [](const std::string& what) { throw std::invalid_argument("sweep config: " + what); };
  if (cfg.n_sources < 1 || cfg.n_sources > kMaxDim) bad("n_sources out of range");
  if (cfg.n_dests < 1 || cfg.n_dests > kMaxDim) bad("n_dests out of range");
  if (cfg.w_max < 1 || cfg.w_max > kMaxWeight) bad("w_max out of range");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0)) bad("density out of range");
  if (cfg.d_values.empty()) bad("d_values empty");
  for (std::size_t i = 0; i < cfg.d_values.size(); ++i) {
    if (cfg.d_values[i] < 0 || cfg.d_values[i] > kMaxSetup) bad("d value out of range");
    if (i > 0 && cfg.d_values[i] <= cfg.d_values[i - 1]) bad("d_values not strictly increasing");
  }
  if (cfg.instances_per_d < 1) bad("instances_per_d must be at least 1");
  if (cfg.algorithms.empty()) bad("no algorithms selected");
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.algorithms.size(); ++j)
      if (cfg.algorithms[i] == cfg.algorithms[j]) bad("duplicate algorithm");
  if (cfg.jobs < 1) bad("jobs must be at least 1");
}

struct Cell {
  Weight cost = 0;
  Weight lower_bound = 0;
  int rounds = 0;
};

}  // namespace

bool SweepReport::has_algorithm(const std::string& algo) const {
  for (const SweepRow& r : rows)
    if (r.algorithm == algo) return true;
  return false;
}

const SweepRow& SweepReport::row(Weight d, const std::string& algo) const {
  for (const SweepRow& r : rows)
    if (r.d == d && r.algorithm == algo) return r;
  throw std::out_of_range("sweep report has no row for d=" + std::to_string(d) +
                          " algorithm=" + algo);
}

SweepReport run_sweep(const SweepConfig& cfg) {
  check_config(cfg);

  const int n_d = static_cast<int>(cfg.d_values.size());
  const int n_algos = static_cast<int>(cfg.algorithms.size());
  const long long total = static_cast<long long>(n_d) * cfg.instances_per_d;
  std::vector<Cell> cells(static_cast<std::size_t>(total) * n_algos);

  // Each task owns a disjoint slice of `cells`, so workers never contend; the
  // later aggregation pass reads the cells in a fixed order, which makes the
  // report independent of how tasks interleave across threads.
  std::atomic<long long> next_task{0};
  std::mutex err_mu;
  std::exception_ptr first_err;

  auto worker = [&]() {
    try {
      for (;;) {
        const long long task = next_task.fetch_add(1);
        if (task >= total) return;
        {
          std::lock_guard<std::mutex> lock(err_mu);
          if (first_err) return;
        }
        const int d_idx = static_cast<int>(task / cfg.instances_per_d);
        const int i = static_cast<int>(task % cfg.instances_per_d);
        const Weight d = cfg.d_values[d_idx];
        const std::uint64_t stream =
            cfg.reuse_instances
                ? derive_seed(cfg.seed, 0, static_cast<std::uint64_t>(i))
                : derive_seed(cfg.seed, static_cast<std::uint64_t>(d),
                              static_cast<std::uint64_t>(i));
        const Instance inst = generate_uniform(cfg.n_sources, cfg.n_dests,
                                               cfg.w_max, cfg.density, d, stream);
        for (int a = 0; a < n_algos; ++a) {
          const SolveReport rep = solve(inst, cfg.algorithms[a]);
          const auto cell_error = [&](const std::string& what) {
            throw std::runtime_error("sweep: " + what + " at d=" + std::to_string(d) +
                                     " replicate=" + std::to_string(i) +
                                     " algorithm=" + rep.algorithm);
          };
          if (const auto v = validate(rep.schedule, inst))
            cell_error("schedule failed validation (" + v->message + ")");
          if (rep.cost < rep.lower_bound) cell_error("cost below lower bound");
          Cell& cell = cells[static_cast<std::size_t>(task) * n_algos + a];
          cell.cost = rep.cost;
          cell.lower_bound = rep.lower_bound;
          cell.rounds = rep.n_rounds;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!first_err) first_err = std::current_exception();
    }
  };

  const int n_threads = static_cast<int>(std::min<long long>(cfg.jobs, total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_err) std::rethrow_exception(first_err);

  std::vector<int> algo_order(n_algos);
  for (int a = 0; a < n_algos; ++a) algo_order[a] = a;
  std::sort(algo_order.begin(), algo_order.end(), [&](int x, int y) {
    return std::string_view(algorithm_name(cfg.algorithms[x])) <
           std::string_view(algorithm_name(cfg.algorithms[y]));
  });

  SweepReport report;
  report.config = cfg;
  for (int d_idx = 0; d_idx < n_d; ++d_idx) {
    for (const int a : algo_order) {
      SweepRow row;
      row.d = cfg.d_values[d_idx];
      row.algorithm = algorithm_name(cfg.algorithms[a]);
      row.n_instances = cfg.instances_per_d;
      Rational sum_ratio = 0, sum_cost = 0, sum_rounds = 0;
      for (int i = 0; i < cfg.instances_per_d; ++i) {
        const Cell& cell =
            cells[(static_cast<std::size_t>(d_idx) * cfg.instances_per_d + i) * n_algos + a];
        const Rational ratio = cell.lower_bound > 0
                                   ? Rational(cell.cost) / cell.lower_bound
                                   : Rational(1);
        sum_ratio += ratio;
        sum_cost += cell.cost;
        sum_rounds += cell.rounds;
        if (i == 0 || ratio > row.worst_ratio) row.worst_ratio = ratio;
      }
      row.mean_ratio = sum_ratio / cfg.instances_per_d;
      row.mean_cost = sum_cost / cfg.instances_per_d;
      row.mean_rounds = sum_rounds / cfg.instances_per_d;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::optional<Weight> crossover(const SweepReport& report) {
  if (!report.has_algorithm("posa") || !report.has_algorithm("os01pt"))
    throw std::invalid_argument("crossover: report must contain posa and os01pt");
  for (const Weight d : report.config.d_values)
    if (report.row(d, "os01pt").mean_ratio <= report.row(d, "posa").mean_ratio)
      return d;
  return std::nullopt;
}

GapReport compare(const SweepReport& report, const std::string& baseline,
                  const std::string& other) {
  if (!report.has_algorithm(baseline) || !report.has_algorithm(other))
    throw std::invalid_argument("compare: report must contain both algorithms");
  GapReport out;
  out.baseline = baseline;
  out.other = other;
  for (const Weight d : report.config.d_values) {
    const Rational base = report.row(d, baseline).mean_ratio;
    GapRow row;
    row.d = d;
    row.gap = (report.row(d, other).mean_ratio - base) / base;
    if (out.rows.empty() || row.gap > out.max_gap) out.max_gap = row.gap;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string to_csv(const SweepReport& report) {
  std::string out = "d,algorithm,n_instances,mean_ratio,worst_ratio,mean_cost,mean_rounds\n";
  for (const SweepRow& r : report.rows) {
    out += std::to_string(r.d);
    out += ',';
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.n_instances);
    out += ',';
    out += format_fixed6(r.mean_ratio);
    out += ',';
    out += format_fixed6(r.worst_ratio);
    out += ',';
    out += format_fixed6(r.mean_cost);
    out += ',';
    out += format_fixed6(r.mean_rounds);
    out += '\n';
  }
  return out;
}

}  // namespace pbs
