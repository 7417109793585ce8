#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbs/instance.hpp"
#include "pbs/rational.hpp"
#include "pbs/schedulers.hpp"

namespace pbs {

struct SweepConfig {
  int n_sources = 30;
  int n_dests = 30;
  Weight w_max = 120;
  double density = 1.0;
  std::vector<Weight> d_values;    // strictly increasing, nonempty
  int instances_per_d = 500;
  std::uint64_t seed = 42;
  std::vector<Algorithm> algorithms = {Algorithm::Posa, Algorithm::Os01pt,
                                       Algorithm::Hsa, Algorithm::Sga};
  int jobs = 1;
  // When set, replicate i uses the same generator stream at every d (only the
  // setup value changes), instead of an independent stream per (d, i).
  bool reuse_instances = false;
};

struct SweepRow {
  Weight d = 0;
  std::string algorithm;
  int n_instances = 0;
  Rational mean_ratio;   // mean over replicates of cost / lower_bound
  Rational worst_ratio;
  Rational mean_cost;
  Rational mean_rounds;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepRow> rows;  // sorted by d, then algorithm name

  bool has_algorithm(const std::string& algo) const;
  const SweepRow& row(Weight d, const std::string& algo) const;  // throws if absent
};

// Runs every configured algorithm on the same generated instances (replicate
// i at setup d draws from the stream derive_seed(seed, d, i)), validates
// every schedule, and aggregates exact ratio statistics. Aborts with a
// std::runtime_error naming the (d, replicate, algorithm) cell if a schedule
// fails validation or undercuts the lower bound. jobs > 1 distributes
// replicates across threads; the report is identical for any jobs value.
SweepReport run_sweep(const SweepConfig& cfg);

// Smallest d at which os01pt's mean ratio is at most posa's, or nullopt when
// that never happens in the swept range. Throws if either algorithm is
// missing from the report.
std::optional<Weight> crossover(const SweepReport& report);

struct GapRow {
  Weight d = 0;
  Rational gap;  // (mean_other - mean_baseline) / mean_baseline
};

struct GapReport {
  std::string baseline;
  std::string other;
  std::vector<GapRow> rows;  // one per swept d, ascending
  Rational max_gap;
};

GapReport compare(const SweepReport& report, const std::string& baseline,
                  const std::string& other);

// CSV with header d,algorithm,n_instances,mean_ratio,worst_ratio,mean_cost,
// mean_rounds; rows sorted by d then algorithm name, LF line endings, all
// rationals rendered by format_fixed6.
std::string to_csv(const SweepReport& report);

}  // namespace pbs
