#pragma once

#include <stdexcept>
#include <vector>

#include "pbs/instance.hpp"
#include "pbs/rational.hpp"
#include "pbs/schedule.hpp"

namespace pbs {

struct OracleSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Rational optimal_cost;          // exact minimum of duration + setup * rounds
  Schedule witness;               // validates and costs exactly optimal_cost
  long long matchings_considered = 0;
};

// Every nonempty matching of the instance's real edges, in a fixed order:
// depth-first over edges sorted by (source, dest), each matching emitted when
// its last edge joins. Throws OracleSizeError when the instance has more than
// max_edges real edges.
std::vector<Matching> enumerate_matchings(const Instance& inst, int max_edges = 12);

// Exhaustive optimum for tiny instances. Considers every way to choose a set
// of matchings as rounds; for each covering set the cheapest durations are
// the optimum of the covering program
//     minimize sum t_M   subject to   sum_{M containing e} t_M >= w(e), t >= 0
// solved in exact rational arithmetic, and the candidate cost adds one setup
// charge per chosen matching. Intended for instances within max_edges; the
// same size guard as enumerate_matchings applies.
OracleResult optimal_cost(const Instance& inst, int max_edges = 12);

}  // namespace pbs
