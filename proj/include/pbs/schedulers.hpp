#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pbs/instance.hpp"
#include "pbs/schedule.hpp"

namespace pbs {

struct SolveReport {
  std::string algorithm;
  Schedule schedule;
  Weight cost = 0;
  int n_rounds = 0;
  Weight total_duration = 0;
  Weight lower_bound = 0;

  // Exact ratio cost / lower_bound as a reduced fraction; {cost, 1} would be
  // meaningless for all-zero instances, so lower_bound 0 reports 1/1 (the
  // cost is 0 there as well).
  std::pair<Weight, Weight> ratio_to_lower_bound() const;
};

// Load-saturating scheduler: pads the demand to a square matrix whose rows
// and columns all sum to the max load W, then repeatedly extracts a perfect
// matching of the remaining support (maximizing remaining real weight) and
// runs it for the minimum remaining entry on the matching. Total duration is
// exactly W.
SolveReport posa(const Instance& inst);

// Degree-regular scheduler: raises the demand to a Delta-regular multiplicity
// matrix, then peels exactly Delta perfect matchings (maximizing remaining
// real weight); each edge transmits fully in its first live round, so a round
// lasts the maximum remaining weight it carries. At most Delta rounds.
SolveReport os01pt(const Instance& inst);

// Runs posa and os01pt and keeps the cheaper schedule; posa wins ties.
SolveReport hsa(const Instance& inst);

// Setup-threshold variant of hsa: runs only os01pt when the instance setup is
// at least `threshold`, only posa otherwise.
SolveReport hsa_threshold(const Instance& inst, Weight threshold = 9);

// Split-graph scheduler: edges with weight >= setup are scheduled by the posa
// procedure, the remaining light edges by the os01pt procedure, and the two
// schedules run back to back (heavy first). setup 0 sends everything through
// the posa half.
SolveReport sga(const Instance& inst);

enum class Algorithm { Posa, Os01pt, Hsa, Sga };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);
SolveReport solve(const Instance& inst, Algorithm a);

}  // namespace pbs
