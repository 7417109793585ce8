#pragma once

#include <optional>
#include <string>

#include "pbs/instance.hpp"
#include "pbs/matching.hpp"

namespace pbs {

// One transmission phase: the listed demands transmit simultaneously for
// `duration` time units. Pairs must reference real edges of the instance the
// round is scheduled for.
struct Round {
  Matching matching;
  Weight duration = 0;
};

struct Schedule {
  std::vector<Round> rounds;

  int n_rounds() const { return static_cast<int>(rounds.size()); }
  Weight total_duration() const;
};

// Total transmission time plus one setup charge per round.
Weight cost(const Schedule& s, Weight setup);

// Canonical form: rounds with an empty matching or zero duration are dropped
// and adjacent rounds with identical matchings are merged into one round with
// the summed duration.
Schedule normalize(Schedule s);

struct Violation {
  enum class Kind { BadDuration, NotAMatching, NotAnEdge, Uncovered };
  Kind kind;
  int round_index = -1;  // -1 for coverage violations
  int source = -1;
  int dest = -1;
  std::string message;
};

// Checks, in order: every round has duration >= 1, is a matching, and
// references only real edges; then every real edge accumulates at least its
// weight across the rounds listing it. Returns the first violation found, or
// nullopt for a valid schedule. The empty schedule is valid exactly for
// all-zero instances.
std::optional<Violation> validate(const Schedule& s, const Instance& inst);

// Text format, newline-terminated, 1-based indices:
//   N
//   t k r1 c1 r2 c2 ... rk ck     (one line per round, pairs sorted by r)
// serialize_schedule emits the canonical text; parse_schedule accepts only
// canonical text and throws ParseError otherwise.
std::string serialize_schedule(const Schedule& s);
Schedule parse_schedule(const std::string& text);

}  // namespace pbs
