#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "pbs/instance.hpp"

namespace pbs {

// A set of (source, dest) pairs using each source and each destination at
// most once. Pairs are kept sorted by source index.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  bool operator==(const Matching&) const = default;
};

// Square multiplicity matrix whose rows and columns all sum to `target`.
// mult[r][c] counts how many transmission slots cell (r, c) gets.
struct DegreeMatrix {
  int size = 0;
  int target = 0;
  std::vector<std::vector<int>> mult;
};

// Square padding of a demand matrix: `real` carries the original weights
// (zero in padded rows/columns), `slack` is the nonnegative filler that
// brings every row and column of real + slack up to `target_load`.
struct SaturatedMatrix {
  int size = 0;
  Weight target_load = 0;
  std::vector<std::vector<Weight>> real;
  std::vector<std::vector<Weight>> slack;
};

struct NoPerfectMatching : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Perfect matching over the cells where mask is true, maximizing the sum of
// `weights` over matched cells. Among equal-sum matchings the result is the
// lexicographically smallest source->dest assignment (smallest destination
// for source 0, then for source 1, and so on). Throws NoPerfectMatching when
// the mask admits no perfect matching. weights must be square, nonnegative,
// and the same shape as mask.
Matching max_weight_perfect_matching(const std::vector<std::vector<Weight>>& weights,
                                     const std::vector<std::vector<char>>& mask);

// Pads the instance to a square grid and raises every row and column degree
// to the instance's max degree: each real edge keeps multiplicity >= 1 and
// filler slots are assigned by repeatedly pairing the lowest-indexed
// deficient row with the lowest-indexed deficient column. Requires at least
// one edge.
DegreeMatrix regularize(const Instance& inst);

// Pads the instance to a square grid and adds slack until every row and
// column of real + slack sums to the instance's max load, pairing deficient
// rows and columns lowest-index first. Requires at least one edge.
SaturatedMatrix saturate_loads(const Instance& inst);

}  // namespace pbs
