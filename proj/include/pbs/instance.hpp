#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbs {

using Weight = long long;

// Limits accepted by parsing and generation. They keep every derived quantity
// (loads, costs, matching potentials) comfortably inside 64-bit arithmetic.
inline constexpr int kMaxDim = 10000;
inline constexpr Weight kMaxWeight = 1'000'000'000;
inline constexpr Weight kMaxSetup = 1'000'000'000;

// A transmission demand: weights[r][c] > 0 means source r holds that much
// traffic for destination c, zero means no demand. setup is the fixed
// reconfiguration cost charged once per round of any schedule.
struct Instance {
  int n_sources = 0;
  int n_dests = 0;
  std::vector<std::vector<Weight>> weights;
  Weight setup = 0;

  Weight at(int r, int c) const { return weights[r][c]; }
  bool has_edge(int r, int c) const { return weights[r][c] > 0; }

  int edge_count() const {
    int k = 0;
    for (const auto& row : weights)
      for (Weight w : row)
        if (w > 0) ++k;
    return k;
  }

  bool all_zero() const { return edge_count() == 0; }
};

struct InstanceStats {
  int delta = 0;          // max number of demands at any single node
  Weight w_load = 0;      // max total demand at any single node
  Weight lower_bound = 0; // w_load + setup * delta
};

InstanceStats stats(const Instance& inst);

// Random instance: every cell is present independently with probability
// `density`, and a present cell draws its weight uniformly from 1..w_max.
// Cells are visited row-major; each present cell consumes one presence draw
// and one weight draw from a SplitMix64 stream seeded with `seed` (absent
// cells consume only the presence draw).
Instance generate_uniform(int n_sources, int n_dests, Weight w_max, double density,
                          Weight setup, std::uint64_t seed);

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Text format, newline-terminated throughout:
//   n_sources n_dests setup
//   w w ... w        (n_sources rows of n_dests base-10 weights)
// Single spaces, no trailing whitespace, canonical decimal integers.
// parse_instance throws ParseError naming the first offending line;
// serialize_instance emits the unique canonical text, so the two functions
// are inverses on valid data.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

}  // namespace pbs
