#include "pbs/instance.hpp"

#include <algorithm>
#include <stdexcept>

#include "pbs/rng.hpp"

namespace pbs {

InstanceStats stats(const Instance& inst) {
  InstanceStats st;
  std::vector<Weight> col_load(inst.n_dests, 0);
  std::vector<int> col_deg(inst.n_dests, 0);
  for (int r = 0; r < inst.n_sources; ++r) {
    Weight row_load = 0;
    int row_deg = 0;
    for (int c = 0; c < inst.n_dests; ++c) {
      const Weight w = inst.weights[r][c];
      if (w > 0) {
        row_load += w;
        ++row_deg;
        col_load[c] += w;
        ++col_deg[c];
      }
    }
    st.w_load = std::max(st.w_load, row_load);
    st.delta = std::max(st.delta, row_deg);
  }
  for (int c = 0; c < inst.n_dests; ++c) {
    st.w_load = std::max(st.w_load, col_load[c]);
    st.delta = std::max(st.delta, col_deg[c]);
  }
  st.lower_bound = st.w_load + inst.setup * st.delta;
  return st;
}

Instance generate_uniform(int n_sources, int n_dests, Weight w_max, double density,
                          Weight setup, std::uint64_t seed) {
  if (n_sources < 1 || n_sources > kMaxDim || n_dests < 1 || n_dests > kMaxDim)
    throw std::invalid_argument("generate_uniform: dimensions out of range");
  if (w_max < 1 || w_max > kMaxWeight)
    throw std::invalid_argument("generate_uniform: w_max out of range");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("generate_uniform: density must be in (0, 1]");
  if (setup < 0 || setup > kMaxSetup)
    throw std::invalid_argument("generate_uniform: setup out of range");

  // Presence is decided on 53 bits so the threshold density * 2^53 is exact
  // for density 1.0 and deterministic for every double in between.
  const std::uint64_t kScale = 1ull << 53;
  const std::uint64_t threshold =
      density >= 1.0 ? kScale : static_cast<std::uint64_t>(density * static_cast<double>(kScale));

  Instance inst;
  inst.n_sources = n_sources;
  inst.n_dests = n_dests;
  inst.setup = setup;
  inst.weights.assign(n_sources, std::vector<Weight>(n_dests, 0));

  SplitMix64 rng(seed);
  for (int r = 0; r < n_sources; ++r)
    for (int c = 0; c < n_dests; ++c) {
      const bool present = (rng.next() >> 11) < threshold;
      if (present)
        inst.weights[r][c] = 1 + static_cast<Weight>(rng.next_below(static_cast<std::uint64_t>(w_max)));
    }
  return inst;
}

namespace {

// Canonical base-10 unsigned integer: digits only, no leading zero unless the
// token is exactly "0". Returns false on malformed or out-of-range input.
bool parse_canonical(const std::string& tok, Weight limit, Weight* out) {
  if (tok.empty() || tok.size() > 19) return false;
  if (tok.size() > 1 && tok[0] == '0') return false;
  Weight v = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9') return false;
    v = v * 10 + (ch - '0');
  }
  if (v > limit) return false;
  *out = v;
  return true;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t sp = line.find(' ', start);
    if (sp == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  if (text.empty()) throw ParseError(1, "missing header");
  if (text.back() != '\n') {
    const int last = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    throw ParseError(last, "missing final newline");
  }

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }

  const auto header = split_fields(lines[0]);
  if (header.size() != 3) throw ParseError(1, "header must be: n_sources n_dests setup");
  Weight n = 0, m = 0, d = 0;
  if (!parse_canonical(header[0], kMaxDim, &n) || n < 1)
    throw ParseError(1, "bad source count '" + header[0] + "'");
  if (!parse_canonical(header[1], kMaxDim, &m) || m < 1)
    throw ParseError(1, "bad destination count '" + header[1] + "'");
  if (!parse_canonical(header[2], kMaxSetup, &d))
    throw ParseError(1, "bad setup cost '" + header[2] + "'");

  Instance inst;
  inst.n_sources = static_cast<int>(n);
  inst.n_dests = static_cast<int>(m);
  inst.setup = d;
  inst.weights.assign(inst.n_sources, {});

  if (static_cast<int>(lines.size()) < 1 + inst.n_sources)
    throw ParseError(static_cast<int>(lines.size()) + 1, "missing weight row");
  if (static_cast<int>(lines.size()) > 1 + inst.n_sources)
    throw ParseError(2 + inst.n_sources, "unexpected content after last row");

  for (int r = 0; r < inst.n_sources; ++r) {
    const int line_no = r + 2;
    const auto fields = split_fields(lines[r + 1]);
    if (static_cast<int>(fields.size()) != inst.n_dests)
      throw ParseError(line_no, "expected " + std::to_string(inst.n_dests) + " weights, got " +
                                    std::to_string(fields.size()));
    auto& row = inst.weights[r];
    row.resize(inst.n_dests);
    for (int c = 0; c < inst.n_dests; ++c) {
      if (!fields[c].empty() && fields[c][0] == '-')
        throw ParseError(line_no, "negative weight '" + fields[c] + "'");
      if (!parse_canonical(fields[c], kMaxWeight, &row[c]))
        throw ParseError(line_no, "bad weight '" + fields[c] + "'");
    }
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::string out;
  out += std::to_string(inst.n_sources);
  out += ' ';
  out += std::to_string(inst.n_dests);
  out += ' ';
  out += std::to_string(inst.setup);
  out += '\n';
  for (int r = 0; r < inst.n_sources; ++r) {
    for (int c = 0; c < inst.n_dests; ++c) {
      if (c) out += ' ';
      out += std::to_string(inst.weights[r][c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace pbs
