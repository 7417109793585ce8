#include "pbs/schedule.hpp"

#include <algorithm>

namespace pbs {

Weight Schedule::total_duration() const {
  Weight total = 0;
  for (const Round& r : rounds) total += r.duration;
  return total;
}

Weight cost(const Schedule& s, Weight setup) {
  return s.total_duration() + setup * static_cast<Weight>(s.rounds.size());
}

Schedule normalize(Schedule s) {
  Schedule out;
  for (Round& r : s.rounds) {
    if (r.matching.pairs.empty() || r.duration <= 0) continue;
    if (!out.rounds.empty() && out.rounds.back().matching == r.matching)
      out.rounds.back().duration += r.duration;
    else
      out.rounds.push_back(std::move(r));
  }
  return out;
}

std::optional<Violation> validate(const Schedule& s, const Instance& inst) {
  const auto fail = [](Violation::Kind kind, int round, int src, int dst, std::string msg) {
    return Violation{kind, round, src, dst, std::move(msg)};
  };

  std::vector<std::vector<Weight>> covered(inst.n_sources,
                                           std::vector<Weight>(inst.n_dests, 0));
  for (int k = 0; k < s.n_rounds(); ++k) {
    const Round& round = s.rounds[k];
    if (round.duration < 1)
      return fail(Violation::Kind::BadDuration, k, -1, -1,
                  "round " + std::to_string(k) + ": duration " +
                      std::to_string(round.duration) + " is below 1");
    std::vector<char> row_used(inst.n_sources, 0), col_used(inst.n_dests, 0);
    for (const auto& [r, c] : round.matching.pairs) {
      if (r < 0 || r >= inst.n_sources || c < 0 || c >= inst.n_dests ||
          inst.weights[r][c] <= 0)
        return fail(Violation::Kind::NotAnEdge, k, r, c,
                    "round " + std::to_string(k) + ": (" + std::to_string(r) + ", " +
                        std::to_string(c) + ") is not an edge of the instance");
      if (row_used[r] || col_used[c])
        return fail(Violation::Kind::NotAMatching, k, r, c,
                    "round " + std::to_string(k) + ": (" + std::to_string(r) + ", " +
                        std::to_string(c) + ") reuses a source or destination");
      row_used[r] = 1;
      col_used[c] = 1;
      covered[r][c] += round.duration;
    }
  }

  for (int r = 0; r < inst.n_sources; ++r)
    for (int c = 0; c < inst.n_dests; ++c)
      if (inst.weights[r][c] > 0 && covered[r][c] < inst.weights[r][c])
        return fail(Violation::Kind::Uncovered, -1, r, c,
                    "edge (" + std::to_string(r) + ", " + std::to_string(c) + ") covered " +
                        std::to_string(covered[r][c]) + " of " +
                        std::to_string(inst.weights[r][c]));
  return std::nullopt;
}

std::string serialize_schedule(const Schedule& s) {
  std::string out = std::to_string(s.n_rounds());
  out += '\n';
  for (const Round& round : s.rounds) {
    out += std::to_string(round.duration);
    out += ' ';
    out += std::to_string(round.matching.pairs.size());
    for (const auto& [r, c] : round.matching.pairs) {
      out += ' ';
      out += std::to_string(r + 1);
      out += ' ';
      out += std::to_string(c + 1);
    }
    out += '\n';
  }
  return out;
}

namespace {

// Same canonical-token rules as the instance format.
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

}  // namespace

Schedule parse_schedule(const std::string& text) {
  if (text.empty()) throw ParseError(1, "missing round count");
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

  Weight n_rounds = 0;
  if (!parse_canonical(lines[0], kMaxDim * static_cast<Weight>(kMaxDim), &n_rounds))
    throw ParseError(1, "bad round count '" + lines[0] + "'");
  if (static_cast<Weight>(lines.size()) != 1 + n_rounds)
    throw ParseError(static_cast<int>(lines.size()),
                     "expected " + std::to_string(n_rounds) + " round lines");

  Schedule s;
  s.rounds.reserve(static_cast<std::size_t>(n_rounds));
  for (Weight k = 0; k < n_rounds; ++k) {
    const int line_no = static_cast<int>(k) + 2;
    std::vector<std::string> fields;
    {
      std::size_t pos = 0;
      const std::string& line = lines[static_cast<std::size_t>(k) + 1];
      for (;;) {
        const std::size_t sp = line.find(' ', pos);
        if (sp == std::string::npos) {
          fields.push_back(line.substr(pos));
          break;
        }
        fields.push_back(line.substr(pos, sp - pos));
        pos = sp + 1;
      }
    }
    if (fields.size() < 2) throw ParseError(line_no, "round line needs duration and pair count");
    Round round;
    if (!parse_canonical(fields[0], kMaxWeight * static_cast<Weight>(kMaxDim), &round.duration) ||
        round.duration < 1)
      throw ParseError(line_no, "bad duration '" + fields[0] + "'");
    Weight pair_count = 0;
    if (!parse_canonical(fields[1], kMaxDim, &pair_count) || pair_count < 1)
      throw ParseError(line_no, "bad pair count '" + fields[1] + "'");
    if (static_cast<Weight>(fields.size()) != 2 + 2 * pair_count)
      throw ParseError(line_no, "expected " + std::to_string(2 * pair_count) +
                                    " indices after the pair count");
    int prev_row = 0;
    for (Weight i = 0; i < pair_count; ++i) {
      Weight r = 0, c = 0;
      if (!parse_canonical(fields[2 + 2 * static_cast<std::size_t>(i)], kMaxDim, &r) || r < 1)
        throw ParseError(line_no, "bad source index");
      if (!parse_canonical(fields[3 + 2 * static_cast<std::size_t>(i)], kMaxDim, &c) || c < 1)
        throw ParseError(line_no, "bad destination index");
      if (static_cast<int>(r) <= prev_row)
        throw ParseError(line_no, "pairs must be sorted by source index");
      prev_row = static_cast<int>(r);
      round.matching.pairs.emplace_back(static_cast<int>(r) - 1, static_cast<int>(c) - 1);
    }
    s.rounds.push_back(std::move(round));
  }
  return s;
}

}  // namespace pbs
