#include "pbs/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "pbs/schedulers.hpp"

namespace pbs {

namespace {

struct Edge {
  int r, c;
  Weight w;
};

std::vector<Edge> collect_edges(const Instance& inst) {
  std::vector<Edge> edges;
  for (int r = 0; r < inst.n_sources; ++r)
    for (int c = 0; c < inst.n_dests; ++c)
      if (inst.weights[r][c] > 0) edges.push_back({r, c, inst.weights[r][c]});
  return edges;
}

// conflicts[e] has bit f set when edges e and f share an endpoint (e itself
// included), so a set of edges is a matching exactly when no member's conflict
// mask meets the rest of the set.
std::vector<std::uint32_t> conflict_masks(const std::vector<Edge>& edges) {
  const int n = static_cast<int>(edges.size());
  std::vector<std::uint32_t> conflicts(n, 0);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (edges[e].r == edges[f].r || edges[e].c == edges[f].c)
        conflicts[e] |= std::uint32_t{1} << f;
  return conflicts;
}

void dfs_matchings(const std::vector<std::uint32_t>& conflicts, int first,
                   std::uint32_t current, std::vector<std::uint32_t>& out) {
  const int n = static_cast<int>(conflicts.size());
  for (int e = first; e < n; ++e) {
    if (conflicts[e] & current) continue;
    out.push_back(current | (std::uint32_t{1} << e));
    dfs_matchings(conflicts, e + 1, current | (std::uint32_t{1} << e), out);
  }
}

std::vector<Edge> checked_edges(const Instance& inst, int max_edges) {
  std::vector<Edge> edges = collect_edges(inst);
  const int cap = std::min(max_edges, 31);
  if (static_cast<int>(edges.size()) > cap)
    throw OracleSizeError("instance has " + std::to_string(edges.size()) +
                          " edges, oracle limit is " + std::to_string(cap));
  return edges;
}

// Exact-rational simplex for   max w.y  s.t.  sum_{e in M} y_e <= 1 per chosen
// matching M, y >= 0.  By duality the optimum equals the covering program's
// minimum total duration, and the durations themselves are the prices of the
// <=-constraints, read from the basis under the slack columns.  Bland's rule
// keeps the pivoting finite.
struct CoverLp {
  Rational value;
  std::vector<Rational> durations;
};

CoverLp solve_cover_lp(const std::vector<std::uint32_t>& rows,
                       const std::vector<Edge>& edges) {
  const int m = static_cast<int>(rows.size());
  const int ne = static_cast<int>(edges.size());
  const int ncols = ne + m;

  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(ncols + 1, 0));
  std::vector<Rational> obj(ncols, 0);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int e = 0; e < ne; ++e)
      if (rows[i] & (std::uint32_t{1} << e)) tab[i][e] = 1;
    tab[i][ne + i] = 1;
    tab[i][ncols] = 1;
    basis[i] = ne + i;
  }
  for (int e = 0; e < ne; ++e) obj[e] = edges[e].w;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols && enter < 0; ++j) {
      Rational reduced = obj[j];
      for (int i = 0; i < m; ++i) reduced -= obj[basis[i]] * tab[i][j];
      if (reduced > 0) enter = j;
    }
    if (enter < 0) break;

    int leave = -1;
    Rational best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      const Rational ratio = tab[i][ncols] / tab[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("cover lp: unbounded");

    const Rational pivot = tab[leave][enter];
    for (int j = 0; j <= ncols; ++j) tab[leave][j] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const Rational factor = tab[i][enter];
      for (int j = 0; j <= ncols; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  CoverLp out;
  out.durations.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    out.value += obj[basis[i]] * tab[i][ncols];
    for (int k = 0; k < m; ++k)
      out.durations[k] += obj[basis[i]] * tab[i][ne + k];
  }

  // The durations must themselves be an optimal cover; check exactly.
  Rational total = 0;
  for (const Rational& t : out.durations) {
    if (t < 0) throw std::logic_error("cover lp: negative duration");
    total += t;
  }
  if (total != out.value) throw std::logic_error("cover lp: duality gap");
  for (int e = 0; e < ne; ++e) {
    Rational covered = 0;
    for (int i = 0; i < m; ++i)
      if (rows[i] & (std::uint32_t{1} << e)) covered += out.durations[i];
    if (covered < edges[e].w) throw std::logic_error("cover lp: edge uncovered");
  }
  return out;
}

bool all_integral(const std::vector<Rational>& values) {
  for (const Rational& v : values)
    if (boost::multiprecision::denominator(v) != 1) return false;
  return true;
}

// Searches for positive integer durations with the exact target sum that still
// cover every edge.  Only reached when a cover's simplex vertex is fractional,
// which the small instances this oracle accepts are not expected to produce.
bool integral_search(const std::vector<std::uint32_t>& rows,
                     const std::vector<Edge>& edges, const Rational& target,
                     std::vector<Weight>& out) {
  if (boost::multiprecision::denominator(target) != 1) return false;
  const Weight total = boost::multiprecision::numerator(target).convert_to<Weight>();
  const int m = static_cast<int>(rows.size());
  if (total < m) return false;

  std::vector<Weight> caps(m, 1);
  for (int i = 0; i < m; ++i)
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (rows[i] & (std::uint32_t{1} << e)) caps[i] = std::max(caps[i], edges[e].w);

  std::vector<Weight> covered(edges.size(), 0);
  std::vector<Weight> pick(m, 0);
  long long nodes = 0;

  auto rec = [&](auto&& self, int i, Weight remaining) -> bool {
    if (++nodes > 2'000'000) return false;
    if (i == m) {
      if (remaining != 0) return false;
      for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (covered[e] < edges[e].w) return false;
      return true;
    }
    const Weight hi = std::min(caps[i], remaining - (m - 1 - i));
    for (Weight t = hi; t >= 1; --t) {
      pick[i] = t;
      for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (rows[i] & (std::uint32_t{1} << e)) covered[e] += t;
      if (self(self, i + 1, remaining - t)) return true;
      for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (rows[i] & (std::uint32_t{1} << e)) covered[e] -= t;
    }
    return false;
  };
  if (!rec(rec, 0, total)) return false;
  out = pick;
  return true;
}

Schedule rounds_from(const std::vector<std::uint32_t>& rows,
                     const std::vector<Edge>& edges,
                     const std::vector<Weight>& durations) {
  Schedule s;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    Round round;
    round.duration = durations[i];
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (rows[i] & (std::uint32_t{1} << e))
        round.matching.pairs.emplace_back(edges[e].r, edges[e].c);
    s.rounds.push_back(std::move(round));
  }
  return s;
}

}  // namespace

std::vector<Matching> enumerate_matchings(const Instance& inst, int max_edges) {
  const std::vector<Edge> edges = checked_edges(inst, max_edges);
  std::vector<std::uint32_t> masks;
  dfs_matchings(conflict_masks(edges), 0, 0, masks);

  std::vector<Matching> out;
  out.reserve(masks.size());
  for (const std::uint32_t mask : masks) {
    Matching m;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (mask & (std::uint32_t{1} << e))
        m.pairs.emplace_back(edges[e].r, edges[e].c);
    out.push_back(std::move(m));
  }
  return out;
}

OracleResult optimal_cost(const Instance& inst, int max_edges) {
  const std::vector<Edge> edges = checked_edges(inst, max_edges);
  const int ne = static_cast<int>(edges.size());
  const std::vector<std::uint32_t> conflicts = conflict_masks(edges);

  std::vector<std::uint32_t> masks;
  dfs_matchings(conflicts, 0, 0, masks);

  OracleResult result;
  result.matchings_considered = static_cast<long long>(masks.size());
  if (ne == 0) return result;

  const InstanceStats st = stats(inst);

  if (inst.setup == 0) {
    // With free setups the optimum is the maximum load: no schedule can move
    // the busiest node's demand in less time, and a balanced decomposition of
    // the padded matrix meets it.  posa performs exactly that decomposition.
    result.optimal_cost = st.w_load;
    result.witness = posa(inst).schedule;
    if (result.witness.total_duration() != st.w_load ||
        validate(result.witness, inst).has_value())
      throw std::logic_error("oracle: balanced decomposition failed");
    return result;
  }

  // Dropping a round's matching in favour of any maximal extension only
  // improves coverage and never adds rounds, so only maximal matchings need to
  // be considered as round candidates.
  std::vector<std::uint32_t> maximal;
  for (const std::uint32_t mask : masks) {
    bool extendable = false;
    for (int e = 0; e < ne && !extendable; ++e)
      extendable =
          !(mask & (std::uint32_t{1} << e)) && !(conflicts[e] & mask);
    if (!extendable) maximal.push_back(mask);
  }

  const std::uint32_t full = ne == 31 ? 0x7FFFFFFFu
                                      : (std::uint32_t{1} << ne) - 1;
  const int n_max = static_cast<int>(maximal.size());
  const int k_cap = std::min(n_max, ne);

  bool have_best = false;
  Rational best;
  // Ties on the optimal value, kept in discovery order; the witness comes from
  // the first one that admits integer durations.
  std::vector<std::vector<std::uint32_t>> tied_rows;
  std::vector<std::vector<Rational>> tied_durations;

  std::vector<int> idx;
  for (int k = 1; k <= k_cap; ++k) {
    // Any cover runs at least as long as the maximum load, so once the setup
    // charge alone rules this cardinality out, every larger one is out too.
    if (have_best && Rational(st.w_load + inst.setup * k) >= best) break;

    idx.assign(k, 0);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::uint32_t covered = 0;
      for (const int i : idx) covered |= maximal[i];
      if (covered == full) {
        std::vector<std::uint32_t> rows;
        for (const int i : idx) rows.push_back(maximal[i]);
        const CoverLp lp = solve_cover_lp(rows, edges);
        const Rational cand = lp.value + inst.setup * k;
        if (!have_best || cand < best) {
          have_best = true;
          best = cand;
          tied_rows.assign(1, rows);
          tied_durations.assign(1, lp.durations);
        } else if (cand == best && tied_rows.size() < 64) {
          tied_rows.push_back(rows);
          tied_durations.push_back(lp.durations);
        }
      }

      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n_max - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (!have_best) throw std::logic_error("oracle: no cover found");

  result.optimal_cost = best;
  for (std::size_t t = 0; t < tied_rows.size(); ++t) {
    std::vector<Weight> durations;
    if (all_integral(tied_durations[t])) {
      for (const Rational& v : tied_durations[t])
        durations.push_back(
            boost::multiprecision::numerator(v).convert_to<Weight>());
    } else {
      const Rational lp_total =
          best - inst.setup * static_cast<long long>(tied_rows[t].size());
      if (!integral_search(tied_rows[t], edges, lp_total, durations)) continue;
    }
    result.witness = rounds_from(tied_rows[t], edges, durations);
    break;
  }
  if (result.witness.rounds.empty())
    throw std::logic_error("oracle: no integral witness among optimal covers");

  Rational check = inst.setup * static_cast<long long>(result.witness.n_rounds());
  check += result.witness.total_duration();
  if (check != best || validate(result.witness, inst).has_value())
    throw std::logic_error("oracle: witness mismatch");
  return result;
}

}  // namespace pbs
