#include "pbs/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pbs {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

// Shortest-augmenting-path assignment solver with integer potentials
// (Jonker-Volgenant style, O(n^3)). Minimizes over the full matrix `a`;
// on return p[j] is the row assigned to column j (1-based, column 0 is the
// virtual root) and u, v are dual potentials with
//   a[i][j] - u[i] - v[j] >= 0 for all cells, == 0 on assigned cells.
void solve_assignment(const std::vector<std::vector<Weight>>& a, int n,
                      std::vector<int>& p, std::vector<Weight>& u, std::vector<Weight>& v) {
  p.assign(n + 1, 0);
  u.assign(n + 1, 0);
  v.assign(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<Weight> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      Weight delta = kInf;
      for (int j = 1; j <= n; ++j)
        if (!used[j]) {
          const Weight cur = a[i0][j] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      for (int j = 0; j <= n; ++j)
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
}

// One alternating-path search over the candidate lists. Returns true when row
// r gets rematched to a free column, updating the matching in place.
bool rematch(int r, const std::vector<std::vector<int>>& cand,
             const std::vector<char>& col_fixed, std::vector<char>& visited,
             std::vector<int>& match_row, std::vector<int>& match_col) {
  for (int c : cand[r]) {
    if (col_fixed[c] || visited[c]) continue;
    visited[c] = 1;
    if (match_col[c] == -1 ||
        rematch(match_col[c], cand, col_fixed, visited, match_row, match_col)) {
      match_row[r] = c;
      match_col[c] = r;
      return true;
    }
  }
  return false;
}

}  // namespace

Matching max_weight_perfect_matching(const std::vector<std::vector<Weight>>& weights,
                                     const std::vector<std::vector<char>>& mask) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) throw std::invalid_argument("max_weight_perfect_matching: empty matrix");
  if (static_cast<int>(mask.size()) != n)
    throw std::invalid_argument("max_weight_perfect_matching: mask shape mismatch");
  Weight w_top = 0;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(weights[r].size()) != n || static_cast<int>(mask[r].size()) != n)
      throw std::invalid_argument("max_weight_perfect_matching: matrix must be square");
    for (int c = 0; c < n; ++c) {
      if (weights[r][c] < 0)
        throw std::invalid_argument("max_weight_perfect_matching: negative weight");
      if (mask[r][c]) w_top = std::max(w_top, weights[r][c]);
    }
  }

  // Maximization as minimization of -w; masked-out cells get a cost no
  // all-allowed matching can reach, so they appear in the solution only when
  // the mask has no perfect matching at all.
  const Weight big = (w_top + 1) * static_cast<Weight>(n + 1);
  std::vector<std::vector<Weight>> a(n + 1, std::vector<Weight>(n + 1, 0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      a[r + 1][c + 1] = mask[r][c] ? -weights[r][c] : big;

  std::vector<int> p;
  std::vector<Weight> u, v;
  solve_assignment(a, n, p, u, v);

  std::vector<int> match_row(n, -1), match_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (!mask[p[j] - 1][j - 1])
      throw NoPerfectMatching("mask admits no perfect matching");
    match_row[p[j] - 1] = j - 1;
    match_col[j - 1] = p[j] - 1;
  }

  // Optimal matchings are exactly the perfect matchings of the tight
  // subgraph (allowed cells with zero reduced cost), whichever optimal duals
  // we landed on. Walk the rows in order and fix the smallest tight column
  // that still leaves the rest of the tight graph perfectly matchable; the
  // current matching certifies each feasibility probe in one alternating
  // path.
  std::vector<std::vector<int>> cand(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (mask[r][c] && -weights[r][c] - u[r + 1] - v[c + 1] == 0) cand[r].push_back(c);

  std::vector<char> col_fixed(n, 0);
  Matching result;
  result.pairs.reserve(n);
  for (int r = 0; r < n; ++r) {
    bool fixed = false;
    for (int c : cand[r]) {
      if (col_fixed[c]) continue;
      if (match_row[r] == c) {
        fixed = true;
      } else {
        const int r2 = match_col[c];
        const int c2 = match_row[r];
        match_row[r] = c;
        match_col[c] = r;
        match_row[r2] = -1;
        match_col[c2] = -1;
        std::vector<char> visited(n, 0);
        visited[c] = 1;
        if (rematch(r2, cand, col_fixed, visited, match_row, match_col)) {
          fixed = true;
        } else {
          match_row[r] = c2;
          match_col[c2] = r;
          match_row[r2] = c;
          match_col[c] = r2;
        }
      }
      if (fixed) {
        col_fixed[c] = 1;
        result.pairs.emplace_back(r, c);
        break;
      }
    }
    if (!fixed) throw std::logic_error("max_weight_perfect_matching: tight graph lost a row");
  }
  return result;
}

namespace {

// Shared deficit-pairing loop: raises row_sum and col_sum to `target` by
// incrementing cells at (lowest deficient row, lowest deficient column).
// Adding the full min(deficit, deficit) at once lands on the same matrix as
// unit steps, because a cell stays selected until one side saturates.
template <typename Sum, typename Cell>
void pair_deficits(int n, Sum target, std::vector<Sum>& row_sum, std::vector<Sum>& col_sum,
                   std::vector<std::vector<Cell>>& out) {
  int r = 0, c = 0;
  for (;;) {
    while (r < n && row_sum[r] == target) ++r;
    if (r == n) break;
    while (c < n && col_sum[c] == target) ++c;
    if (c == n) throw std::logic_error("deficit pairing: row/column totals diverged");
    const Sum add = std::min(target - row_sum[r], target - col_sum[c]);
    out[r][c] += static_cast<Cell>(add);
    row_sum[r] += add;
    col_sum[c] += add;
  }
}

}  // namespace

DegreeMatrix regularize(const Instance& inst) {
  const InstanceStats st = stats(inst);
  if (st.delta == 0) throw std::invalid_argument("regularize: instance has no edges");

  DegreeMatrix dm;
  dm.size = std::max(inst.n_sources, inst.n_dests);
  dm.target = st.delta;
  dm.mult.assign(dm.size, std::vector<int>(dm.size, 0));

  std::vector<int> row_sum(dm.size, 0), col_sum(dm.size, 0);
  for (int r = 0; r < inst.n_sources; ++r)
    for (int c = 0; c < inst.n_dests; ++c)
      if (inst.weights[r][c] > 0) {
        dm.mult[r][c] = 1;
        ++row_sum[r];
        ++col_sum[c];
      }
  pair_deficits(dm.size, dm.target, row_sum, col_sum, dm.mult);
  return dm;
}

SaturatedMatrix saturate_loads(const Instance& inst) {
  const InstanceStats st = stats(inst);
  if (st.delta == 0) throw std::invalid_argument("saturate_loads: instance has no edges");

  SaturatedMatrix sm;
  sm.size = std::max(inst.n_sources, inst.n_dests);
  sm.target_load = st.w_load;
  sm.real.assign(sm.size, std::vector<Weight>(sm.size, 0));
  sm.slack.assign(sm.size, std::vector<Weight>(sm.size, 0));

  std::vector<Weight> row_sum(sm.size, 0), col_sum(sm.size, 0);
  for (int r = 0; r < inst.n_sources; ++r)
    for (int c = 0; c < inst.n_dests; ++c) {
      sm.real[r][c] = inst.weights[r][c];
      row_sum[r] += inst.weights[r][c];
      col_sum[c] += inst.weights[r][c];
    }
  pair_deficits(sm.size, sm.target_load, row_sum, col_sum, sm.slack);
  return sm;
}

}  // namespace pbs
