#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "panmagic/core.hpp"
#include "panmagic/linalg.hpp"
#include "panmagic/matrix.hpp"
#include "panmagic/perms.hpp"
#include "panmagic/simplex.hpp"

namespace panmagic {

// ---------------------------------------------------------------------------
// Order 5: coordinates over the ten panmagic permutation matrices
// ---------------------------------------------------------------------------

/// The ten panmagic permutations of degree 5 in coordinate order:
/// x -> 2x + c for c = 0..4, then x -> 3x + d for d = 0..4.
inline std::vector<Permutation> order5_vertices() {
  std::vector<Permutation> v;
  for (long a : {2L, 3L})
    for (long b = 0; b < 5; ++b)
      v.push_back(affine_perm({a, b}, 5));
  return v;
}

/// A = sum_c alpha_c P_{2x+c} + sum_d beta_d P_{3x+d}.
struct Eq1Coordinates {
  std::array<Scalar, 5> alpha;
  std::array<Scalar, 5> beta;

  /// Entry (i, j) equals alpha_c + beta_d with c = i - 2j, d = i - 3j (mod 5).
  SquareMatrix reconstruct() const {
    SquareMatrix m(5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        m(i, j) = alpha[mod(i - 2 * j, 5)] + beta[mod(i - 3 * j, 5)];
    return m;
  }

  /// Moves along the one-dimensional kernel: alpha - t, beta + t.
  Eq1Coordinates shifted(const Scalar& t) const {
    Eq1Coordinates s = *this;
    for (auto& a : s.alpha)
      a -= t;
    for (auto& b : s.beta)
      b += t;
    return s;
  }
};

/// Coordinates of a 5 x 5 panmagic matrix with the pivot beta_0 = 0.
inline Eq1Coordinates solve_eq1(const SquareMatrix& a) {
  if (a.order() != 5)
    throw Error("order-5 coordinates need a 5 x 5 matrix, got order " + std::to_string(a.order()));
  if (!check_panmagic(a).panmagic())
    throw Error("matrix is not panmagic");
  Eq1Coordinates x;
  // d = 0 gives alpha_c = A(3c, c); c = 0 gives beta_d = A(-2d, -d) - alpha_0.
  for (int c = 0; c < 5; ++c)
    x.alpha[c] = a.wrapped(3 * c, c);
  for (int d = 0; d < 5; ++d)
    x.beta[d] = a.wrapped(-2 * d, -d) - x.alpha[0];
  if (x.reconstruct() != a)
    throw Error("matrix lies outside the span of the order-5 panmagic permutation matrices");
  return x;
}

struct DecompositionTerm {
  Permutation perm;
  Scalar coeff;
};

/// Positive coefficients summing to 1 over panmagic permutations.
struct DecompositionResult {
  std::vector<DecompositionTerm> terms;

  SquareMatrix reconstruct(int n) const {
    SquareMatrix m(n);
    for (const auto& t : terms)
      m += t.coeff * perm_matrix(t.perm);
    return m;
  }
};

/// Convex decomposition of a 5 x 5 panstochastic matrix: solve for the
/// coordinates, then shift along the kernel until every coefficient is
/// nonnegative.
inline DecompositionResult decompose5(const SquareMatrix& a) {
  if (a.order() != 5)
    throw Error("decomposition needs a 5 x 5 matrix, got order " + std::to_string(a.order()));
  if (auto v = check_panstochastic(a); !v)
    throw Error("matrix is not panstochastic: " + v.reason);
  Eq1Coordinates x = solve_eq1(a);
  const Scalar min_alpha = *std::min_element(x.alpha.begin(), x.alpha.end());
  const Scalar min_beta = *std::min_element(x.beta.begin(), x.beta.end());
  Scalar t = 0;
  if (min_beta < 0)
    t = -min_beta;
  else if (min_alpha < 0)
    t = min_alpha;
  x = x.shifted(t);

  const auto verts = order5_vertices();
  DecompositionResult out;
  Scalar sum = 0;
  for (int k = 0; k < 10; ++k) {
    const Scalar& c = k < 5 ? x.alpha[k] : x.beta[k - 5];
    if (c < 0)
      throw Error("kernel shift left a negative coefficient");
    if (c != 0)
      out.terms.push_back({verts[k], c});
    sum += c;
  }
  if (sum != 1 || out.reconstruct(5) != a)
    throw Error("decomposition failed exact reconstruction");
  return out;
}

// ---------------------------------------------------------------------------
// Exact convex-hull membership
// ---------------------------------------------------------------------------

struct MembershipResult {
  bool feasible = false;
  std::vector<Scalar> coefficients; ///< one per vertex when feasible
  std::size_t pivots = 0;
};

/// Decides whether `a` is a convex combination of `vertices`.
inline MembershipResult membership(const SquareMatrix& a, const std::vector<SquareMatrix>& vertices) {
  if (vertices.empty())
    throw Error("empty vertex list");
  for (const auto& v : vertices)
    a.require_same_order(v);
  const int n = a.order();
  std::vector<Row> rows(static_cast<std::size_t>(n) * n + 1, Row(vertices.size()));
  Row rhs(rows.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t r = static_cast<std::size_t>(i) * n + j;
      for (std::size_t k = 0; k < vertices.size(); ++k)
        rows[r][k] = vertices[k](i, j);
      rhs[r] = a(i, j);
    }
  for (auto& c : rows.back())
    c = 1;
  rhs.back() = 1;

  FeasibilityLp lp(std::move(rows), std::move(rhs));
  auto x = lp.solve();
  MembershipResult res;
  res.pivots = lp.pivots();
  if (!x)
    return res;
  SquareMatrix check(n);
  for (std::size_t k = 0; k < vertices.size(); ++k)
    if ((*x)[k] != 0)
      check += (*x)[k] * vertices[k];
  if (check != a)
    throw Error("simplex returned a point that does not reconstruct the input");
  res.feasible = true;
  res.coefficients = std::move(*x);
  return res;
}

// ---------------------------------------------------------------------------
// Support-restricted search for covering panmagic permutations
// ---------------------------------------------------------------------------

struct SearchEvent {
  enum class Kind {
    Fixed,   ///< the entry being covered
    Branch,  ///< a search decision
    Forced,  ///< implied by the support and the rows already used
    Conflict ///< dead end; `detail` says why
  };
  Kind kind;
  int column;
  int row;
  int depth;
  std::string detail;
};

inline const char* to_string(SearchEvent::Kind k) {
  switch (k) {
  case SearchEvent::Kind::Fixed:
    return "fixed";
  case SearchEvent::Kind::Branch:
    return "branch";
  case SearchEvent::Kind::Forced:
    return "forced";
  case SearchEvent::Kind::Conflict:
    return "conflict";
  }
  return "?";
}

struct CoverResult {
  std::optional<Permutation> witness;
  std::uint64_t nodes = 0;
  std::vector<SearchEvent> trace;
};

/// Looks for a panmagic pi with pi(column) = row whose permutation matrix
/// has its support inside supp A.
///
/// Each node first propagates the matching structure of the support: a
/// column with one unused support row, or an unused row with one open
/// support column, is forced. Every assignment is checked against the
/// down-diagonal (pi(j) - j) and up-diagonal (pi(j) + j) values already
/// taken. Once nothing is forced, it branches on the open column with the
/// fewest admissible rows.
class CoverSearch {
public:
  explicit CoverSearch(const SquareMatrix& a) : n_(a.order()), col_rows_(n_), row_cols_(n_) {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i)
        if (a(i, j) != 0) {
          col_rows_[j].push_back(i);
          row_cols_[i].push_back(j);
        }
  }

  CoverResult run(int row, int column, bool record_trace = false) {
    record_ = record_trace;
    result_ = {};
    State st(n_);
    if (search(st, {{column, row}}, SearchEvent::Kind::Fixed, 0))
      result_.witness = Permutation(std::move(solution_));
    return std::move(result_);
  }

private:
  struct State {
    explicit State(int n) : assign(n, -1), row_used(n, 0), diff_owner(n, -1), sum_owner(n, -1) {}
    std::vector<int> assign;
    std::vector<char> row_used;
    std::vector<int> diff_owner, sum_owner; ///< column holding each diagonal value
    int assigned = 0;
  };

  void note(SearchEvent::Kind k, int column, int row, int depth, std::string detail = {}) {
    if (record_)
      result_.trace.push_back({k, column, row, depth, std::move(detail)});
  }

  bool admissible(const State& st, int j, int i) const {
    return !st.row_used[i] && st.diff_owner[mod(i - j, n_)] < 0 && st.sum_owner[mod(i + j, n_)] < 0;
  }

  bool propagate(State& st, std::deque<std::pair<int, int>> queue, SearchEvent::Kind first_kind, int depth) {
    bool first = true;
    while (!queue.empty()) {
      auto [j, i] = queue.front();
      queue.pop_front();
      if (st.assign[j] == i)
        continue;
      SearchEvent::Kind kind = first ? first_kind : SearchEvent::Kind::Forced;
      first = false;
      if (st.assign[j] >= 0) {
        note(SearchEvent::Kind::Conflict, j, i, depth, "column already holds row " + std::to_string(st.assign[j]));
        return false;
      }
      if (st.row_used[i]) {
        note(SearchEvent::Kind::Conflict, j, i, depth, "row already used");
        return false;
      }
      st.assign[j] = i;
      st.row_used[i] = 1;
      ++st.assigned;
      note(kind, j, i, depth);
      const int d = mod(i - j, n_), u = mod(i + j, n_);
      if (st.diff_owner[d] >= 0) {
        note(SearchEvent::Kind::Conflict, j, i, depth,
             "down-diagonal " + std::to_string(d) + " already taken by column " + std::to_string(st.diff_owner[d]));
        return false;
      }
      if (st.sum_owner[u] >= 0) {
        note(SearchEvent::Kind::Conflict, j, i, depth,
             "up-diagonal " + std::to_string(u) + " already taken by column " + std::to_string(st.sum_owner[u]));
        return false;
      }
      st.diff_owner[d] = j;
      st.sum_owner[u] = j;

      for (int j2 : row_cols_[i]) {
        if (st.assign[j2] >= 0)
          continue;
        int count = 0, last = -1;
        for (int r : col_rows_[j2])
          if (!st.row_used[r]) {
            ++count;
            last = r;
          }
        if (count == 0) {
          note(SearchEvent::Kind::Conflict, j2, -1, depth, "column has no unused support row");
          return false;
        }
        if (count == 1)
          queue.emplace_back(j2, last);
      }
      for (int i2 : col_rows_[j]) {
        if (st.row_used[i2])
          continue;
        int count = 0, last = -1;
        for (int c : row_cols_[i2])
          if (st.assign[c] < 0) {
            ++count;
            last = c;
          }
        if (count == 0) {
          note(SearchEvent::Kind::Conflict, -1, i2, depth, "row has no open support column");
          return false;
        }
        if (count == 1)
          queue.emplace_back(last, i2);
      }
    }
    return true;
  }

  bool search(State st, std::deque<std::pair<int, int>> queue, SearchEvent::Kind kind, int depth) {
    ++result_.nodes;
    if (!propagate(st, std::move(queue), kind, depth))
      return false;
    if (st.assigned == n_) {
      solution_ = st.assign;
      return true;
    }

    // Every open column needs an admissible row, and every free row and
    // diagonal value needs some open column that can still reach it.
    std::vector<char> row_ok(n_, 0), diff_ok(n_, 0), sum_ok(n_, 0);
    int best = -1;
    std::vector<int> best_opts;
    for (int j = 0; j < n_; ++j) {
      if (st.assign[j] >= 0)
        continue;
      std::vector<int> opts;
      for (int i : col_rows_[j])
        if (admissible(st, j, i)) {
          opts.push_back(i);
          row_ok[i] = diff_ok[mod(i - j, n_)] = sum_ok[mod(i + j, n_)] = 1;
        }
      if (opts.empty()) {
        note(SearchEvent::Kind::Conflict, j, -1, depth, "column has no admissible row");
        return false;
      }
      if (best < 0 || opts.size() < best_opts.size()) {
        best = j;
        best_opts = std::move(opts);
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (!st.row_used[v] && !row_ok[v]) {
        note(SearchEvent::Kind::Conflict, -1, v, depth, "row cannot be covered");
        return false;
      }
      if (st.diff_owner[v] < 0 && !diff_ok[v]) {
        note(SearchEvent::Kind::Conflict, -1, -1, depth, "down-diagonal " + std::to_string(v) + " cannot be covered");
        return false;
      }
      if (st.sum_owner[v] < 0 && !sum_ok[v]) {
        note(SearchEvent::Kind::Conflict, -1, -1, depth, "up-diagonal " + std::to_string(v) + " cannot be covered");
        return false;
      }
    }
    for (int i : best_opts)
      if (search(st, {{best, i}}, SearchEvent::Kind::Branch, depth + 1))
        return true;
    return false;
  }

  int n_;
  std::vector<std::vector<int>> col_rows_, row_cols_;
  bool record_ = false;
  CoverResult result_;
  std::vector<int> solution_;
};

inline CoverResult find_covering_perm(const SquareMatrix& a, int row, int column, bool record_trace = false) {
  return CoverSearch(a).run(row, column, record_trace);
}

/// A positive entry no panmagic permutation inside supp A can cover.
struct NonDecompCertificate {
  int row;
  int column;
  std::uint64_t nodes_visited;
};

/// Scans positive entries column by column (rows ascending within a
/// column) and returns the first one whose covering search is exhausted.
/// Absence does not prove decomposability.
inline std::optional<NonDecompCertificate> non_decomp_certificate(const SquareMatrix& a) {
  if (auto v = check_panstochastic(a); !v)
    throw Error("matrix is not panstochastic: " + v.reason);
  const int n = a.order();
  CoverSearch search(a);
  std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (a(i, j) <= 0 || covered[static_cast<std::size_t>(i) * n + j])
        continue;
      CoverResult r = search.run(i, j);
      if (!r.witness)
        return NonDecompCertificate{i, j, r.nodes};
      for (int c = 0; c < n; ++c)
        covered[static_cast<std::size_t>((*r.witness)(c)) * n + c] = 1;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Spanning check at order 5
// ---------------------------------------------------------------------------

struct SpanRank {
  std::size_t vertex_rank;     ///< rank of the ten matrices as 25-vectors
  std::size_t constraint_rank; ///< rank of the line-difference system
  std::size_t pan_dimension;   ///< 25 - constraint_rank
};

/// Line-difference system: for each of the 20 lines, (line sum) - (row 0 sum) = 0.
inline std::vector<Row> line_difference_system(int n) {
  std::vector<Row> eqs;
  auto on_line = [n](int family, int k, int i, int j) {
    switch (family) {
    case 0:
      return i == k;
    case 1:
      return j == k;
    case 2:
      return mod(i + j, n) == k;
    default:
      return mod(i - j, n) == k;
    }
  };
  for (int f = 0; f < 4; ++f)
    for (int k = 0; k < n; ++k) {
      Row r(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          r[static_cast<std::size_t>(i) * n + j] = Scalar(on_line(f, k, i, j) ? 1 : 0) - Scalar(i == 0 ? 1 : 0);
      eqs.push_back(std::move(r));
    }
  return eqs;
}

inline SpanRank span_rank_check() {
  std::vector<Row> verts;
  for (const auto& p : order5_vertices()) {
    const SquareMatrix m = perm_matrix(p);
    verts.emplace_back(m.entries().begin(), m.entries().end());
  }
  const std::size_t cr = rank(line_difference_system(5));
  return {rank(std::move(verts)), cr, 25 - cr};
}

} // namespace panmagic
