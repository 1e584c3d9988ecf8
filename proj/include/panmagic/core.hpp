#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "panmagic/matrix.hpp"
#include "panmagic/scalar.hpp"

namespace panmagic {

/// The four line families, in the order violations are reported.
enum class LineKind { Row, Column, UpDiagonal, DownDiagonal };

inline const char* to_string(LineKind k) {
  switch (k) {
  case LineKind::Row:
    return "row";
  case LineKind::Column:
    return "column";
  case LineKind::UpDiagonal:
    return "up-diagonal";
  case LineKind::DownDiagonal:
    return "down-diagonal";
  }
  return "?";
}

/// Sums of every line of a matrix. Up-diagonal k collects entries with
/// i + j = k (mod n); down-diagonal k those with i - j = k (mod n).
struct LineSums {
  std::vector<Scalar> rows, columns, up, down;

  const std::vector<Scalar>& family(LineKind k) const {
    switch (k) {
    case LineKind::Row:
      return rows;
    case LineKind::Column:
      return columns;
    case LineKind::UpDiagonal:
      return up;
    default:
      return down;
    }
  }
};

inline LineSums line_sums(const SquareMatrix& a) {
  const int n = a.order();
  LineSums s{std::vector<Scalar>(n), std::vector<Scalar>(n), std::vector<Scalar>(n), std::vector<Scalar>(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Scalar& x = a(i, j);
      if (x == 0)
        continue;
      s.rows[i] += x;
      s.columns[j] += x;
      s.up[mod(i + j, n)] += x;
      s.down[mod(i - j, n)] += x;
    }
  }
  return s;
}

struct Panmagic {
  Scalar mu;
};

struct Violation {
  LineKind kind;
  int index;
  Scalar sum;
  Scalar expected;
};

/// Either the magic number or the first line (rows, columns, up-diagonals,
/// down-diagonals; ascending index) whose sum differs from row 0's.
struct MagicReport {
  std::variant<Panmagic, Violation> verdict;

  bool panmagic() const { return std::holds_alternative<Panmagic>(verdict); }
  const Scalar& mu() const { return std::get<Panmagic>(verdict).mu; }
  const Violation& violation() const { return std::get<Violation>(verdict); }
};

inline MagicReport check_panmagic(const SquareMatrix& a) {
  const LineSums s = line_sums(a);
  const Scalar& expected = s.rows[0];
  for (LineKind k : {LineKind::Row, LineKind::Column, LineKind::UpDiagonal, LineKind::DownDiagonal}) {
    const auto& fam = s.family(k);
    for (int idx = 0; idx < a.order(); ++idx)
      if (fam[idx] != expected)
        return {Violation{k, idx, fam[idx], expected}};
  }
  return {Panmagic{expected}};
}

struct PanstochasticVerdict {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Nonnegative and panmagic with magic number 1.
inline PanstochasticVerdict check_panstochastic(const SquareMatrix& a) {
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      if (a(i, j) < 0)
        return {false, "negative entry " + to_string(a(i, j)) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")"};
  const MagicReport r = check_panmagic(a);
  if (!r.panmagic()) {
    const Violation& v = r.violation();
    return {false, std::string(to_string(v.kind)) + " " + std::to_string(v.index) + " sums to " + to_string(v.sum) +
                       ", expected " + to_string(v.expected)};
  }
  if (r.mu() != 1)
    return {false, "magic number is " + to_string(r.mu()) + ", expected 1"};
  return {true, "panstochastic"};
}

/// Entry (i, j) is 1 iff i = pi(j).
inline SquareMatrix perm_matrix(const Permutation& pi) {
  SquareMatrix m(pi.degree());
  for (int j = 0; j < pi.degree(); ++j)
    m(pi(j), j) = 1;
  return m;
}

using Position = std::pair<int, int>;

inline std::set<Position> support(const SquareMatrix& a) {
  std::set<Position> s;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      if (a(i, j) != 0)
        s.emplace(i, j);
  return s;
}

/// True iff every nonzero position of `p` is nonzero in `a`.
inline bool support_subset(const SquareMatrix& p, const SquareMatrix& a) {
  p.require_same_order(a);
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j)
      if (p(i, j) != 0 && a(i, j) == 0)
        return false;
  return true;
}

} // namespace panmagic
