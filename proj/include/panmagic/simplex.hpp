#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "panmagic/linalg.hpp"
#include "panmagic/scalar.hpp"

namespace panmagic {

/// Exact phase-1 simplex: finds x >= 0 with A x = b, or reports that none
/// exists. One artificial variable per row; pivots follow Bland's rule
/// (lowest-index entering column, lowest-index leaving basic variable on
/// ratio ties), which rules out cycling.
class FeasibilityLp {
public:
  FeasibilityLp(std::vector<Row> a, Row b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size())
      throw Error("constraint count mismatch");
    if (a_.empty())
      throw Error("no constraints");
    vars_ = a_.front().size();
    for (const auto& r : a_)
      if (r.size() != vars_)
        throw Error("ragged constraint matrix");
  }

  std::optional<std::vector<Scalar>> solve() {
    const std::size_t m = a_.size();
    const std::size_t width = vars_ + m; // structural, then artificial
    // Tableau rows: [coefficients | rhs]; rhs made nonnegative.
    std::vector<Row> t(m, Row(width + 1));
    basis_.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = b_[i] < 0;
      for (std::size_t j = 0; j < vars_; ++j)
        t[i][j] = flip ? Scalar(-a_[i][j]) : a_[i][j];
      t[i][vars_ + i] = 1;
      t[i][width] = flip ? Scalar(-b_[i]) : b_[i];
      basis_[i] = vars_ + i;
    }
    // Reduced costs of "minimize sum of artificials".
    Row cost(width + 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= width; ++j)
        if (j < vars_ || j == width)
          cost[j] -= t[i][j];

    pivots_ = 0;
    for (;;) {
      std::size_t enter = width;
      for (std::size_t j = 0; j < width; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter == width)
        break;
      std::size_t leave = m;
      Scalar best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0)
          continue;
        Scalar ratio = t[i][width] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m)
        throw Error("phase-1 objective unbounded; tableau is corrupt");
      pivot(t, cost, leave, enter);
      ++pivots_;
    }
    if (cost[width] != 0)
      return std::nullopt;
    std::vector<Scalar> x(vars_);
    for (std::size_t i = 0; i < m; ++i)
      if (basis_[i] < vars_)
        x[basis_[i]] = t[i][width];
    return x;
  }

  std::size_t pivots() const { return pivots_; }

private:
  void pivot(std::vector<Row>& t, Row& cost, std::size_t r, std::size_t c) {
    const std::size_t cols = t[r].size();
    const Scalar p = t[r][c];
    for (auto& v : t[r])
      v /= p;
    auto eliminate = [&](Row& row) {
      if (row[c] == 0)
        return;
      const Scalar f = row[c];
      for (std::size_t j = 0; j < cols; ++j)
        if (t[r][j] != 0)
          row[j] -= f * t[r][j];
    };
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != r)
        eliminate(t[i]);
    eliminate(cost);
    basis_[r] = c;
  }

  std::vector<Row> a_;
  Row b_;
  std::size_t vars_ = 0;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

} // namespace panmagic
