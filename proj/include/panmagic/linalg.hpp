#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "panmagic/scalar.hpp"

namespace panmagic {

using Row = std::vector<Scalar>;

/// Rank of a dense rational matrix given as rows, by exact row reduction.
inline std::size_t rank(std::vector<Row> rows) {
  if (rows.empty())
    return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0)
      ++piv;
    if (piv == rows.size())
      continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][c] == 0)
        continue;
      const Scalar f = rows[k][c] / rows[r][c];
      for (std::size_t cc = c; cc < cols; ++cc)
        rows[k][cc] -= f * rows[r][cc];
    }
    ++r;
  }
  return r;
}

} // namespace panmagic
