#pragma once

#include <span>
#include <string>
#include <vector>

#include "panmagic/core.hpp"
#include "panmagic/matrix.hpp"

namespace panmagic {

/// Packs (inner index j, outer index s) as j*n + s, n being the outer order.
/// Every product construction goes through this helper.
struct BlockPacking {
  int inner; ///< m
  int outer; ///< n

  int pack(int j, int s) const { return j * outer + s; }
  int inner_of(int x) const { return x / outer; }
  int outer_of(int x) const { return x % outer; }
  int order() const { return inner * outer; }
};

/// Entry (i*n + r, j*n + s) of the result is blocks[s](i, j) * outer(r, s).
inline SquareMatrix wreath_matrices(std::span<const SquareMatrix> blocks, const SquareMatrix& outer) {
  const int n = outer.order();
  if (blocks.size() != static_cast<std::size_t>(n))
    throw Error("wreath product needs " + std::to_string(n) + " blocks, got " + std::to_string(blocks.size()));
  const int m = blocks.front().order();
  for (const auto& a : blocks)
    if (a.order() != m)
      throw Error("wreath product blocks must share one order");
  const BlockPacking pk{m, n};
  SquareMatrix out(pk.order());
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const Scalar& b = outer(r, s);
      if (b == 0)
        continue;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          out(pk.pack(i, r), pk.pack(j, s)) = blocks[s](i, j) * b;
    }
  }
  return out;
}

inline SquareMatrix kronecker(const SquareMatrix& a, const SquareMatrix& b) {
  std::vector<SquareMatrix> blocks(b.order(), a);
  return wreath_matrices(blocks, b);
}

/// pi(j*n + s) = lambdas[s](j) * n + rho(s).
inline Permutation wreath_perms(std::span<const Permutation> lambdas, const Permutation& rho) {
  const int n = rho.degree();
  if (lambdas.size() != static_cast<std::size_t>(n))
    throw Error("wreath product needs " + std::to_string(n) + " inner permutations, got " + std::to_string(lambdas.size()));
  const int m = lambdas.front().degree();
  for (const auto& l : lambdas)
    if (l.degree() != m)
      throw Error("inner permutations must share one degree");
  const BlockPacking pk{m, n};
  std::vector<int> im(pk.order());
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < m; ++j)
      im[pk.pack(j, s)] = pk.pack(lambdas[s](j), rho(s));
  return Permutation(std::move(im));
}

/// Raised by factor_through_support; `index` is the first x whose image
/// leaves the support of A (x) P_rho.
class FactorError : public Error {
public:
  FactorError(int index, const std::string& msg) : Error(msg), index_(index) {}
  int index() const { return index_; }

private:
  int index_;
};

/// Recovers the unique lambdas with pi = (lambdas) wr rho, given that
/// supp P_pi lies inside supp(A (x) P_rho). Each lambda_s then has its
/// support inside supp A. Fails as a whole if any index breaks the
/// precondition.
inline std::vector<Permutation> factor_through_support(const Permutation& pi, const SquareMatrix& a, const Permutation& rho) {
  const BlockPacking pk{a.order(), rho.degree()};
  if (pi.degree() != pk.order())
    throw Error("degree " + std::to_string(pi.degree()) + " does not match " + std::to_string(pk.inner) + " x " +
                std::to_string(pk.outer));
  std::vector<std::vector<int>> lambdas(pk.outer, std::vector<int>(pk.inner));
  for (int x = 0; x < pk.order(); ++x) {
    const int j = pk.inner_of(x), s = pk.outer_of(x);
    const int y = pi(x);
    const int i = pk.inner_of(y), r = pk.outer_of(y);
    if (r != rho(s) || a(i, j) == 0)
      throw FactorError(x, "pi(" + std::to_string(x) + ") = " + std::to_string(y) +
                               " lies outside the support of A (x) P_rho");
    lambdas[s][j] = i;
  }
  std::vector<Permutation> out;
  out.reserve(pk.outer);
  for (auto& l : lambdas)
    out.emplace_back(std::move(l));
  return out;
}

} // namespace panmagic
