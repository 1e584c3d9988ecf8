#pragma once

#include <string>
#include <vector>

#include "panmagic/core.hpp"
#include "panmagic/decomp.hpp"
#include "panmagic/matrix.hpp"
#include "panmagic/perms.hpp"
#include "panmagic/products.hpp"

namespace panmagic {

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"uniform5", "perm2x_5", "magic60", "lemma41_7", "thm12_25"};
  return names;
}

namespace detail {

inline SquareMatrix thm12_25() {
  // clang-format off
  return SquareMatrix::from_integers(25, {
      0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0,
      0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0,
      0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0,
      1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0,
      0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1,
  }, make_scalar(1, 2));
  // clang-format on
}

inline void require_panstochastic(const SquareMatrix& m, const std::string& what) {
  if (auto v = check_panstochastic(m); !v)
    throw Error(what + " is not panstochastic: " + v.reason);
}

} // namespace detail

/// The concrete matrices used throughout the tests and the CLI, with their
/// scale factors applied.
inline SquareMatrix fixture(const std::string& name) {
  if (name == "uniform5")
    return SquareMatrix(5, make_scalar(1, 5));
  if (name == "perm2x_5")
    // clang-format off
    return SquareMatrix::from_integers(5, {
      1, 0, 0, 0, 0,
      0, 0, 0, 1, 0,
      0, 1, 0, 0, 0,
      0, 0, 0, 0, 1,
      0, 0, 1, 0, 0,
    });
  if (name == "magic60")
    return SquareMatrix::from_integers(5, {
       1, 13, 20,  7, 19,
      22,  9, 16,  3, 10,
      18,  0, 12, 24,  6,
      14, 21,  8, 15,  2,
       5, 17,  4, 11, 23,
    }, make_scalar(1, 60));
  if (name == "lemma41_7")
    return SquareMatrix::from_integers(7, {
      0, 0, 0, 0, 1, 1, 0,
      1, 0, 1, 0, 0, 0, 0,
      1, 0, 0, 0, 0, 1, 0,
      0, 0, 0, 2, 0, 0, 0,
      0, 1, 0, 0, 0, 0, 1,
      0, 0, 0, 0, 1, 0, 1,
      0, 1, 1, 0, 0, 0, 0,
    }, make_scalar(1, 2));
  // clang-format on
  if (name == "thm12_25")
    return detail::thm12_25();
  throw Error("unknown fixture '" + name + "'");
}

inline SquareMatrix uniform(int n) {
  if (n < 1)
    throw Error("order must be positive");
  return SquareMatrix(n, make_scalar(1, n));
}

/// The 4 x 4 correction block (scaled by 1/2) added in rows and columns
/// 0..3 of (P_{2x+1} + P_{2x-4}) / 2. Panmagic with magic number 0 for
/// every n >= 7.
inline SquareMatrix lemma41_correction(int n) {
  static constexpr int block[4][4] = {{0, 1, -1, 0}, {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, -1, 1, 0}};
  SquareMatrix c(n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      c(i, j) = make_scalar(block[i][j], 2);
  return c;
}

/// Panstochastic n x n matrix, gcd(n, 30) = 1 and n >= 7, with no panmagic
/// permutation mapping 0 to 2 inside its support.
inline SquareMatrix lemma41_matrix(int n) {
  if (n < 7 || gcd(n, 30) != 1)
    throw Error("construction needs gcd(n, 30) = 1 and n >= 7, got " + std::to_string(n));
  if (n == 7)
    return fixture("lemma41_7");
  const SquareMatrix corr = lemma41_correction(n);
  if (auto r = check_panmagic(corr); !r.panmagic() || r.mu() != 0)
    throw Error("correction block is not panmagic with magic number 0");
  SquareMatrix a = make_scalar(1, 2) * (perm_matrix(affine_perm({2, 1}, n)) + perm_matrix(affine_perm({2, -4}, n)));
  a += corr;
  detail::require_panstochastic(a, "order-" + std::to_string(n) + " construction");
  return a;
}

/// A (x) P_{2x}: order m*n, panstochastic whenever A is.
inline SquareMatrix lift(const SquareMatrix& a, int n) {
  if (n < 1 || gcd(n, 6) != 1)
    throw Error("lifting needs gcd(n, 6) = 1, got " + std::to_string(n));
  return kronecker(a, perm_matrix(affine_perm({2, 0}, n)));
}

/// How counterexample(n) was built.
enum class CounterexampleKind { Uniform, Direct, Lifted25, Lifted5 };

struct Counterexample {
  CounterexampleKind kind;
  int base; ///< order of the matrix that was lifted (or n itself)
  int factor; ///< lifting degree, 1 when not lifted
  SquareMatrix matrix;
};

inline Counterexample build_counterexample(int n) {
  if (n <= 1 || n == 5)
    throw Error("no counterexample at order " + std::to_string(n) + " (every panstochastic matrix decomposes)");
  if (gcd(n, 6) != 1)
    return {CounterexampleKind::Uniform, n, 1, uniform(n)};
  if (gcd(n, 30) == 1)
    return {CounterexampleKind::Direct, n, 1, lemma41_matrix(n)};
  if (n % 25 == 0)
    return {CounterexampleKind::Lifted25, 25, n / 25, lift(fixture("thm12_25"), n / 25)};
  // n = 5q with q coprime to 30 and q > 1
  return {CounterexampleKind::Lifted5, n / 5, 5, lift(lemma41_matrix(n / 5), 5)};
}

/// A panstochastic n x n matrix that is not a convex combination of
/// panmagic permutation matrices, for n > 1, n != 5.
inline SquareMatrix counterexample(int n) { return build_counterexample(n).matrix; }

} // namespace panmagic
