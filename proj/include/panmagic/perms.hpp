#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "panmagic/matrix.hpp"
#include "panmagic/scalar.hpp"

namespace panmagic {

/// A panmagic permutation together with its two difference maps:
/// lambda(j) = pi(j) - j and rho(j) = pi(j) + j (mod n), both bijections.
struct PanmagicWitness {
  Permutation pi;
  Permutation lambda;
  Permutation rho;
};

/// j -> a*j + b (mod n). Coefficients are kept reduced mod n.
struct AffineSpec {
  long a = 1;
  long b = 0;

  friend bool operator==(const AffineSpec&, const AffineSpec&) = default;
  friend auto operator<=>(const AffineSpec&, const AffineSpec&) = default;
};

/// Largest degree `enumerate_panmagic` accepts without an explicit override.
inline constexpr int kEnumerateDefaultCap = 17;

namespace detail {

inline std::optional<std::vector<int>> shifted_bijection(const Permutation& pi, int sign) {
  const int n = pi.degree();
  std::vector<int> out(n);
  std::vector<bool> seen(n, false);
  for (int j = 0; j < n; ++j) {
    int v = mod(static_cast<long>(pi(j)) + sign * static_cast<long>(j), n);
    if (seen[v])
      return std::nullopt;
    seen[v] = true;
    out[j] = v;
  }
  return out;
}

inline bool is_prime(long n) {
  if (n < 2)
    return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

} // namespace detail

inline std::optional<PanmagicWitness> is_panmagic_perm(const Permutation& pi) {
  auto lambda = detail::shifted_bijection(pi, -1);
  if (!lambda)
    return std::nullopt;
  auto rho = detail::shifted_bijection(pi, +1);
  if (!rho)
    return std::nullopt;
  return PanmagicWitness{pi, Permutation(std::move(*lambda)), Permutation(std::move(*rho))};
}

inline Permutation affine_perm(AffineSpec spec, int n) {
  if (n < 1)
    throw Error("degree must be positive");
  const long a = mod(spec.a, n), b = mod(spec.b, n);
  if (gcd(a, n) != 1)
    throw Error("affine map with a = " + std::to_string(spec.a) + " is not a bijection mod " + std::to_string(n));
  std::vector<int> im(n);
  for (int j = 0; j < n; ++j)
    im[j] = mod(a * j + b, n);
  return Permutation(std::move(im));
}

/// Coprimality test on a - 1 and a + 1; needs gcd(a, n) = 1.
inline bool is_affine_panmagic(AffineSpec spec, int n) {
  if (n < 1 || gcd(mod(spec.a, n), n) != 1)
    throw Error("a = " + std::to_string(spec.a) + " is not a unit mod " + std::to_string(n));
  const long a = mod(spec.a, n);
  return gcd(mod(a - 1, n), n) == 1 && gcd(mod(a + 1, n), n) == 1;
}

/// All affine panmagic specs (a, b) with a, b in {0, ..., n-1}, sorted by (a, b).
inline std::vector<AffineSpec> enumerate_affine_panmagic(int n) {
  std::vector<AffineSpec> out;
  for (long a = 0; a < n; ++a) {
    if (gcd(a, n) != 1 || !is_affine_panmagic({a, 0}, n))
      continue;
    for (long b = 0; b < n; ++b)
      out.push_back({a, b});
  }
  return out;
}

inline std::optional<AffineSpec> is_affine(const Permutation& pi) {
  const int n = pi.degree();
  const long b = pi(0);
  const long a = n > 1 ? mod(static_cast<long>(pi(1)) - b, n) : 0;
  for (int j = 0; j < n; ++j)
    if (pi(j) != mod(a * j + b, n))
      return std::nullopt;
  return AffineSpec{a, b};
}

namespace detail {

/// Toroidal-queens backtracking. Columns are filled in order with values in
/// ascending order, so solutions come out lexicographically sorted.
class QueensSearch {
public:
  /// Columns are filled left to right; rows, down-diagonals (v - j) and
  /// up-diagonals (v + j) are n-bit masks, rotated into row coordinates per
  /// column so each node costs O(1) word operations.
  explicit QueensSearch(int n) : n_(n), images_(n) {
    if (n > 64)
      throw Error("degree " + std::to_string(n) + " exceeds the 64-bit search limit");
    full_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  /// Visits every completion with pi(0) = first and, when second >= 0,
  /// pi(1) = second.
  template <typename Visit>
  void run_from(int first, Visit&& visit, int second = -1) {
    const std::uint64_t bit = std::uint64_t{1} << first;
    images_[0] = first;
    if (second < 0 || n_ == 1) {
      extend(1, bit, bit, bit, visit);
      return;
    }
    const std::uint64_t b1 = std::uint64_t{1} << second;
    if ((bit | rotl(bit, 1) | rotl(bit, n_ - 1)) & b1)
      return;
    images_[1] = second;
    extend(2, bit | b1, bit | (std::uint64_t{1} << mod(second - 1, n_)), bit | (std::uint64_t{1} << mod(second + 1, n_)),
           visit);
  }

private:
  std::uint64_t rotl(std::uint64_t m, int k) const {
    k %= n_;
    return k == 0 ? m : ((m << k) | (m >> (n_ - k))) & full_;
  }

  // rows: used row values; diff: used (v - j) mod n; sum: used (v + j) mod n.
  template <typename Visit>
  void extend(int j, std::uint64_t rows, std::uint64_t diff, std::uint64_t sum, Visit& visit) {
    if (j == n_) {
      visit(images_);
      return;
    }
    // v is blocked by diff when (v - j) is used, i.e. bit v of rotl(diff, j);
    // by sum when (v + j) is used, i.e. bit v of rotl(sum, n - j).
    std::uint64_t open = ~(rows | rotl(diff, j) | rotl(sum, n_ - j)) & full_;
    while (open) {
      const int v = std::countr_zero(open);
      open &= open - 1;
      images_[j] = v;
      extend(j + 1, rows | (std::uint64_t{1} << v), diff | (std::uint64_t{1} << mod(v - j, n_)),
             sum | (std::uint64_t{1} << mod(v + j, n_)), visit);
    }
  }

  int n_;
  std::uint64_t full_;
  std::vector<int> images_;
};

inline void check_enumerable(int n, bool allow_large) {
  if (n < 1)
    throw Error("degree must be positive");
  if (n > kEnumerateDefaultCap && !allow_large)
    throw Error("enumeration of degree " + std::to_string(n) + " exceeds the default cap of " +
                std::to_string(kEnumerateDefaultCap) + "; pass the large-degree override to proceed");
}

} // namespace detail

struct EnumerateOptions {
  bool allow_large = false;
  /// Explore the n choices of pi(1) on separate tasks; output order is
  /// unchanged.
  bool parallel = false;
};

namespace detail {

/// Panmagic permutations with pi(0) = 0, in lexicographic order.
inline std::vector<std::vector<int>> zero_branch(int n, bool parallel) {
  auto part = [n](int second) {
    std::vector<std::vector<int>> found;
    QueensSearch(n).run_from(0, [&](const std::vector<int>& im) { found.push_back(im); }, second);
    return found;
  };
  if (n == 1)
    return part(-1);
  std::vector<std::vector<std::vector<int>>> parts(n);
  if (parallel) {
    std::vector<std::future<std::vector<std::vector<int>>>> jobs;
    for (int v = 0; v < n; ++v)
      jobs.push_back(std::async(std::launch::async, part, v));
    for (int v = 0; v < n; ++v)
      parts[v] = jobs[v].get();
  } else {
    for (int v = 0; v < n; ++v)
      parts[v] = part(v);
  }
  std::vector<std::vector<int>> out;
  for (auto& p : parts)
    std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

} // namespace detail

/// Every panmagic permutation of degree n, sorted lexicographically.
///
/// Only the branch pi(0) = 0 is searched: x -> pi(x) + s preserves the
/// diagonal conditions and maps it onto the branch pi(0) = s.
inline std::vector<Permutation> enumerate_panmagic(int n, EnumerateOptions opts = {}) {
  detail::check_enumerable(n, opts.allow_large);
  const auto base = detail::zero_branch(n, opts.parallel);
  std::vector<Permutation> out;
  out.reserve(base.size() * n);
  std::vector<int> im(n);
  for (int s = 0; s < n; ++s)
    for (const auto& b : base) {
      for (int j = 0; j < n; ++j)
        im[j] = mod(b[j] + s, n);
      out.emplace_back(im);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// |Pi_n| without materializing the list.
inline std::uint64_t count_panmagic(int n, EnumerateOptions opts = {}) {
  detail::check_enumerable(n, opts.allow_large);
  std::uint64_t zero = 0;
  if (n == 1 || !opts.parallel) {
    detail::QueensSearch(n).run_from(0, [&](const std::vector<int>&) { ++zero; });
  } else {
    std::vector<std::future<std::uint64_t>> jobs;
    for (int v = 0; v < n; ++v)
      jobs.push_back(std::async(std::launch::async, [n, v] {
        std::uint64_t c = 0;
        detail::QueensSearch(n).run_from(0, [&](const std::vector<int>&) { ++c; }, v);
        return c;
      }));
    for (auto& j : jobs)
      zero += j.get();
  }
  return zero * static_cast<std::uint64_t>(n);
}

/// x -> 2x when p | x, else 3x (mod n), for composite n coprime to 6 and a
/// prime p dividing n. The result is checked to be panmagic and non-affine
/// before it is returned.
inline Permutation nonaffine_piecewise(int n, int p) {
  if (n < 1 || gcd(n, 6) != 1)
    throw Error("piecewise construction needs gcd(n, 6) = 1, got n = " + std::to_string(n));
  if (detail::is_prime(n) || n == 1)
    throw Error("piecewise construction needs composite n, got " + std::to_string(n));
  if (!detail::is_prime(p) || n % p != 0)
    throw Error(std::to_string(p) + " is not a prime divisor of " + std::to_string(n));
  std::vector<int> im(n);
  for (long x = 0; x < n; ++x)
    im[x] = mod((x % p == 0 ? 2 : 3) * x, n);
  Permutation pi(std::move(im));
  if (!is_panmagic_perm(pi))
    throw Error("piecewise construction is not panmagic for n = " + std::to_string(n) + ", p = " + std::to_string(p));
  if (is_affine(pi))
    throw Error("piecewise construction is affine for n = " + std::to_string(n) + ", p = " + std::to_string(p));
  return pi;
}

} // namespace panmagic
