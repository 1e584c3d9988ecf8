#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "panmagic/scalar.hpp"

namespace panmagic {

/// Dense n x n matrix of exact rationals, rows and columns indexed by
/// {0, ..., n-1}.
class SquareMatrix {
public:
  SquareMatrix() = default;

  explicit SquareMatrix(int n, const Scalar& fill = Scalar(0)) : n_(n), entries_(checked_size(n), fill) {}

  /// Row-major entries, scaled by `scale`. Used for transcribed fixtures.
  static SquareMatrix from_integers(int n, std::initializer_list<long> rows, const Scalar& scale = Scalar(1)) {
    if (rows.size() != static_cast<std::size_t>(n) * n)
      throw Error("expected " + std::to_string(n * n) + " entries, got " + std::to_string(rows.size()));
    SquareMatrix m(n);
    std::size_t k = 0;
    for (long v : rows)
      m.entries_[k++] = Scalar(v) * scale;
    return m;
  }

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  int order() const { return n_; }

  Scalar& operator()(int i, int j) { return entries_[index(i, j)]; }
  const Scalar& operator()(int i, int j) const { return entries_[index(i, j)]; }

  /// Entry access with both indices reduced mod n.
  const Scalar& wrapped(long i, long j) const { return (*this)(mod(i, n_), mod(j, n_)); }

  std::span<const Scalar> entries() const { return entries_; }

  Scalar total() const {
    Scalar s = 0;
    for (const auto& x : entries_)
      s += x;
    return s;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      entries_[k] += o.entries_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      entries_[k] -= o.entries_[k];
    return *this;
  }
  SquareMatrix& operator*=(const Scalar& c) {
    for (auto& x : entries_)
      x *= c;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(const Scalar& c, SquareMatrix a) { return a *= c; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

  void require_same_order(const SquareMatrix& o) const {
    if (o.n_ != n_)
      throw Error("order mismatch: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
  }

private:
  static std::size_t checked_size(int n) {
    if (n < 1)
      throw Error("matrix order must be positive, got " + std::to_string(n));
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<Scalar> entries_;
};

/// A bijection of {0, ..., n-1}, stored as its image sequence.
class Permutation {
public:
  Permutation() = default;

  /// Throws unless `images` is a bijection of {0, ..., images.size()-1}.
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = degree();
    if (n < 1)
      throw Error("permutation degree must be positive");
    std::vector<bool> seen(n, false);
    for (int v : images_) {
      if (v < 0 || v >= n || seen[v])
        throw Error("not a bijection: image " + std::to_string(v) + " on degree " + std::to_string(n));
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(n);
    for (int j = 0; j < n; ++j)
      im[j] = j;
    return Permutation(std::move(im));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[j]; }
  std::span<const int> images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int j = 0; j < degree(); ++j)
      inv[images_[j]] = j;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    os << '[';
    for (int j = 0; j < p.degree(); ++j)
      os << (j ? " " : "") << p(j);
    return os << ']';
  }

private:
  std::vector<int> images_;
};

} // namespace panmagic
