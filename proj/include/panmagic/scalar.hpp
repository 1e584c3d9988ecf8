#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace panmagic {

/// Exact rational scalar. GMP keeps every value in canonical form
/// (positive denominator, gcd 1), so equality is structural.
using Scalar = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Base class for every error the library reports.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Scalar make_scalar(long num, long den = 1) {
  if (den == 0)
    throw Error("zero denominator");
  return Scalar(Integer(num), Integer(den));
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
inline std::string to_string(const Scalar& x) { return x.str(); }

/// Parses `p`, `-p` or `p/q` (optionally `-p/q`) with q > 0.
/// Returns nullopt for anything else.
inline std::optional<Scalar> parse_scalar(std::string_view tok) {
  auto digits = [](std::string_view s) {
    if (s.empty())
      return false;
    for (char c : s)
      if (c < '0' || c > '9')
        return false;
    return true;
  };
  std::string_view body = tok;
  if (!body.empty() && body.front() == '-')
    body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    return std::nullopt;
  Integer q{std::string(den)};
  if (q == 0)
    return std::nullopt;
  Integer p{std::string(num)};
  if (tok.front() == '-')
    p = -p;
  return Scalar(p, q);
}

/// Reduces `a` into {0, ..., n-1}.
inline int mod(long a, int n) {
  long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

inline long gcd(long a, long b) { return std::gcd(a, b); }

} // namespace panmagic
