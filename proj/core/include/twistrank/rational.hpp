#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace twistrank {

using Integer = mpz_class;
/// Exact rational number. gmpxx keeps it canonical once `canonicalize` has
/// run, which every constructor in this library does.
using Rational = mpq_class;

/// Parses "n", "-n/d" or a plain decimal integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact square root with nonnegative value, or nullopt.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 || mpz_perfect_square_p(r.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  Rational out(n, d);
  out.canonicalize();
  return out;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace twistrank
