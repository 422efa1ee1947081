#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twistrank/rational.hpp"

namespace twistrank {

/// Prime with its multiplicity.
struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes below `limit` by an Eratosthenes sieve.
std::vector<std::uint32_t> primes_below(std::uint32_t limit);

/// Miller-Rabin with the first thirteen prime bases. Deterministic for
/// n < 3.3e24; above that it is a strong probable-prime test.
bool is_probable_prime(const Integer& n);
bool is_prime_u64(std::uint64_t n);

/// Full factorization of |n| (n != 0), primes ascending. Trial division,
/// then Brent's variant of Pollard rho on the cofactor.
std::vector<PrimePower> factor_integer(const Integer& n);

/// The squarefree D with n = D v^2, v > 0 and sign(D) = sign(n).
Integer squarefree_part(const Integer& n);

/// Squarefree part of a nonzero rational: D with q = D w^2, w rational.
Integer squarefree_part(const Rational& q);

/// Accumulates prime exponents of several factors of one integer, so the
/// squarefree part of a product can be had without multiplying it out.
class SquarefreeAccumulator {
 public:
  void multiply(const Integer& factor);
  void multiply(std::int64_t factor);
  /// Signed squarefree part of the product so far, with its prime support.
  Integer result() const;
  std::vector<Integer> odd_primes() const;
  bool is_zero() const { return zero_; }

 private:
  std::vector<std::pair<Integer, unsigned>> exps_;
  bool negative_ = false;
  bool zero_ = false;
  void add_prime(const Integer& p, unsigned e);
};

}  // namespace twistrank
