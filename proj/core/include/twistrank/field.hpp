#pragma once

#include <concepts>
#include <cstdint>
#include <string>

#include "twistrank/errors.hpp"
#include "twistrank/ratfunc.hpp"

namespace twistrank {

__extension__ typedef unsigned __int128 uint128;

/// Residue mod a prime below 2^63. Both operands of a binary operation must
/// share the modulus.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}
  /// Reduction of a rational whose denominator is a unit mod p.
  static Fp from_rational(const Rational& q, std::uint64_t p);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  Fp inverse() const;
  /// Legendre symbol: 0, 1 or -1.
  int legendre() const;

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Fp operator+(Fp a, Fp b) { return Fp(a.v_ + b.v_ >= a.p_ ? a.v_ + b.v_ - a.p_ : a.v_ + b.v_, a.p_); }
  friend Fp operator-(Fp a, Fp b) { return a + (-b); }
  friend Fp operator*(Fp a, Fp b) {
    return Fp(static_cast<std::uint64_t>(static_cast<uint128>(a.v_) * b.v_ % a.p_), a.p_);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  friend bool operator==(const Fp&, const Fp&) = default;
  Fp pow(std::uint64_t e) const;

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

/// Field constants and predicates, keyed on the element type. `like` supplies
/// context such as the modulus.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational zero(const Rational&) { return 0; }
  static Rational one(const Rational&) { return 1; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational from_int(long n, const Rational&) { return n; }
  static std::string to_string(const Rational& x) { return twistrank::to_string(x); }
};

template <>
struct FieldOps<RatFunc> {
  static RatFunc zero(const RatFunc&) { return {}; }
  static RatFunc one(const RatFunc&) { return RatFunc(1); }
  static bool is_zero(const RatFunc& x) { return x.is_zero(); }
  static RatFunc from_int(long n, const RatFunc&) { return RatFunc(n); }
  static std::string to_string(const RatFunc& x) { return x.to_string('u'); }
};

template <>
struct FieldOps<Fp> {
  static Fp zero(const Fp& like) { return Fp(0, like.modulus()); }
  static Fp one(const Fp& like) { return Fp(1, like.modulus()); }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static Fp from_int(long n, const Fp& like) {
    const auto p = static_cast<long>(like.modulus());
    return Fp(static_cast<std::uint64_t>(((n % p) + p) % p), like.modulus());
  }
  static std::string to_string(const Fp& x) { return std::to_string(x.value()); }
};

template <class F>
concept Field = requires(F a, F b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { FieldOps<F>::is_zero(a) } -> std::convertible_to<bool>;
  { FieldOps<F>::zero(a) } -> std::convertible_to<F>;
  { FieldOps<F>::one(a) } -> std::convertible_to<F>;
};

}  // namespace twistrank
