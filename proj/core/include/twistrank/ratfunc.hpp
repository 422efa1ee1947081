#pragma once

#include <optional>
#include <string>

#include "twistrank/poly.hpp"

namespace twistrank {

/// Element of Q(t): num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly::constant(1)) {}
  RatFunc(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rational(c)) {}                                          // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(1)) {}                    // NOLINT
  RatFunc(Poly num, Poly den);
  static RatFunc t() { return RatFunc(Poly::t()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// max(deg num, deg den), the degree of the map P^1 -> P^1.
  int degree() const;
  /// Value as a constant; throws DomainError if not constant.
  Rational constant_value() const;

  /// Throws DomainError at a pole.
  Rational eval(const Rational& x) const;
  bool has_pole_at(const Rational& x) const { return den_.eval(x) == 0; }
  /// r(t) -> r(h(t)).
  RatFunc compose(const RatFunc& h) const;
  /// r(t) -> r(-t).
  RatFunc reflect() const;
  RatFunc inverse() const;
  RatFunc pow(int n) const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  std::string to_string(char var = 't') const;

 private:
  Poly num_;
  Poly den_;
};

/// f(h(t)) reduced.
RatFunc compose(const Poly& f, const RatFunc& h);

/// r = k * j^2 with k a squarefree polynomial whose coefficients are
/// coprime integers up to a squarefree integer factor carrying the sign.
struct SquareClass {
  Poly k;
  RatFunc j;
};

/// Throws DomainError for r = 0. The decomposition is verified before return.
SquareClass square_class(const RatFunc& r);

/// Exact square root of r in Q(t), or nullopt. The returned root has a
/// numerator with positive leading coefficient.
std::optional<RatFunc> sqrt_exact(const RatFunc& r);

}  // namespace twistrank
