#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "twistrank/rational.hpp"

namespace twistrank {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// Trailing zeros are stripped on construction, so the zero polynomial has
/// no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<long> coeffs);
  static Poly constant(const Rational& c);
  /// c * t^n
  static Poly monomial(const Rational& c, unsigned n);
  static Poly t() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of t^i, zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& lead() const;

  Rational eval(const Rational& x) const;
  Poly derivative() const;
  Poly monic() const;
  /// Scaled so the coefficients are coprime integers with positive lead.
  Poly primitive() const;
  /// Positive rational c with *this = c * primitive(), up to the lead's sign.
  Rational content() const;
  /// p(t) -> p(q(t)).
  Poly compose(const Poly& q) const;
  /// p(t) -> p(-t).
  Poly reflect() const;
  Poly pow(unsigned n) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly&, const Poly&) = default;

  std::string to_string(char var = 't') const;

 private:
  std::vector<Rational> c_;
  void trim();
};

/// Quotient and remainder with deg rem < deg q. Throws DomainError if q = 0.
std::pair<Poly, Poly> divmod(const Poly& p, const Poly& q);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& p, const Poly& q);
/// Exact quotient; throws DomainError when q does not divide p.
Poly exact_div(const Poly& p, const Poly& q);

/// Squarefree factorization by Yun's algorithm: p = lead * prod f_i^{m_i}
/// with each f_i monic, squarefree, pairwise coprime. Constants give [].
std::vector<std::pair<Poly, unsigned>> squarefree_decompose(const Poly& p);
bool is_squarefree(const Poly& p);

/// Discriminant of a monic cubic t^3 + e2 t^2 + e1 t + e0.
Rational discriminant_cubic(const Poly& f);

/// Resultant by the Euclidean algorithm.
Rational resultant(const Poly& p, const Poly& q);

}  // namespace twistrank
