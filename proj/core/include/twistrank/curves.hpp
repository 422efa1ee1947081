#pragma once

#include <optional>
#include <vector>

#include "twistrank/field.hpp"

namespace twistrank {

/// Monic cubic x^3 + e2 x^2 + e1 x + e0 over the field F.
template <Field F>
struct Cubic {
  F e2, e1, e0;

  F operator()(const F& x) const { return ((x + e2) * x + e1) * x + e0; }
  F derivative(const F& x) const {
    const F three = FieldOps<F>::from_int(3, x);
    const F two = FieldOps<F>::from_int(2, x);
    return (three * x + two * e2) * x + e1;
  }
  friend bool operator==(const Cubic&, const Cubic&) = default;
};

/// Affine point or the point at infinity.
template <Field F>
struct Point {
  bool infinity = true;
  F x{}, y{};

  static Point at_infinity() { return Point{}; }
  static Point affine(F x, F y) { return Point{false, std::move(x), std::move(y)}; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// The quadratic twist D y^2 = f(x).
template <Field F>
struct Twist {
  Cubic<F> f;
  F D;
};

template <Field F>
bool on_curve(const Point<F>& P, const Twist<F>& E) {
  if (P.infinity) return true;
  return E.D * P.y * P.y == E.f(P.x);
}

template <Field F>
Point<F> negate(const Point<F>& P) {
  if (P.infinity) return P;
  return Point<F>::affine(P.x, -P.y);
}

/// Chord-tangent law on D y^2 = f(x).
template <Field F>
Point<F> point_add(const Point<F>& P, const Point<F>& Q, const Twist<F>& E) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  F lambda;
  if (P.x == Q.x) {
    if (FieldOps<F>::is_zero(P.y + Q.y)) return Point<F>::at_infinity();
    const F two = FieldOps<F>::from_int(2, P.x);
    lambda = E.f.derivative(P.x) / (two * E.D * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  F x3 = E.D * lambda * lambda - E.f.e2 - P.x - Q.x;
  F y3 = -(lambda * (x3 - P.x) + P.y);
  return Point<F>::affine(std::move(x3), std::move(y3));
}

template <Field F>
Point<F> point_sub(const Point<F>& P, const Point<F>& Q, const Twist<F>& E) {
  return point_add(P, negate(Q), E);
}

/// n*P by double-and-add; negative n uses -P.
template <Field F>
Point<F> scalar_mul(long n, const Point<F>& P, const Twist<F>& E) {
  Point<F> base = n < 0 ? negate(P) : P;
  unsigned long m = n < 0 ? 0UL - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  Point<F> acc = Point<F>::at_infinity();
  while (m != 0) {
    if (m & 1UL) acc = point_add(acc, base, E);
    m >>= 1U;
    if (m != 0) base = point_add(base, base, E);
  }
  return acc;
}

using QCubic = Cubic<Rational>;
using QPoint = Point<Rational>;
using QTwist = Twist<Rational>;
using FPoint = Point<RatFunc>;
using FTwist = Twist<RatFunc>;

/// Coefficients of a monic cubic polynomial; throws DomainError if `f` is
/// not monic of degree 3 or is singular.
QCubic cubic_from_poly(const Poly& f);
Poly to_poly(const QCubic& f);
Rational discriminant(const QCubic& f);
/// Rational roots, ascending.
std::vector<Rational> rational_roots(const QCubic& f);

/// The curve g(u) y^2 = f(x) over Q(u).
FTwist twist_over_function_field(const QCubic& f, const Poly& g);

/// Lift of a rational point into the function field as constants.
FPoint to_function_point(const QPoint& P);

/// Height proxy: max of the bit sizes of the numerators and denominators.
std::size_t coordinate_height(const QPoint& P);

/// Specialization of a function-field point at u0; throws DomainError at a pole.
QPoint specialize_point(const FPoint& P, const Rational& u0);

/// Reduction mod p of a twist over Q; nullopt if p divides a denominator or
/// the twist is singular mod p.
std::optional<Twist<Fp>> reduce(const QTwist& E, std::uint64_t p);
std::optional<Point<Fp>> reduce(const QPoint& P, std::uint64_t p);

/// #E(F_p) for D y^2 = f(x) over F_p, p odd and of good reduction.
std::uint64_t count_points(const Twist<Fp>& E);

}  // namespace twistrank
