#pragma once

#include "twistrank/curves.hpp"

namespace twistrank {

/// (X, Y) -> (phi_x(X), Y phi_y(X)) from Y^2 = source(X) to y^2 = target(x),
/// so target(phi_x) = source * phi_y^2.
struct Isogeny {
  QCubic source;
  QCubic target;
  RatFunc phi_x;
  RatFunc phi_y;
  unsigned degree = 0;

  /// Exact check of target(phi_x) = source * phi_y^2.
  bool verify() const;
};

/// For f with f(0) = 0: the curve E' = E / <(0,0)> with the dual-direction map
/// E' -> E. For f = x(x - b)(x - a^2 b) the source is
/// X(X + (a-1)^2 b)(X + (a+1)^2 b).
Isogeny two_isogeny_quotient(const QCubic& f);

/// The degree-3 isogeny onto y^2 = x^3 + (b^2/4c) x^2 + b x + c from its
/// quotient by {O, (0, +-sqrt c)}. Requires bc != 0 and b^3 != 54 c^2.
Isogeny three_isogeny(const Rational& b, const Rational& c);

}  // namespace twistrank
