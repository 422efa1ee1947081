#include "twistrank/isogeny.hpp"

namespace twistrank {

bool Isogeny::verify() const {
  return compose(to_poly(target), phi_x) == RatFunc(to_poly(source)) * phi_y * phi_y;
}

namespace {

Isogeny checked(Isogeny iso) {
  if (!iso.verify()) throw CheckFailure("isogeny_identity", "target(phi_x) != source * phi_y^2");
  return iso;
}

}  // namespace

Isogeny two_isogeny_quotient(const QCubic& f) {
  if (f.e0 != 0) throw DomainError("two_isogeny_quotient: (0,0) is not on the curve");
  const Rational& A = f.e2;
  const Rational& B = f.e1;
  const Rational s = A * A - 4 * B;
  const QCubic source = cubic_from_poly(Poly(std::vector<Rational>{0, s, -2 * A, 1}));
  const Poly X = Poly::t();
  RatFunc phi_x(Poly(std::vector<Rational>{s, -2 * A, 1}), Poly::monomial(4, 1));
  RatFunc phi_y(Poly(std::vector<Rational>{-s, 0, 1}), Poly::monomial(8, 2));
  return checked(Isogeny{source, f, std::move(phi_x), std::move(phi_y), 2});
}

Isogeny three_isogeny(const Rational& b, const Rational& c) {
  if (b == 0 || c == 0) throw HypothesisError("bc != 0", "three_isogeny: b or c is zero");
  const Rational m = b * b * b - 54 * c * c;
  if (m == 0) throw HypothesisError("b^3 != 54c^2", "three_isogeny: singular curve");
  const QCubic target = cubic_from_poly(Poly(std::vector<Rational>{c, b, b * b / (4 * c), 1}));
  const Rational c2 = c * c, c3 = c2 * c, b2 = b * b, b3 = b2 * b;
  const QCubic source = cubic_from_poly(Poly(std::vector<Rational>{
      -(m * m) / (108 * c3), b * m / (6 * c2), -3 * b2 / (4 * c), 1}));
  const Rational lin = 9 * b2 * b2 * c - 486 * b * c3;
  RatFunc phi_x(Poly(std::vector<Rational>{-(b3 * b3 - 108 * b3 * c2 + 2916 * c2 * c2), lin,
                                           -27 * b2 * c2, 27 * c3}),
                Poly::monomial(243 * c3, 2));
  RatFunc phi_y(Poly(std::vector<Rational>{2 * b3 * b3 - 216 * b3 * c2 + 5832 * c2 * c2, -lin, 0,
                                           27 * c3}),
                Poly::monomial(729 * c3, 3));
  return checked(Isogeny{source, target, std::move(phi_x), std::move(phi_y), 3});
}

}  // namespace twistrank
