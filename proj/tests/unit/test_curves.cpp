#include <doctest.h>

#include <random>

#include "twistrank/errors.hpp"
#include "twistrank/isogeny.hpp"
#include "test_util.hpp"

using namespace twistrank;
using twistrank::test::P;

namespace {

const QCubic kXcubedMinusX{0, -1, 0};

QPoint pt(const Rational& x, const Rational& y) { return QPoint::affine(x, y); }

}  // namespace

TEST_CASE("2-torsion of y^2 = x^3 - x") {
  const QTwist E{kXcubedMinusX, 1};
  const QPoint T0 = pt(0, 0), T1 = pt(1, 0), Tm = pt(-1, 0);
  CHECK(point_add(T0, T1, E) == Tm);
  CHECK(point_add(T1, Tm, E) == T0);
  CHECK(scalar_mul(2, T0, E).infinity);
  CHECK(point_add(T0, QPoint::at_infinity(), E) == T0);
  CHECK(scalar_mul(1, T1, E) == T1);
  CHECK(scalar_mul(0, T1, E).infinity);
  CHECK(on_curve(QPoint::at_infinity(), E));
  CHECK_FALSE(on_curve(pt(0, 1), E));
}

TEST_CASE("group law on a twist with points of infinite order") {
  // -29274 y^2 = x^3 - x, the u = 2 member of the degree-12 family.
  const QTwist E{kXcubedMinusX, -29274};
  const QPoint P1 = pt(make_rational(7, 75), make_rational(2, 1125));
  const QPoint P3 = pt(make_rational(17, 24), make_rational(1, 288));
  REQUIRE(on_curve(P1, E));
  REQUIRE(on_curve(P3, E));
  CHECK(point_add(P1, negate(P1), E).infinity);
  CHECK(point_add(P1, P3, E) == point_add(P3, P1, E));
  const QPoint D3 = scalar_mul(2, P3, E);
  CHECK(on_curve(D3, E));
  CHECK_FALSE(D3.infinity);
  CHECK(coordinate_height(D3) > coordinate_height(P3));
  CHECK(scalar_mul(-3, P3, E) == negate(scalar_mul(3, P3, E)));
  CHECK(point_sub(scalar_mul(5, P3, E), scalar_mul(2, P3, E), E) == scalar_mul(3, P3, E));

  std::mt19937_64 rng(5);
  const std::vector<QPoint> gens{P1, P3, pt(0, 0)};
  auto random_point = [&] {
    QPoint acc = QPoint::at_infinity();
    for (const QPoint& g : gens) acc = point_add(acc, scalar_mul(static_cast<long>(rng() % 5) - 2, g, E), E);
    return acc;
  };
  for (int i = 0; i < 100; ++i) {
    const QPoint a = random_point(), b = random_point(), c = random_point();
    CHECK(on_curve(a, E));
    CHECK(point_add(point_add(a, b, E), c, E) == point_add(a, point_add(b, c, E), E));
    CHECK(point_add(a, b, E) == point_add(b, a, E));
  }
}

TEST_CASE("cubics") {
  CHECK(cubic_from_poly(P({0, -1, 0, 1})) == kXcubedMinusX);
  CHECK_THROWS_AS(cubic_from_poly(P({0, 0, 0, 1})), DomainError);
  CHECK_THROWS_AS(cubic_from_poly(P({0, -1, 0, 2})), DomainError);
  CHECK_THROWS_AS(cubic_from_poly(P({0, 1, 1})), DomainError);
  CHECK(discriminant(kXcubedMinusX) == 4);
  CHECK(rational_roots(kXcubedMinusX) == std::vector<Rational>{-1, 0, 1});
  CHECK(rational_roots(QCubic{0, 1, 1}).empty());
  CHECK(rational_roots(QCubic{make_rational(-3, 2), make_rational(1, 2), 0}) ==
        std::vector<Rational>{0, make_rational(1, 2), 1});
}

TEST_CASE("function-field points") {
  // (-(u^2 + 4)/2, 1/4) on -2(u^2+4)(u^4+6u^2+16) y^2 = x^3 + x^2 + 2x.
  const Poly g = P({-2}) * P({4, 0, 1}) * P({16, 0, 6, 0, 1});
  const FTwist E = twist_over_function_field(QCubic{1, 2, 0}, g);
  const FPoint Pu = FPoint::affine(RatFunc(P({-4, 0, -1})) / RatFunc(2), RatFunc(make_rational(1, 4)));
  CHECK(on_curve(Pu, E));
  const FPoint P2 = point_add(Pu, Pu, E);
  CHECK(on_curve(P2, E));
  const QPoint s = specialize_point(Pu, 2);
  CHECK(s == pt(-4, make_rational(1, 4)));
  CHECK(specialize_point(FPoint::at_infinity(), 3).infinity);
  const FPoint pole = FPoint::affine(RatFunc(1) / RatFunc::t(), RatFunc(1));
  CHECK_THROWS_AS(specialize_point(pole, 0), DomainError);
  CHECK(to_function_point(pt(1, 2)) == FPoint::affine(RatFunc(1), RatFunc(2)));
}

TEST_CASE("arithmetic mod p") {
  const std::uint64_t p = 1000003;
  const Fp a(5, p), b(7, p);
  CHECK((a / b) * b == a);
  CHECK(a.inverse() * a == Fp(1, p));
  CHECK(Fp::from_rational(make_rational(1, 2), p) * Fp(2, p) == Fp(1, p));
  CHECK(Fp::from_rational(Rational(-1), p) == Fp(p - 1, p));
  CHECK(Fp(4, p).legendre() == 1);
  CHECK(Fp(0, p).legendre() == 0);
  CHECK(Fp(2, 11).legendre() == -1);
  CHECK(Fp(3, 11).pow(10) == Fp(1, 11));
}

TEST_CASE("point counts agree with brute force") {
  for (std::uint64_t p : {53ULL, 59ULL, 61ULL, 101ULL}) {
    for (long D : {1L, -1L, 6L, -29274L}) {
      const auto E = reduce(QTwist{kXcubedMinusX, Rational(D)}, p);
      if (!E) continue;
      std::uint64_t brute = 1;
      for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y)
          if (E->D * Fp(y, p) * Fp(y, p) == E->f(Fp(x, p))) ++brute;
      CHECK(count_points(*E) == brute);
    }
  }
  CHECK_FALSE(reduce(QTwist{kXcubedMinusX, Rational(-29274)}, 41));
  CHECK_FALSE(reduce(QPoint::affine(make_rational(1, 3), 0), 3));
  CHECK(reduce(QPoint::at_infinity(), 7)->infinity);
}

TEST_CASE("2-isogeny quotient") {
  // f = x(x - b)(x - a^2 b) with a = 2, b = 1.
  const QCubic f = cubic_from_poly(P({0, 1}) * P({-1, 1}) * P({-4, 1}));
  const Isogeny iso = two_isogeny_quotient(f);
  CHECK(iso.degree == 2);
  CHECK(iso.target == f);
  CHECK(to_poly(iso.source) == P({0, 1}) * P({1, 1}) * P({9, 1}));
  CHECK(iso.verify());
  CHECK(compose(to_poly(iso.target), iso.phi_x) == RatFunc(to_poly(iso.source)) * iso.phi_y * iso.phi_y);

  // a = 3, b = 2: the root -(a-1)^2 b = -8 of the source goes to (0, 0).
  const QCubic f2 = cubic_from_poly(P({0, 1}) * P({-2, 1}) * P({-18, 1}));
  const Isogeny iso2 = two_isogeny_quotient(f2);
  CHECK(iso2.phi_x.eval(-8) == 0);
  CHECK(iso2.verify());
  CHECK_THROWS_AS(two_isogeny_quotient(QCubic{0, 0, 1}), DomainError);
}

TEST_CASE("3-isogeny") {
  const Isogeny iso = three_isogeny(3, 1);
  CHECK(iso.degree == 3);
  CHECK(iso.target == QCubic{make_rational(9, 4), 3, 1});
  CHECK(iso.verify());
  // Tilde f = X^3 - (3b^2/4c) X^2 + (b(b^3 - 54c^2)/(6c^2)) X - (b^3 - 54c^2)^2/(108c^3).
  CHECK(iso.source == QCubic{make_rational(-27, 4), make_rational(-27, 2), make_rational(-27, 4)});
  CHECK_THROWS_AS(three_isogeny(0, 1), HypothesisError);
  CHECK_THROWS_AS(three_isogeny(3, 0), HypothesisError);
  try {
    (void)three_isogeny(6, 2);
    FAIL("expected rejection of b^3 = 54c^2");
  } catch (const HypothesisError& e) {
    CHECK(e.hypothesis() == "b^3 != 54c^2");
  }
  for (auto [b, c] : {std::pair{1L, 1L}, std::pair{-2L, 5L}, std::pair{7L, -3L}}) CHECK(three_isogeny(b, c).verify());
}
