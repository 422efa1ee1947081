#include "twistrank/curves.hpp"

#include <algorithm>
#include <set>

#include "twistrank/factor.hpp"

namespace twistrank {

Fp Fp::from_rational(const Rational& q, std::uint64_t p) {
  const Integer P = static_cast<unsigned long>(p);
  Integer num = q.get_num() % P, den = q.get_den() % P;
  if (num < 0) num += P;
  if (den == 0) throw DomainError("denominator vanishes mod p");
  Fp n(num.get_ui(), p), d(den.get_ui(), p);
  return n / d;
}

Fp Fp::pow(std::uint64_t e) const {
  Fp result(1, p_), base = *this;
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw DomainError("inverse of zero mod p");
  return pow(p_ - 2);
}

int Fp::legendre() const {
  if (v_ == 0) return 0;
  return pow((p_ - 1) / 2).v_ == 1 ? 1 : -1;
}

QCubic cubic_from_poly(const Poly& f) {
  if (f.degree() != 3 || f.lead() != 1) throw DomainError("expected a monic cubic");
  QCubic c{f.coeff(2), f.coeff(1), f.coeff(0)};
  if (discriminant(c) == 0) throw DomainError("singular cubic: discriminant is zero");
  return c;
}

Poly to_poly(const QCubic& f) { return Poly(std::vector<Rational>{f.e0, f.e1, f.e2, 1}); }

Rational discriminant(const QCubic& f) { return discriminant_cubic(to_poly(f)); }

namespace {

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const PrimePower& pp : factor_integer(n)) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const QCubic& f) {
  Poly p = to_poly(f);
  std::set<Rational> roots;
  while (!p.is_constant() && p.coeff(0) == 0) {
    roots.insert(0);
    p = exact_div(p, Poly::t());
  }
  if (!p.is_constant()) {
    const Poly ip = p.primitive();
    const Integer lead = ip.lead().get_num();
    const Integer cst = abs(Integer(ip.coeff(0).get_num()));
    const std::vector<Integer> qs = divisors(lead);
    for (const Integer& num : divisors(cst)) {
      for (const Integer& den : qs) {
        for (int sign : {1, -1}) {
          Rational r(num * sign, den);
          r.canonicalize();
          if (ip.eval(r) == 0) roots.insert(r);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

FTwist twist_over_function_field(const QCubic& f, const Poly& g) {
  return FTwist{Cubic<RatFunc>{RatFunc(f.e2), RatFunc(f.e1), RatFunc(f.e0)}, RatFunc(g)};
}

FPoint to_function_point(const QPoint& P) {
  if (P.infinity) return FPoint::at_infinity();
  return FPoint::affine(RatFunc(P.x), RatFunc(P.y));
}

std::size_t coordinate_height(const QPoint& P) {
  if (P.infinity) return 0;
  std::size_t h = 0;
  for (const Rational* q : {&P.x, &P.y}) {
    h = std::max(h, mpz_sizeinbase(q->get_num_mpz_t(), 2));
    h = std::max(h, mpz_sizeinbase(q->get_den_mpz_t(), 2));
  }
  return h;
}

QPoint specialize_point(const FPoint& P, const Rational& u0) {
  if (P.infinity) return QPoint::at_infinity();
  return QPoint::affine(P.x.eval(u0), P.y.eval(u0));
}

std::optional<Twist<Fp>> reduce(const QTwist& E, std::uint64_t p) {
  const Integer P = static_cast<unsigned long>(p);
  for (const Rational* q : {&E.f.e2, &E.f.e1, &E.f.e0, &E.D}) {
    if (q->get_den() % P == 0) return std::nullopt;
  }
  Twist<Fp> R{Cubic<Fp>{Fp::from_rational(E.f.e2, p), Fp::from_rational(E.f.e1, p),
                        Fp::from_rational(E.f.e0, p)},
              Fp::from_rational(E.D, p)};
  const Rational disc = discriminant(E.f);
  if (R.D.is_zero() || disc.get_num() % P == 0) return std::nullopt;
  return R;
}

std::optional<Point<Fp>> reduce(const QPoint& P, std::uint64_t p) {
  if (P.infinity) return Point<Fp>::at_infinity();
  const Integer M = static_cast<unsigned long>(p);
  if (P.x.get_den() % M == 0 || P.y.get_den() % M == 0) return std::nullopt;
  return Point<Fp>::affine(Fp::from_rational(P.x, p), Fp::from_rational(P.y, p));
}

std::uint64_t count_points(const Twist<Fp>& E) {
  const std::uint64_t p = E.D.modulus();
  long sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) sum += (E.D * E.f(Fp(x, p))).legendre();
  return static_cast<std::uint64_t>(static_cast<long>(p) + 1 + sum);
}

}  // namespace twistrank
