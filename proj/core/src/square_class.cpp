#include "twistrank/errors.hpp"
#include "twistrank/factor.hpp"
#include "twistrank/ratfunc.hpp"

namespace twistrank {

namespace {

Integer exact_isqrt(const Integer& n) {
  Integer r = sqrt(n);
  if (r * r != n) throw CheckFailure("square_class", "constant is not a square");
  return r;
}

}  // namespace

SquareClass square_class(const RatFunc& r) {
  if (r.is_zero()) throw DomainError("square_class of zero");
  // r = num/den = (num*den)/den^2, so only num*den needs splitting.
  const Poly prod = r.num() * r.den();
  Poly odd = Poly::constant(1), even = Poly::constant(1);
  for (const auto& [fi, mi] : squarefree_decompose(prod)) {
    if (mi % 2 == 1) odd *= fi;
    if (mi >= 2) even *= fi.pow(mi / 2);
  }
  const Poly prim = odd.primitive();
  // prod = lead * odd * even^2 and odd = prim * (odd.lead / prim.lead).
  Rational c = prod.lead() * odd.lead() / prim.lead();
  c.canonicalize();
  const Integer s = squarefree_part(c);
  Rational w2 = c / s;
  w2.canonicalize();
  Rational w(exact_isqrt(w2.get_num()), exact_isqrt(w2.get_den()));
  w.canonicalize();

  SquareClass out{prim * Rational(s), RatFunc(even * w, r.den())};
  if (RatFunc(out.k) * out.j * out.j != r) {
    throw CheckFailure("square_class", "k*j^2 does not re-expand to the input");
  }
  return out;
}

std::optional<RatFunc> sqrt_exact(const RatFunc& r) {
  if (r.is_zero()) return RatFunc();
  SquareClass sc = square_class(r);
  if (sc.k != Poly::constant(1)) return std::nullopt;
  if (sc.j.num().lead() < 0) return -sc.j;
  return sc.j;
}

}  // namespace twistrank
