#include "twistrank/ratfunc.hpp"

#include <algorithm>

#include "twistrank/errors.hpp"

namespace twistrank {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  Rational inv = 1 / den.lead();
  num_ = num * inv;
  den_ = den * inv;
}

int RatFunc::degree() const { return std::max(num_.degree(), den_.degree()); }

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant");
  return num_.coeff(0);
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw DomainError("evaluation at a pole: " + twistrank::to_string(x));
  return num_.eval(x) / d;
}

RatFunc RatFunc::compose(const RatFunc& h) const {
  return twistrank::compose(num_, h) / twistrank::compose(den_, h);
}

RatFunc RatFunc::reflect() const { return RatFunc(num_.reflect(), den_.reflect()); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of the zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  return RatFunc(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) return *this = RatFunc(num_ + o.num_, den_);
  return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (den_ == o.den_) return *this = RatFunc(num_ - o.num_, den_);
  return *this = RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  return *this = RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DomainError("division by the zero rational function");
  return *this = RatFunc(num_ * o.den_, den_ * o.num_);
}

std::string RatFunc::to_string(char var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RatFunc compose(const Poly& f, const RatFunc& h) {
  if (f.is_zero()) return {};
  const int n = f.degree();
  const Poly& N = h.num();
  const Poly& D = h.den();
  std::vector<Poly> dpow(static_cast<std::size_t>(n) + 1);
  dpow[0] = Poly::constant(1);
  for (int i = 1; i <= n; ++i) dpow[i] = dpow[i - 1] * D;
  Poly acc, npow = Poly::constant(1);
  for (int i = 0; i <= n; ++i) {
    if (f.coeff(i) != 0) acc += f.coeff(i) * (npow * dpow[n - i]);
    if (i < n) npow = npow * N;
  }
  return RatFunc(std::move(acc), dpow[n]);
}

}  // namespace twistrank
