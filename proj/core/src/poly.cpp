#include "twistrank/poly.hpp"

#include <algorithm>
#include <sstream>

#include "twistrank/errors.hpp"

namespace twistrank {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (Rational& x : c_) x.canonicalize();
  trim();
}

Poly::Poly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, unsigned n) {
  std::vector<Rational> v(n + 1);
  v[n] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

const Rational& Poly::lead() const {
  if (c_.empty()) throw DomainError("lead of the zero polynomial");
  return c_.back();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / lead());
}

Rational Poly::content() const {
  if (is_zero()) return 0;
  Integer num = 0, den = 1;
  for (const Rational& x : c_) {
    num = gcd(num, Integer(x.get_num()));
    den = lcm(den, Integer(x.get_den()));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Poly Poly::primitive() const {
  if (is_zero()) return {};
  Rational c = content();
  if (lead() < 0) c = -c;
  return *this * Rational(1 / c);
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * q;
    acc += constant(*it);
  }
  return acc;
}

Poly Poly::reflect() const {
  std::vector<Rational> v = c_;
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return Poly(std::move(v));
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(1), base = *this;
  while (n != 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n != 0) base = base * base;
  }
  return result;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Rational& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  Poly r;
  r.c_ = std::move(v);
  r.trim();
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (Rational& x : c_) x *= s;
  return *this;
}

std::string Poly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& x = c_[i];
    if (x == 0) continue;
    Rational mag = abs(x);
    if (first) {
      if (x < 0) out << '-';
    } else {
      out << (x < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) out << twistrank::to_string(mag);
    if (i >= 1) out << (mag != 1 ? "*" : "") << var;
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

std::pair<Poly, Poly> divmod(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw DomainError("polynomial division by zero");
  if (p.degree() < q.degree()) return {Poly(), p};
  std::vector<Rational> rem = p.coeffs();
  const std::vector<Rational>& d = q.coeffs();
  const std::size_t dq = d.size() - 1;
  const Rational inv_lead = 1 / d.back();
  std::vector<Rational> quot(rem.size() - dq);
  for (std::size_t i = quot.size(); i-- > 0;) {
    Rational factor = rem[i + dq] * inv_lead;
    quot[i] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= dq; ++j) rem[i + j] -= factor * d[j];
  }
  rem.resize(dq);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& p, const Poly& q) {
  Poly a = p.primitive(), b = q.primitive();
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second.primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly exact_div(const Poly& p, const Poly& q) {
  auto [quot, rem] = divmod(p, q);
  if (!rem.is_zero()) throw DomainError("exact_div: divisor does not divide");
  return quot;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decompose(const Poly& p) {
  if (p.is_zero()) throw DomainError("squarefree_decompose: zero polynomial");
  std::vector<std::pair<Poly, unsigned>> out;
  if (p.is_constant()) return out;
  const Poly f = p.monic();
  const Poly df = f.derivative();
  const Poly a0 = gcd(f, df);
  Poly b = exact_div(f, a0);
  Poly c = exact_div(df, a0);
  Poly d = c - b.derivative();
  for (unsigned i = 1; !b.is_constant(); ++i) {
    Poly a = gcd(b, d);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
    if (!a.is_constant()) out.emplace_back(std::move(a), i);
  }

  Poly check = Poly::constant(p.lead());
  for (const auto& [fi, mi] : out) check *= fi.pow(mi);
  if (check != p) throw CheckFailure("squarefree_reexpansion", "Yun decomposition does not re-expand");
  return out;
}

bool is_squarefree(const Poly& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).is_constant();
}

Rational discriminant_cubic(const Poly& f) {
  if (f.degree() != 3 || f.lead() != 1) throw DomainError("discriminant_cubic: expects a monic cubic");
  const Rational& a = f.coeffs()[2];
  const Rational& b = f.coeffs()[1];
  const Rational& c = f.coeffs()[0];
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

Rational resultant(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  Poly a = p, b = q;
  Rational acc = 1;
  while (true) {
    const int da = a.degree(), db = b.degree();
    if (db == 0) {
      Rational lb = b.lead();
      Rational r = 1;
      for (int i = 0; i < da; ++i) r *= lb;
      return acc * r;
    }
    Poly r = divmod(a, b).second;
    if (r.is_zero()) return 0;
    const int dr = r.degree();
    if ((da * db) % 2 == 1) acc = -acc;
    Rational lb = b.lead();
    for (int i = 0; i < da - dr; ++i) acc *= lb;
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace twistrank
