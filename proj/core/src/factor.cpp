#include "twistrank/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "twistrank/errors.hpp"
#include "twistrank/field.hpp"

namespace twistrank {

namespace {

constexpr std::uint32_t kTrialLimit = 1000;
constexpr unsigned kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_below(kTrialLimit);
  return primes;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return r;
}

bool fits_u64(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Integer& n) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Integer from_u64(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

// Brent's cycle finding with batched gcds. Returns a nontrivial divisor of
// the odd composite n, or n itself if this polynomial constant failed.
std::uint64_t rho_u64(std::uint64_t n, std::uint64_t c) {
  auto step = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
  std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
  const std::uint64_t batch = 128;
  for (std::uint64_t r = 1; g == 1; r <<= 1U) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
        y = step(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

Integer rho_mpz(const Integer& n, unsigned long c) {
  auto step = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  Integer y = 2, x = 2, ys = 2, q = 1, g = 1;
  const unsigned long batch = 128;
  for (unsigned long r = 1; g == 1; r <<= 1U) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    for (unsigned long k = 0; k < r && g == 1; k += batch) {
      ys = y;
      for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
        y = step(y);
        Integer diff = abs(x - y);
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(Integer(abs(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

void split_u64(std::uint64_t n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(from_u64(n));
    return;
  }
  std::uint64_t d = n;
  for (std::uint64_t c = 1; d == n; ++c) d = rho_u64(n, c);
  split_u64(d, out);
  split_u64(n / d, out);
}

void split(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    split_u64(to_u64(n), out);
    return;
  }
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    Integer root = sqrt(n);
    split(root, out);
    split(root, out);
    return;
  }
  Integer d = n;
  for (unsigned long c = 1; d == n; ++c) d = rho_mpz(n, c);
  split(d, out);
  split(Integer(n / d), out);
}

}  // namespace

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 3) return primes;
  std::vector<bool> composite(limit, false);
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (unsigned a : kWitnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (unsigned p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t()) != 0) {
    d /= 2;
    ++s;
  }
  const Integer n_minus_1 = n - 1;
  Integer x;
  for (unsigned a : kWitnesses) {
    Integer base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factor_integer(const Integer& n) {
  if (n == 0) throw DomainError("factor_integer: zero has no factorization");
  Integer m = abs(n);
  std::vector<Integer> primes;
  if (fits_u64(m)) {
    std::uint64_t v = to_u64(m);
    for (std::uint32_t p : small_primes()) {
      if (std::uint64_t{p} * p > v) break;
      while (v % p == 0) {
        primes.emplace_back(p);
        v /= p;
      }
    }
    std::vector<Integer> rest;
    split_u64(v, rest);
    primes.insert(primes.end(), rest.begin(), rest.end());
    m = 1;
  }
  for (std::uint32_t p : small_primes()) {
    if (m == 1) break;
    if (Integer(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      primes.emplace_back(p);
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  split(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (const Integer& p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw DomainError("squarefree_part: n = 0");
  Integer d = sgn(n) < 0 ? -1 : 1;
  for (const PrimePower& pp : factor_integer(n)) {
    if (pp.exponent % 2 == 1) d *= pp.prime;
  }
  return d;
}

Integer squarefree_part(const Rational& q) {
  if (q == 0) throw DomainError("squarefree_part: q = 0");
  return squarefree_part(Integer(q.get_num() * q.get_den()));
}

void SquarefreeAccumulator::add_prime(const Integer& p, unsigned e) {
  auto it = std::lower_bound(exps_.begin(), exps_.end(), p,
                             [](const auto& entry, const Integer& key) { return entry.first < key; });
  if (it != exps_.end() && it->first == p) {
    it->second += e;
  } else {
    exps_.insert(it, {p, e});
  }
}

void SquarefreeAccumulator::multiply(const Integer& factor) {
  if (factor == 0) {
    zero_ = true;
    return;
  }
  if (factor < 0) negative_ = !negative_;
  if (abs(factor) == 1) return;
  for (const PrimePower& pp : factor_integer(factor)) add_prime(pp.prime, pp.exponent);
}

void SquarefreeAccumulator::multiply(std::int64_t factor) {
  multiply(Integer(static_cast<long>(factor)));
}

Integer SquarefreeAccumulator::result() const {
  if (zero_) throw DomainError("SquarefreeAccumulator: product is zero");
  Integer d = negative_ ? -1 : 1;
  for (const auto& [p, e] : exps_) {
    if (e % 2 == 1) d *= p;
  }
  return d;
}

std::vector<Integer> SquarefreeAccumulator::odd_primes() const {
  std::vector<Integer> out;
  for (const auto& [p, e] : exps_) {
    if (e % 2 == 1) out.push_back(p);
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + std::string(text));
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

}  // namespace twistrank
