#include "twistrank/densitylab.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <tuple>

#include "twistrank/errors.hpp"
#include "twistrank/factor.hpp"

namespace twistrank {

namespace {

std::vector<Integer> integer_coeffs(const Poly& p) {
  std::vector<Integer> out;
  for (const Rational& c : p.coeffs()) {
    if (!is_integer(c)) throw DomainError("make_form: piece " + p.to_string() + " is not integral");
    out.push_back(c.get_num());
  }
  return out;
}

// sum c_i a^i b^{d-i} with d = deg of the piece.
Integer eval_piece(const std::vector<Integer>& c, const Integer& a, const Integer& b) {
  Integer acc = c.back();
  Integer bp = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    bp *= b;
    acc = acc * a + c[i] * bp;
  }
  return acc;
}

void refine(std::vector<Poly>& pieces, const Poly& splitter) {
  if (splitter.degree() < 1) return;
  std::vector<Poly> next;
  for (const Poly& p : pieces) {
    const Poly d = gcd(p, splitter);
    if (d.degree() >= 1 && d.degree() < p.degree()) {
      next.push_back(d.primitive());
      next.push_back(exact_div(p, d).primitive());
    } else {
      next.push_back(p);
    }
  }
  pieces = std::move(next);
}

Integer pow10(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

struct Key {
  long s;
  long a;
  bool operator<(const Key& o) const { return std::tie(s, a) < std::tie(o.s, o.a); }
};

struct Partial {
  std::map<Integer, DensityEntry> best;
  Integer max_abs;
};

Partial scan(const HomogForm& F, const std::vector<std::pair<long, long>>& cells, std::size_t lo, std::size_t hi,
             const Integer& x_max) {
  Partial out;
  out.max_abs = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const auto [a, b] = cells[i];
    const Integer v = eval_form(F, a, b);
    if (v == 0) continue;
    const Integer av = abs(v);
    if (av > out.max_abs) out.max_abs = av;
    std::vector<Integer> primes;
    Integer D = form_squarefree_part(F, a, b, &primes);
    if (abs(D) >= x_max) continue;
    // Cells arrive in increasing (a + b, a), so the first hit is the witness.
    if (out.best.count(D)) continue;
    DensityEntry e;
    e.D = D;
    e.a = a;
    e.b = b;
    e.primes = std::move(primes);
    out.best.emplace(std::move(D), std::move(e));
  }
  return out;
}

}  // namespace

HomogForm make_form(const Poly& g, const std::vector<Poly>& pieces) {
  if (g.degree() < 1) throw DomainError("make_form: g must be nonconstant");
  HomogForm F;
  F.g = g;
  F.k = (g.degree() + 1) / 2;
  F.b_exponent = 2 * F.k - g.degree();
  Integer L = 1;
  for (const Rational& c : g.coeffs()) L = lcm(L, Integer(c.get_den()));
  F.L = L;
  const Poly G = g * Rational(L * L);

  std::vector<Poly> prim;
  if (pieces.empty()) {
    prim.push_back(G.primitive());
  } else {
    for (const Poly& p : pieces) {
      if (p.degree() < 1) throw DomainError("make_form: constant piece");
      prim.push_back(p.primitive());
    }
  }
  Poly prod = Poly::constant(1);
  for (const Poly& p : prim) prod *= p;
  const auto [q, r] = divmod(G, prod);
  if (!r.is_zero() || q.degree() != 0) throw DomainError("make_form: pieces do not multiply to g");
  const Rational c = q.coeff(0);
  if (!is_integer(c)) throw DomainError("make_form: non-integral content " + to_string(c));
  F.c = c.get_num();
  for (const Poly& p : prim) F.pieces.push_back(integer_coeffs(p));
  return F;
}

std::vector<Poly> split_by_points(const TwistFamily& fam) {
  std::vector<Poly> pieces{fam.g.primitive()};
  const std::vector<Rational> roots = rational_roots(fam.curve);
  Poly q = to_poly(fam.curve);
  for (const Rational& e : roots) q = exact_div(q, Poly{std::vector<Rational>{-e, 1}});
  for (const FPoint& P : fam.points) {
    if (P.infinity) continue;
    for (const Rational& e : roots) {
      const RatFunc v = P.x - RatFunc(e);
      if (v.num().is_zero()) continue;
      refine(pieces, square_class(v).k);
    }
    if (q.degree() >= 1) refine(pieces, square_class(compose(q, P.x)).k);
  }
  return pieces;
}

HomogForm family_form(const TwistFamily& fam) { return make_form(fam.g, split_by_points(fam)); }

Integer eval_form(const HomogForm& F, const Integer& a, const Integer& b) {
  Integer v = F.c;
  for (int i = 0; i < F.b_exponent; ++i) v *= b;
  for (const auto& p : F.pieces) v *= eval_piece(p, a, b);
  return v;
}

Integer form_squarefree_part(const HomogForm& F, long a, long b, std::vector<Integer>* primes) {
  const Integer A = a, B = b;
  SquarefreeAccumulator acc;
  acc.multiply(F.c);
  if (F.b_exponent % 2 == 1) acc.multiply(static_cast<std::int64_t>(b));
  for (const auto& p : F.pieces) acc.multiply(eval_piece(p, A, B));
  if (acc.is_zero()) throw DomainError("form_squarefree_part: F(a, b) = 0");
  if (primes) *primes = acc.odd_primes();
  return acc.result();
}

DensityReport enumerate_S(const HomogForm& F, long grid, long M, const Integer& x_max, unsigned threads) {
  if (grid < 1 || M < 1 || x_max < 1) throw DomainError("enumerate_S: grid, modulus and x_max must be positive");
  std::vector<std::pair<long, long>> cells;
  for (long s = 2; s <= 2 * grid; ++s) {
    for (long a = std::max(1L, s - grid); a <= std::min(grid, s - 1); ++a) {
      const long b = s - a;
      if (std::gcd(a, b) != 1) continue;
      if (M > 1 && (a % M != 1 % M || b % M != 1 % M)) continue;
      cells.emplace_back(a, b);
    }
  }

  const unsigned n = std::max(1U, threads);
  std::vector<Partial> parts;
  if (n == 1) {
    parts.push_back(scan(F, cells, 0, cells.size(), x_max));
  } else {
    std::vector<std::future<Partial>> fut;
    const std::size_t chunk = (cells.size() + n - 1) / n;
    for (std::size_t lo = 0; lo < cells.size(); lo += chunk) {
      const std::size_t hi = std::min(cells.size(), lo + chunk);
      fut.push_back(std::async(std::launch::async, scan, std::cref(F), std::cref(cells), lo, hi, std::cref(x_max)));
    }
    for (auto& f : fut) parts.push_back(f.get());
  }

  DensityReport rep;
  rep.grid = grid;
  rep.modulus = M;
  rep.x_max = x_max;
  rep.k = F.k;
  rep.max_abs_F = 0;
  std::map<Integer, DensityEntry> merged;
  for (Partial& p : parts) {
    if (p.max_abs > rep.max_abs_F) rep.max_abs_F = p.max_abs;
    for (auto& [D, e] : p.best) {
      auto it = merged.find(D);
      if (it == merged.end()) {
        merged.emplace(D, std::move(e));
      } else if (Key{e.a + e.b, e.a} < Key{it->second.a + it->second.b, it->second.a}) {
        it->second = std::move(e);
      }
    }
  }
  for (auto& [D, e] : merged) rep.entries.push_back(std::move(e));

  const Integer cap = std::min(x_max, rep.max_abs_F);
  for (unsigned e = 3;; ++e) {
    Integer x = pow10(e);
    if (x > cap) break;
    rep.xs.push_back(std::move(x));
  }
  rep.counts = counts_at(rep, rep.xs, false);
  return rep;
}

std::vector<std::size_t> counts_at(const DensityReport& report, const std::vector<Integer>& xs, bool certified_only) {
  std::vector<std::size_t> out;
  for (const Integer& x : xs) {
    std::size_t n = 0;
    for (const DensityEntry& e : report.entries) {
      if (certified_only && !e.certified) continue;
      if (abs(e.D) < x) ++n;
    }
    out.push_back(n);
  }
  return out;
}

ExponentFit fit_exponent(const std::vector<Integer>& xs, const std::vector<std::size_t>& counts) {
  if (xs.size() != counts.size()) throw DomainError("fit_exponent: size mismatch");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (counts[i] == 0) continue;
    pts.emplace_back(std::log(xs[i].get_d()), std::log(static_cast<double>(counts[i])));
  }
  if (pts.size() < 5) throw DomainError("fit_exponent: fewer than five nonzero grid points");
  const double n = static_cast<double>(pts.size());
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [x, y] : pts) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss += r * r;
  }
  // Root mean square of the log residuals.
  fit.residual = std::sqrt(ss / n);
  fit.points = pts.size();
  return fit;
}

ExponentFit fit_exponent(const DensityReport& report) { return fit_exponent(report.xs, report.counts); }

void certified_density(const TwistFamily& fam, DensityReport& report, const CertifyOptions& opt) {
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      DensityEntry& e = report.entries[i];
      e.certified = false;
      e.witness.reset();
      try {
        e.witness = sieve_at(fam, Rational(e.a, e.b), opt, e.D);
      } catch (const std::exception&) {
        continue;
      }
      e.certified = e.witness && e.witness->independent && e.witness->subset.size() == fam.points.size();
    }
  };
  const unsigned n = std::max(1U, opt.threads);
  const std::size_t total = report.entries.size();
  if (n == 1 || total < 2) {
    work(0, total);
  } else {
    std::vector<std::future<void>> fut;
    const std::size_t chunk = (total + n - 1) / n;
    for (std::size_t lo = 0; lo < total; lo += chunk)
      fut.push_back(std::async(std::launch::async, work, lo, std::min(total, lo + chunk)));
    for (auto& f : fut) f.get();
  }
  report.certified_counts = counts_at(report, report.xs, true);
}

}  // namespace twistrank
