#include "twistrank/certify.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <random>
#include <thread>

#include "twistrank/factor.hpp"

namespace twistrank {

SpecializedTwist specialize(const TwistFamily& fam, const Rational& u0, const std::optional<Integer>& known_D) {
  const Rational gv = fam.g.eval(u0);
  if (gv == 0) throw DomainError("specialize: u0 = " + to_string(u0) + " is a zero of g");
  SpecializedTwist out;
  out.u0 = u0;
  out.f = fam.curve;
  out.D = known_D ? *known_D : squarefree_part(gv);
  if (out.D == 0) throw DomainError("specialize: D = 0");
  Rational w2 = gv / Rational(out.D);
  w2.canonicalize();
  auto w = rational_sqrt(w2);
  if (!w) throw CheckFailure("specialize", "g(u0)/D is not a rational square");
  out.w = *w;
  for (const FPoint& P : fam.points) {
    if (P.infinity) {
      out.points.push_back(QPoint::at_infinity());
      continue;
    }
    if (P.x.has_pole_at(u0) || P.y.has_pole_at(u0)) {
      throw DomainError("specialize: u0 = " + to_string(u0) + " is a pole of a point coordinate");
    }
    out.points.push_back(QPoint::affine(P.x.eval(u0), Rational(out.w * P.y.eval(u0))));
  }
  return out;
}

std::vector<std::uint64_t> good_primes(const QTwist& E, const std::vector<QPoint>& points, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint32_t limit = 1024; out.size() < count; limit *= 2) {
    out.clear();
    for (std::uint32_t p : primes_below(limit)) {
      if (p <= 50) continue;
      if (!reduce(E, p)) continue;
      const bool ok = std::all_of(points.begin(), points.end(), [&](const QPoint& P) { return reduce(P, p).has_value(); });
      if (ok) out.push_back(p);
      if (out.size() == count) break;
    }
  }
  return out;
}

std::vector<std::uint64_t> choose_primes(const QTwist& E, const std::vector<QPoint>& points, std::size_t count,
                                         std::uint64_t seed) {
  constexpr std::size_t kPool = 120;
  std::vector<std::uint64_t> pool = good_primes(E, points, std::max(count, kPool));
  std::mt19937_64 rng(seed);
  for (std::size_t i = pool.size(); i-- > 1;) std::swap(pool[i], pool[rng() % (i + 1)]);
  pool.resize(count);
  return pool;
}

namespace {

// All canonical vectors in [-bound, bound]^r by max-norm, then lexicographically.
std::vector<std::vector<long>> relation_vectors(std::size_t r, int bound) {
  std::vector<std::vector<long>> out;
  for (long m = 1; m <= bound; ++m) {
    std::vector<long> v(r, -m);
    while (true) {
      long norm = 0;
      for (long x : v) norm = std::max(norm, std::labs(x));
      auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
      if (norm == m && first != v.end() && *first > 0) out.push_back(v);
      std::size_t i = r;
      while (i > 0 && v[i - 1] == m) v[--i] = -m;
      if (i == 0) break;
      ++v[i - 1];
    }
  }
  return out;
}

struct PrimeTable {
  Twist<Fp> E;
  // multiples[i][m] = m * G * P_i for m in [0, bound].
  std::vector<std::vector<Point<Fp>>> multiples;
};

}  // namespace

SieveVerdict mod_p_relation_sieve(const std::vector<QPoint>& points, const QTwist& E,
                                  const std::vector<std::uint64_t>& primes, int bound) {
  SieveVerdict verdict;
  if (points.empty()) return verdict;
  std::vector<Twist<Fp>> curves;
  std::uint64_t G = 0;
  for (std::uint64_t p : primes) {
    auto Ep = reduce(E, p);
    if (p <= 2 || !Ep) throw DomainError("mod_p_relation_sieve: bad reduction at p = " + std::to_string(p));
    G = std::gcd(G, count_points(*Ep));
    curves.push_back(*Ep);
  }
  verdict.torsion_multiplier = G;
  if (primes.empty()) {
    verdict.independent = false;
    verdict.survivor = std::vector<long>(points.size(), 0);
    verdict.survivor[0] = 1;
    return verdict;
  }
  std::vector<PrimeTable> tables;
  for (std::size_t k = 0; k < primes.size(); ++k) {
    PrimeTable t{curves[k], {}};
    for (const QPoint& P : points) {
      auto Pp = reduce(P, primes[k]);
      if (!Pp) throw DomainError("mod_p_relation_sieve: point does not reduce at p = " + std::to_string(primes[k]));
      const Point<Fp> Q = scalar_mul(static_cast<long>(G), *Pp, t.E);
      std::vector<Point<Fp>> row{Point<Fp>::at_infinity()};
      for (int m = 1; m <= bound; ++m) row.push_back(point_add(row.back(), Q, t.E));
      t.multiples.push_back(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  for (const std::vector<long>& v : relation_vectors(points.size(), bound)) {
    ++verdict.vectors_tested;
    bool excluded = false;
    for (const PrimeTable& t : tables) {
      Point<Fp> acc = Point<Fp>::at_infinity();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point<Fp>& M = t.multiples[i][static_cast<std::size_t>(std::labs(v[i]))];
        acc = point_add(acc, v[i] < 0 ? negate(M) : M, t.E);
      }
      if (!acc.infinity) {
        excluded = true;
        break;
      }
    }
    if (!excluded) {
      verdict.independent = false;
      verdict.survivor = v;
      return verdict;
    }
  }
  return verdict;
}

namespace {

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) s.push_back(i);
    }
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

bool valid_sample(const TwistFamily& fam, const Rational& u0) {
  if (fam.g.eval(u0) == 0) return false;
  return std::all_of(fam.points.begin(), fam.points.end(), [&](const FPoint& P) {
    return P.infinity || (!P.x.has_pole_at(u0) && !P.y.has_pole_at(u0));
  });
}

}  // namespace

std::optional<SieveWitness> sieve_at(const TwistFamily& fam, const Rational& u0, const CertifyOptions& opt,
                                     const std::optional<Integer>& known_D) {
  if (!valid_sample(fam, u0)) return std::nullopt;
  const SpecializedTwist st = specialize(fam, u0, known_D);
  const QTwist E = st.curve();
  const std::vector<std::uint64_t> primes =
      choose_primes(E, st.points, static_cast<std::size_t>(opt.prime_budget), opt.seed);
  SieveWitness best;
  for (std::size_t k = st.points.size(); k >= 1; --k) {
    for (const auto& subset : subsets_of_size(st.points.size(), k)) {
      std::vector<QPoint> pts;
      for (std::size_t i : subset) pts.push_back(st.points[i]);
      const SieveVerdict v = mod_p_relation_sieve(pts, E, primes, opt.relation_bound);
      SieveWitness w{u0, st.D, subset, primes, opt.relation_bound, v.torsion_multiplier, v.independent,
                     v.survivor, v.vectors_tested};
      if (v.independent) return w;
      if (best.subset.empty()) best = w;
    }
  }
  return best;
}

bool replay(const TwistFamily& fam, const SieveWitness& w) {
  SpecializedTwist st;
  try {
    st = specialize(fam, w.u0, w.D);
  } catch (const CheckFailure&) {
    return false;
  }
  std::vector<QPoint> pts;
  for (std::size_t i : w.subset) {
    if (i >= st.points.size()) return false;
    pts.push_back(st.points[i]);
  }
  const SieveVerdict v = mod_p_relation_sieve(pts, st.curve(), w.primes, w.bound);
  return v.independent == w.independent && v.survivor == w.survivor &&
         v.torsion_multiplier == w.torsion_multiplier && v.vectors_tested == w.vectors_tested;
}

Eigen automorphism_action(const FPoint& P, const FTwist& E) {
  if (P.infinity) return Eigen::fixed;
  if (E.D.reflect() != E.D) throw DomainError("automorphism_action: g(-u) != g(u)");
  const FPoint image = FPoint::affine(P.x.reflect(), P.y.reflect());
  if (image == P) return Eigen::fixed;
  if (image == negate(P)) return Eigen::negated;
  return Eigen::moved;
}

std::vector<Rational> rationals_by_height(std::size_t count) {
  std::vector<Rational> out{0};
  for (long h = 1; out.size() < count; ++h) {
    for (long q = 1; q <= h && out.size() < count; ++q) {
      for (long p = (q == h ? 1 : h); p <= h && out.size() < count; ++p) {
        if (std::gcd(p, q) != 1) continue;
        out.push_back(make_rational(p, q));
        if (out.size() < count) out.push_back(make_rational(-p, q));
      }
    }
  }
  out.resize(count);
  return out;
}

namespace {

std::string eigen_name(Eigen e) {
  return e == Eigen::fixed ? "fixed" : e == Eigen::negated ? "negated" : "moved";
}

// Two points, g even: independence when some pair built from them splits
// into the +1 and -1 eigenspaces of u -> -u with both members nonconstant.
std::optional<std::string> automorphism_certificate(const TwistFamily& fam) {
  if (fam.points.size() != 2 || fam.g.reflect() != fam.g) return std::nullopt;
  const FTwist E = fam.twist();
  auto split = [&](const FPoint& A, const FPoint& B) -> std::optional<std::string> {
    if (A.infinity || B.infinity || A.x.is_constant() || B.x.is_constant()) return std::nullopt;
    const Eigen ea = automorphism_action(A, E), eb = automorphism_action(B, E);
    if ((ea == Eigen::fixed && eb == Eigen::negated) || (ea == Eigen::negated && eb == Eigen::fixed)) {
      return eigen_name(ea) + "/" + eigen_name(eb);
    }
    return std::nullopt;
  };
  const FPoint &P = fam.points[0], &Q = fam.points[1];
  if (auto s = split(P, Q)) return "P1, P2 " + *s;
  if (auto s = split(point_add(P, Q, E), point_sub(P, Q, E))) return "P1+P2, P1-P2 " + *s;
  return std::nullopt;
}

}  // namespace

RankCertificate certify_family(const TwistFamily& fam, const CertifyOptions& opt) {
  check_structure(fam);
  RankCertificate cert;
  cert.family = fam.provenance.family;
  cert.params = fam.provenance.params;
  const std::size_t n = fam.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    cert.checks.push_back({"on_curve" + tag, true, "g y^2 = f(x) in Q(u)"});
    cert.checks.push_back({"infinite_order" + tag, true, "x-coordinate nonconstant"});
  }
  cert.genus_upper = genus_bound(fam.g);

  int lower = n == 0 ? 0 : 1;
  std::string method = n <= 1 ? "single point" : "";
  if (n >= 2) {
    if (auto auto_cert = automorphism_certificate(fam)) {
      lower = 2;
      method = "u -> -u eigenspaces: " + *auto_cert;
    } else {
      std::vector<Rational> u0s;
      for (const Rational& u0 : rationals_by_height(400)) {
        if (static_cast<int>(u0s.size()) == opt.samples) break;
        if (valid_sample(fam, u0)) u0s.push_back(u0);
      }
      std::vector<std::optional<SieveWitness>> results(u0s.size());
      const unsigned threads = std::max(1U, opt.threads);
      for (std::size_t start = 0; start < u0s.size(); start += threads) {
        std::vector<std::future<std::optional<SieveWitness>>> jobs;
        for (std::size_t i = start; i < std::min(u0s.size(), start + threads); ++i) {
          jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                    [&, i] { return sieve_at(fam, u0s[i], opt); }));
        }
        for (std::size_t k = 0; k < jobs.size(); ++k) results[start + k] = jobs[k].get();
      }
      for (const auto& w : results) {
        if (!w) continue;
        cert.witnesses.push_back(*w);
        if (w->independent) lower = std::max(lower, static_cast<int>(w->subset.size()));
      }
      method = "specialization sieve over " + std::to_string(cert.witnesses.size()) + " samples";
    }
  }
  cert.certified_lower = lower;
  cert.checks.push_back({"independence", lower == static_cast<int>(n),
                         method + "; certified " + std::to_string(lower) + " of " + std::to_string(n)});
  const bool consistent = cert.certified_lower <= cert.genus_upper;
  cert.checks.push_back({"genus_bound", consistent,
                         "rank <= floor((deg g - 1)/2) = " + std::to_string(cert.genus_upper)});
  if (!consistent) throw CheckFailure("genus_bound", "certified lower bound exceeds the genus");
  return cert;
}

}  // namespace twistrank
