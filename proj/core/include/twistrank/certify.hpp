#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistrank/catalog.hpp"

namespace twistrank {

/// A family member over Q: D y^2 = f(x) with g(u0) = D w^2, D squarefree.
struct SpecializedTwist {
  Rational u0;
  Integer D;
  Rational w;
  QCubic f;
  std::vector<QPoint> points;

  QTwist curve() const { return QTwist{f, Rational(D)}; }
};

/// Throws DomainError when u0 is a zero of g or a pole of some coordinate.
/// A known squarefree part of g(u0) skips the factorization; it is checked
/// by verifying that g(u0)/D is a rational square.
SpecializedTwist specialize(const TwistFamily& fam, const Rational& u0,
                            const std::optional<Integer>& known_D = std::nullopt);

/// Outcome of the mod-p relation sieve.
struct SieveVerdict {
  bool independent = true;
  /// First relation vector, in (max-norm, lexicographic) order, that no sieve
  /// prime excludes. Empty when independent.
  std::vector<long> survivor;
  /// gcd of #E(F_p) over the sieve primes; a multiple of the torsion order.
  std::uint64_t torsion_multiplier = 0;
  std::size_t vectors_tested = 0;
};

/// Primes p > 50 of good reduction for E and the points, in ascending order.
std::vector<std::uint64_t> good_primes(const QTwist& E, const std::vector<QPoint>& points, std::size_t count);

/// `count` primes drawn from good_primes(E, points, pool) by a seeded shuffle.
/// A larger count extends a smaller one with the same seed.
std::vector<std::uint64_t> choose_primes(const QTwist& E, const std::vector<QPoint>& points, std::size_t count,
                                         std::uint64_t seed);

/// Excludes each relation vector n with 0 < max|n_i| <= bound, normalized so
/// its first nonzero entry is positive, when some prime p has
/// G * sum n_i P_i != O in E(F_p), G the torsion multiplier. Throws
/// DomainError for a prime of bad reduction.
SieveVerdict mod_p_relation_sieve(const std::vector<QPoint>& points, const QTwist& E,
                                  const std::vector<std::uint64_t>& primes, int bound);

/// Replayable record of one sieve run.
struct SieveWitness {
  Rational u0;
  Integer D;
  std::vector<std::size_t> subset;
  std::vector<std::uint64_t> primes;
  int bound = 0;
  std::uint64_t torsion_multiplier = 0;
  bool independent = false;
  std::vector<long> survivor;
  std::size_t vectors_tested = 0;
};

/// Re-runs a witness on the family; true when every recorded field agrees.
/// D is taken from the witness and checked against g(u0) up to squares.
bool replay(const TwistFamily& fam, const SieveWitness& w);

struct CertifyOptions {
  int samples = 3;
  int prime_budget = 25;
  int relation_bound = 10;
  std::uint64_t seed = 20020601;
  unsigned threads = 1;
};

struct CertCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RankCertificate {
  std::string family;
  ParamList params;
  std::vector<CertCheck> checks;
  std::vector<SieveWitness> witnesses;
  int certified_lower = 0;
  int genus_upper = 0;
};

/// Action of u -> -u on a point of E_g when g(-u) = g(u).
enum class Eigen { fixed, negated, moved };
Eigen automorphism_action(const FPoint& P, const FTwist& E);

/// Structural checks (abort with CheckFailure), then independence by the
/// u -> -u eigenspace test or specialization sieves, then the genus bound.
RankCertificate certify_family(const TwistFamily& fam, const CertifyOptions& opt = {});

/// Sieve independence of all points at one u0: largest independent subset
/// size and its witness. nullopt when u0 is a zero or pole.
std::optional<SieveWitness> sieve_at(const TwistFamily& fam, const Rational& u0, const CertifyOptions& opt,
                                     const std::optional<Integer>& known_D = std::nullopt);

/// Rationals by increasing height: 0, 1, -1, 2, -2, 1/2, -1/2, 3, ...
std::vector<Rational> rationals_by_height(std::size_t count);

}  // namespace twistrank
