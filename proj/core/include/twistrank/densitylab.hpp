#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistrank/certify.hpp"

namespace twistrank {

/// F(a, b) = L^2 b^{2k} g(a/b) with k = floor((deg g + 1)/2) and L the least
/// common denominator of g's coefficients (L = 1 for integral g, so then
/// F(a, 1) = g(a)). F is stored as c * b^e * prod P_j(a, b) for coprime
/// integral pieces P_j, which keeps the values to be factored small.
struct HomogForm {
  Poly g;
  int k = 0;
  Integer L = 1;
  Integer c = 1;
  int b_exponent = 0;
  std::vector<std::vector<Integer>> pieces;
};

/// The form of g as a single piece, or split along `pieces`, whose product
/// must equal g up to a constant.
HomogForm make_form(const Poly& g, const std::vector<Poly>& pieces = {});

/// Coprime factors of the family's g from the square classes of x(P) - e
/// over the rational roots e of f and of the remaining factor of f at x(P).
std::vector<Poly> split_by_points(const TwistFamily& fam);

/// make_form(fam.g, split_by_points(fam)).
HomogForm family_form(const TwistFamily& fam);

Integer eval_form(const HomogForm& F, const Integer& a, const Integer& b);

/// Squarefree part of F(a, b); throws DomainError when F(a, b) = 0. The
/// primes dividing it are stored in `primes` when given.
Integer form_squarefree_part(const HomogForm& F, long a, long b, std::vector<Integer>* primes = nullptr);

struct DensityEntry {
  Integer D;
  long a = 0;
  long b = 0;
  /// The distinct primes whose product is |D|.
  std::vector<Integer> primes;
  bool certified = false;
  std::optional<SieveWitness> witness;
};

struct DensityReport {
  std::string family;
  long grid = 0;
  long modulus = 1;
  Integer x_max;
  int k = 0;
  Integer max_abs_F;
  std::vector<Integer> xs;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> certified_counts;
  /// Sorted by D.
  std::vector<DensityEntry> entries;
};

/// Coprime 1 <= a, b <= grid with a = b = 1 mod M and F(a, b) != 0. Each
/// distinct squarefree part D with |D| < x_max is kept once, with the
/// witness minimizing (a + b, a). The x-grid is 10^3, 10^4, ... up to
/// min(x_max, max |F|).
DensityReport enumerate_S(const HomogForm& F, long grid, long M, const Integer& x_max, unsigned threads = 1);

/// The x-grid of `report` from its entries.
std::vector<std::size_t> counts_at(const DensityReport& report, const std::vector<Integer>& xs, bool certified_only);

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;
  std::size_t points = 0;
};

/// Least squares of log |S(x)| against log x over the grid points with a
/// nonzero count. Throws DomainError with fewer than five such points.
ExponentFit fit_exponent(const std::vector<Integer>& xs, const std::vector<std::size_t>& counts);
ExponentFit fit_exponent(const DensityReport& report);

/// Sieve-certifies every entry at u0 = a/b and fills certified_counts. An
/// entry counts when all of the family's points are independent there.
void certified_density(const TwistFamily& fam, DensityReport& report, const CertifyOptions& opt = {});

}  // namespace twistrank
