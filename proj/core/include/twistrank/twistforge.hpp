#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistrank/isogeny.hpp"

namespace twistrank {

/// t -> (a t + b) / (c t + d), ad - bc != 0, scaled so the first nonzero of
/// (a, b, c, d) is 1.
class Mobius {
 public:
  Mobius(Rational a, Rational b, Rational c, Rational d);
  static Mobius identity() { return Mobius(1, 0, 0, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  /// nullopt means the point at infinity.
  std::optional<Rational> apply(const Rational& x) const;
  RatFunc as_ratfunc() const;
  /// An affine map t -> a t + b.
  bool is_linear_polynomial() const { return c_ == 0; }
  Mobius inverse() const;
  /// (*this)(other(t)).
  Mobius after(const Mobius& other) const;
  friend bool operator==(const Mobius&, const Mobius&) = default;

 private:
  Rational a_, b_, c_, d_;
};

/// The unique Mobius map sending src[i] to dst[i]. Throws DomainError when a
/// triple repeats an entry.
Mobius mobius_from_triples(const std::array<Rational, 3>& src, const std::array<Rational, 3>& dst);

/// f(h) = k f j^2 with k squarefree.
struct TwistIdentity {
  Poly f;
  RatFunc h;
  Poly k;
  RatFunc j;

  bool verify() const;
};

/// The identity for an arbitrary nonzero h, with k = square class of f(h)/f.
TwistIdentity twist_identity(const Poly& f, const RatFunc& h);

/// The same identity with k replaced by k_target = w^2 k, w rational, and j
/// by j/w. Throws CheckFailure if k_target / k is not a rational square.
TwistIdentity rescale_identity(const TwistIdentity& tid, const Poly& k_target);

/// Requires h to permute the roots of f and not be affine.
TwistIdentity twist_from_permutation(const Poly& f, const Mobius& h);

/// h = phi_x(mu(t)); mu must carry the roots of f to the roots of iso.source
/// and not be affine. f must be iso.target.
TwistIdentity twist_from_isogeny(const Poly& f, const Isogeny& iso, const Mobius& mu);

/// The nontrivial Mobius permutations of the three rational roots of f,
/// paired with the image of (r0, r1, r2). Affine ones are included.
std::vector<std::pair<Mobius, std::array<Rational, 3>>> root_permutations(const QCubic& f);

struct ConicParam {
  RatFunc t_of_u;
  std::string u_of_t;
};

/// For k = m t + c: t = (u^2 - c)/m. For quadratic k a point (t0, s0) on
/// s^2 = k(t) is required and u is the slope through it.
ConicParam conic_param_single(const Poly& k, std::optional<std::pair<Rational, Rational>> point = {});

/// r0^2 = k1(t0), s0^2 = k2(t0).
struct ConicPoint {
  Rational t0, r0, s0;
};

/// Parametrizes r^2 = k1(t), s^2 = k2(t) for independent linear k1, k2 by
/// u = (s - s0)/(r - r0).
ConicParam conic_param_double(const Poly& k1, const Poly& k2, const ConicPoint& pt);

struct Provenance {
  std::string family;
  std::vector<std::pair<std::string, Rational>> params;
  std::string method;
  std::string substitution;
  std::string notes;
};

/// g(u) y^2 = f(x) over Q(u) with points on it.
struct TwistFamily {
  QCubic curve;
  Poly g;
  std::vector<FPoint> points;
  int claimed_rank = 0;
  Provenance provenance;

  FTwist twist() const { return twist_over_function_field(curve, g); }
};

/// Point (x, y) on g y^2 = f(x) with y = sqrt(f(x)/g); throws CheckFailure
/// named "point_on_twist" when f(x)/g is not a square.
FPoint point_from_x(const QCubic& f, const Poly& g, const RatFunc& x);

/// g is the canonical square-class representative of f(xs[0]) and each x in
/// xs becomes a point on g y^2 = f(x).
TwistFamily assemble_from_x(const QCubic& f, const std::vector<RatFunc>& xs, int claimed_rank,
                            Provenance provenance);

/// Points with x = t(u) and h(t(u)).
TwistFamily assemble_rank2(const QCubic& f, const TwistIdentity& tid, const RatFunc& t_of_u,
                           Provenance provenance = {});

/// Points with x = t(u), h1(t(u)), h2(t(u)).
TwistFamily assemble_rank3(const QCubic& f, const TwistIdentity& tid1, const TwistIdentity& tid2,
                           const RatFunc& t_of_u, Provenance provenance = {});

/// floor((deg g - 1)/2), the genus of s^2 = g(u).
int genus_bound(const Poly& g);

/// Structural checks: g squarefree and nonconstant, each point on the curve
/// with nonconstant x. Throws CheckFailure naming the first failed check.
void check_structure(const TwistFamily& fam);

/// True when a / b is the square of an element of Q(u).
bool same_square_class(const RatFunc& a, const RatFunc& b);

}  // namespace twistrank
