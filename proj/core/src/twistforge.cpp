#include "twistrank/twistforge.hpp"

#include <algorithm>

namespace twistrank {

Mobius::Mobius(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ == 0) throw DomainError("Mobius map with zero determinant");
  const Rational lead = a_ != 0 ? a_ : b_ != 0 ? b_ : c_;
  a_ /= lead;
  b_ /= lead;
  c_ /= lead;
  d_ /= lead;
}

std::optional<Rational> Mobius::apply(const Rational& x) const {
  Rational den = c_ * x + d_;
  if (den == 0) return std::nullopt;
  return Rational((a_ * x + b_) / den);
}

RatFunc Mobius::as_ratfunc() const {
  return RatFunc(Poly(std::vector<Rational>{b_, a_}), Poly(std::vector<Rational>{d_, c_}));
}

Mobius Mobius::inverse() const { return Mobius(d_, -b_, -c_, a_); }

Mobius Mobius::after(const Mobius& o) const {
  return Mobius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                c_ * o.b_ + d_ * o.d_);
}

namespace {

// Sends z0 -> 0, z1 -> 1, z2 -> infinity.
Mobius cross_ratio(const std::array<Rational, 3>& z) {
  if (z[0] == z[1] || z[0] == z[2] || z[1] == z[2]) {
    throw DomainError("mobius_from_triples: repeated entry in a triple");
  }
  const Rational p = z[1] - z[2], q = z[1] - z[0];
  return Mobius(p, -z[0] * p, q, -z[2] * q);
}

void require_identity(const TwistIdentity& tid) {
  if (!tid.verify()) throw CheckFailure("twist_identity", "f(h) != k f j^2");
}

TwistIdentity identity_from_h_impl(const Poly& f, const RatFunc& h) {
  const RatFunc fh = compose(f, h);
  SquareClass sc = square_class(fh / RatFunc(f));
  TwistIdentity tid{f, h, std::move(sc.k), std::move(sc.j)};
  require_identity(tid);
  return tid;
}

bool divides(const Poly& d, const Poly& p) { return divmod(p, d).second.is_zero(); }

}  // namespace

Mobius mobius_from_triples(const std::array<Rational, 3>& src, const std::array<Rational, 3>& dst) {
  const Mobius m = cross_ratio(dst).inverse().after(cross_ratio(src));
  for (std::size_t i = 0; i < 3; ++i) {
    if (m.apply(src[i]) != std::optional<Rational>(dst[i])) {
      throw CheckFailure("mobius_from_triples", "map does not send the triple as requested");
    }
  }
  return m;
}

TwistIdentity twist_identity(const Poly& f, const RatFunc& h) { return identity_from_h_impl(f, h); }

TwistIdentity rescale_identity(const TwistIdentity& tid, const Poly& k_target) {
  const RatFunc ratio = RatFunc(k_target) / RatFunc(tid.k);
  std::optional<Rational> w;
  if (ratio.is_constant()) w = rational_sqrt(ratio.constant_value());
  if (!w || *w == 0) {
    throw CheckFailure("k_square_class", k_target.to_string() + " is not a square multiple of " + tid.k.to_string());
  }
  TwistIdentity out{tid.f, tid.h, k_target, tid.j / RatFunc(*w)};
  require_identity(out);
  return out;
}

bool TwistIdentity::verify() const {
  return compose(f, h) == RatFunc(k) * RatFunc(f) * j * j;
}

TwistIdentity twist_from_permutation(const Poly& f, const Mobius& h) {
  if (h.is_linear_polynomial()) {
    throw HypothesisError("h is not a linear polynomial", "twist_from_permutation: affine h");
  }
  const RatFunc hf = h.as_ratfunc();
  if (!divides(f, compose(f, hf).num())) {
    throw DomainError("twist_from_permutation: h does not permute the roots of f");
  }
  return twist_identity(f, hf);
}

TwistIdentity twist_from_isogeny(const Poly& f, const Isogeny& iso, const Mobius& mu) {
  if (to_poly(iso.target) != f) throw DomainError("twist_from_isogeny: f is not the isogeny target");
  if (mu.is_linear_polynomial()) {
    throw HypothesisError("mu is not a linear polynomial", "twist_from_isogeny: affine mu");
  }
  const RatFunc m = mu.as_ratfunc();
  if (!divides(f, compose(to_poly(iso.source), m).num())) {
    throw DomainError("twist_from_isogeny: mu does not carry the roots of f to the source roots");
  }
  return twist_identity(f, iso.phi_x.compose(m));
}

std::vector<std::pair<Mobius, std::array<Rational, 3>>> root_permutations(const QCubic& f) {
  const std::vector<Rational> roots = rational_roots(f);
  if (roots.size() != 3) throw DomainError("root_permutations: f needs three rational roots");
  std::array<std::size_t, 3> idx{0, 1, 2};
  const std::array<Rational, 3> src{roots[0], roots[1], roots[2]};
  std::vector<std::pair<Mobius, std::array<Rational, 3>>> out;
  while (std::next_permutation(idx.begin(), idx.end())) {
    const std::array<Rational, 3> dst{roots[idx[0]], roots[idx[1]], roots[idx[2]]};
    out.emplace_back(mobius_from_triples(src, dst), dst);
  }
  return out;
}

ConicParam conic_param_single(const Poly& k, std::optional<std::pair<Rational, Rational>> point) {
  if (!is_squarefree(k)) throw DomainError("conic_param_single: k is not squarefree");
  const RatFunc u = RatFunc::t();
  ConicParam out;
  if (k.degree() == 1) {
    const Rational m = k.coeff(1), c = k.coeff(0);
    out.t_of_u = (u * u - RatFunc(c)) / RatFunc(m);
    out.u_of_t = "u = sqrt(" + k.to_string() + ")";
  } else if (k.degree() == 2) {
    if (!point) {
      throw HypothesisError("rational point on s^2 = k(t) supplied", "conic_param_single: no point");
    }
    const auto& [t0, s0] = *point;
    if (s0 * s0 != k.eval(t0)) throw DomainError("conic_param_single: point not on s^2 = k(t)");
    const Rational A = k.coeff(2), B = k.coeff(1);
    out.t_of_u = RatFunc(Poly(std::vector<Rational>{A * t0 + B, -2 * s0, t0}),
                         Poly(std::vector<Rational>{-A, 0, 1}));
    out.u_of_t = "u = (s - " + to_string(s0) + ")/(t - " + to_string(t0) + ")";
  } else {
    throw DomainError("conic_param_single: deg k must be 1 or 2");
  }
  if (!sqrt_exact(compose(k, out.t_of_u))) {
    throw CheckFailure("conic_param", "k(t(u)) is not a square");
  }
  return out;
}

ConicParam conic_param_double(const Poly& k1, const Poly& k2, const ConicPoint& pt) {
  if (k1.degree() != 1 || k2.degree() != 1) throw DomainError("conic_param_double: k1, k2 must be linear");
  const Rational m1 = k1.coeff(1), c1 = k1.coeff(0), m2 = k2.coeff(1), c2 = k2.coeff(0);
  if (m1 * c2 - m2 * c1 == 0) {
    throw HypothesisError("k1, k2 linearly independent", "conic_param_double: dependent k1, k2");
  }
  if (pt.r0 * pt.r0 != k1.eval(pt.t0) || pt.s0 * pt.s0 != k2.eval(pt.t0)) {
    throw DomainError("conic_param_double: point does not satisfy r0^2 = k1(t0), s0^2 = k2(t0)");
  }
  // With t = (r^2 - c1)/m1 the second equation is s^2 = alpha r^2 + const.
  const Rational alpha = m2 / m1;
  const RatFunc u = RatFunc::t();
  const RatFunc w = (RatFunc(2 * alpha * pt.r0) - RatFunc(2 * pt.s0) * u) / (u * u - RatFunc(alpha));
  const RatFunc r = RatFunc(pt.r0) + w;
  ConicParam out;
  out.t_of_u = (r * r - RatFunc(c1)) / RatFunc(m1);
  out.u_of_t = "u = (sqrt(" + k2.to_string() + ") - " + to_string(pt.s0) + ")/(sqrt(" +
               k1.to_string() + ") - " + to_string(pt.r0) + ")";
  if (!sqrt_exact(compose(k1, out.t_of_u)) || !sqrt_exact(compose(k2, out.t_of_u))) {
    throw CheckFailure("conic_param", "k1(t(u)) or k2(t(u)) is not a square");
  }
  return out;
}

FPoint point_from_x(const QCubic& f, const Poly& g, const RatFunc& x) {
  auto y = sqrt_exact(compose(to_poly(f), x) / RatFunc(g));
  if (!y) throw CheckFailure("point_on_twist", "f(x)/g is not a square for x = " + x.to_string('u'));
  return FPoint::affine(x, std::move(*y));
}

TwistFamily assemble_from_x(const QCubic& f, const std::vector<RatFunc>& xs, int claimed_rank,
                            Provenance provenance) {
  if (xs.empty()) throw DomainError("assemble_from_x: no points");
  TwistFamily fam;
  fam.curve = f;
  fam.g = square_class(compose(to_poly(f), xs.front())).k;
  if (fam.g.is_constant()) throw CheckFailure("g_nonconstant", "twisting polynomial is constant");
  for (const RatFunc& x : xs) fam.points.push_back(point_from_x(f, fam.g, x));
  fam.claimed_rank = claimed_rank;
  fam.provenance = std::move(provenance);
  return fam;
}

TwistFamily assemble_rank2(const QCubic& f, const TwistIdentity& tid, const RatFunc& t_of_u,
                           Provenance provenance) {
  require_identity(tid);
  if (provenance.substitution.empty()) provenance.substitution = "t = " + t_of_u.to_string('u');
  return assemble_from_x(f, {t_of_u, tid.h.compose(t_of_u)}, 2, std::move(provenance));
}

TwistFamily assemble_rank3(const QCubic& f, const TwistIdentity& tid1, const TwistIdentity& tid2,
                           const RatFunc& t_of_u, Provenance provenance) {
  require_identity(tid1);
  require_identity(tid2);
  if (provenance.substitution.empty()) provenance.substitution = "t = " + t_of_u.to_string('u');
  return assemble_from_x(f, {t_of_u, tid1.h.compose(t_of_u), tid2.h.compose(t_of_u)}, 3,
                         std::move(provenance));
}

int genus_bound(const Poly& g) { return g.degree() < 1 ? 0 : (g.degree() - 1) / 2; }

void check_structure(const TwistFamily& fam) {
  if (fam.g.is_constant()) throw CheckFailure("g_nonconstant", "g is constant");
  if (!is_squarefree(fam.g)) throw CheckFailure("g_squarefree", "g has a repeated factor");
  if (discriminant(fam.curve) == 0) throw CheckFailure("curve_nonsingular", "f has a repeated root");
  const FTwist E = fam.twist();
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    const FPoint& P = fam.points[i];
    if (P.infinity) throw CheckFailure("point_affine" + tag, "point at infinity");
    if (!on_curve(P, E)) throw CheckFailure("on_curve" + tag, "g y^2 != f(x)");
    if (P.x.is_constant()) throw CheckFailure("nonconstant" + tag, "x-coordinate is constant");
  }
}

bool same_square_class(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return false;
  return square_class(a / b).k == Poly::constant(1);
}

}  // namespace twistrank
