#include "twistrank/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace twistrank {

namespace {

RatFunc C(const Rational& x) { return RatFunc(x); }

Poly as_poly(const RatFunc& r) {
  if (!r.is_polynomial()) throw DomainError("expected a polynomial, got " + r.to_string());
  return r.num();
}

const RatFunc U = RatFunc::t();

void require(bool ok, const std::string& hypothesis, const std::string& id) {
  if (!ok) throw HypothesisError(hypothesis, id + ": parameters violate a hypothesis");
}

Provenance provenance(const FamilySpec& spec, std::string method, std::string notes = "") {
  return Provenance{spec.id, spec.params, std::move(method), "", std::move(notes)};
}

QCubic three_roots(const Rational& r0, const Rational& r1, const Rational& r2) {
  return cubic_from_poly(Poly(std::vector<Rational>{-r0 * r1 * r2, r0 * r1 + r0 * r2 + r1 * r2,
                                                    -(r0 + r1 + r2), 1}));
}

Mobius swap_map(const std::array<Rational, 3>& roots, std::size_t i, std::size_t j) {
  std::array<Rational, 3> dst = roots;
  std::swap(dst[i], dst[j]);
  return mobius_from_triples(roots, dst);
}

Rational exact_root(const Rational& v, const std::string& what) {
  auto r = rational_sqrt(v);
  if (!r) throw CheckFailure("conic_point", what + " is not a rational square");
  return *r;
}

// The first root permutation whose identity has k in the square class of `k`.
TwistIdentity identity_matching(const QCubic& f, const Poly& k) {
  for (const auto& [h, dst] : root_permutations(f)) {
    if (h.is_linear_polynomial()) continue;
    TwistIdentity tid = twist_from_permutation(to_poly(f), h);
    try {
      return rescale_identity(tid, k);
    } catch (const CheckFailure&) {
    }
  }
  throw CheckFailure("k_square_class", "no root permutation yields k = " + k.to_string());
}

// ---- cor3_2 --------------------------------------------------------------

QCubic cor3_2_curve(const Rational& a, const Rational& b) {
  require(a * b != 0, "ab != 0", "cor3_2");
  require(b * (a * a - 4 * b) != 0, "discriminant b^2(a^2 - 4b) != 0", "cor3_2");
  return cubic_from_poly(Poly(std::vector<Rational>{0, b, a, 1}));
}

TwistFamily cor3_2_display(const FamilySpec& s) {
  const Rational &a = param(s, "a"), &b = param(s, "b");
  TwistFamily fam;
  fam.curve = cor3_2_curve(a, b);
  const RatFunc q = U * U + C(b * b);
  fam.g = as_poly(C(-a * b) * q * (U.pow(4) + C(2 * b * b - a * a * b) * U * U + C(b * b * b * b)));
  fam.points = {FPoint::affine(-q / C(a * b), C(1 / (a * a * b * b))),
                FPoint::affine(-C(b) * q / (C(a) * U * U), C(b) / (C(a * a) * U.pow(3)))};
  fam.claimed_rank = 2;
  fam.provenance = provenance(s, "display");
  return fam;
}

PipelineResult cor3_2_pipeline(const FamilySpec& s) {
  const Rational &a = param(s, "a"), &b = param(s, "b");
  const QCubic f = cor3_2_curve(a, b);
  const Mobius h(-b, 0, a, b);
  TwistIdentity tid = twist_from_permutation(to_poly(f), h);
  tid = rescale_identity(tid, Poly(std::vector<Rational>{-b * b, -a * b}));
  const ConicParam cp = conic_param_single(tid.k);
  return {assemble_rank2(f, tid, cp.t_of_u, provenance(s, "root permutation, " + cp.u_of_t)), {tid}};
}

// ---- cor3_3 --------------------------------------------------------------

QCubic cor3_3_curve(const Rational& b, const Rational& c) {
  require(b * c != 0, "bc != 0", "cor3_3");
  require(b * b * b != 54 * c * c, "b^3 != 54c^2", "cor3_3");
  return cubic_from_poly(Poly(std::vector<Rational>{c, b, b * b / (4 * c), 1}));
}

TwistFamily cor3_3_display(const FamilySpec& s) {
  const Rational &b = param(s, "b"), &c = param(s, "c");
  TwistFamily fam;
  fam.curve = cor3_3_curve(b, c);
  const Rational b3 = b * b * b, c2 = c * c, c4 = c2 * c2, b4 = b * b3;
  const RatFunc u2 = U * U;
  const RatFunc g = C(-b * c) * (C(2) * u2.pow(3) + C(18 * c2 - b3) * u2 * u2 +
                                 C(54 * c4 + 2 * b3 * c2) * u2 + C(54 * c4 * c2 - b3 * c4));
  fam.g = as_poly(g);
  const RatFunc q = u2 + C(3 * c2);
  const RatFunc w = C(b4) * u2 * (u2 - C(c2)).pow(2);
  fam.points = {FPoint::affine(-q / C(2 * b * c), C(1 / (4 * b * b * c2))),
                FPoint::affine((C(c) * g - w) / (C(4 * b * b * c) * u2 * q.pow(2)),
                               (C(c) * g + C(3) * w) / (C(8 * b3 * c) * U.pow(3) * q.pow(3)))};
  fam.claimed_rank = 2;
  fam.provenance = provenance(s, "display");
  return fam;
}

PipelineResult cor3_3_pipeline(const FamilySpec& s) {
  const Rational &b = param(s, "b"), &c = param(s, "c");
  const QCubic f = cor3_3_curve(b, c);
  const Isogeny iso = three_isogeny(b, c);
  const Mobius mu(b * b * b - 54 * c * c, 0, 12 * b * c, 18 * c * c);
  TwistIdentity tid = twist_from_isogeny(to_poly(f), iso, mu);
  tid = rescale_identity(tid, Poly(std::vector<Rational>{-3 * c * c, -2 * b * c}));
  const ConicParam cp = conic_param_single(tid.k);
  return {assemble_rank2(f, tid, cp.t_of_u, provenance(s, "3-isogeny, " + cp.u_of_t)), {tid}};
}

// ---- mestre3_4 -----------------------------------------------------------

QCubic mestre_curve(const Rational& a, const Rational& b) {
  require(a * b != 0, "ab != 0", "mestre3_4");
  require(4 * a * a * a + 27 * b * b != 0, "4a^3 + 27b^2 != 0", "mestre3_4");
  return cubic_from_poly(Poly(std::vector<Rational>{b, a, 0, 1}));
}

std::array<RatFunc, 2> mestre_maps(const Rational& a, const Rational& b) {
  const RatFunc t = RatFunc::t();
  const RatFunc num = C(-b) * (t.pow(3) - C(1));
  return {num / (C(a) * (t * t - C(1))), num / (C(a) * t * (t * t - C(1)))};
}

PipelineResult mestre_pipeline(const FamilySpec& s) {
  const Rational &a = param(s, "a"), &b = param(s, "b");
  const QCubic f = mestre_curve(a, b);
  const auto hs = mestre_maps(a, b);
  std::vector<TwistIdentity> ids;
  std::vector<RatFunc> xs;
  for (const RatFunc& h : hs) {
    ids.push_back(twist_identity(to_poly(f), h));
    xs.push_back(h.compose(U * U));
  }
  Provenance p = provenance(s, "two maps h1, h2 with u = sqrt(t)");
  p.substitution = "t = u^2";
  return {assemble_from_x(f, xs, 2, std::move(p)), std::move(ids)};
}

TwistFamily mestre_display(const FamilySpec& s) {
  const Rational &a = param(s, "a"), &b = param(s, "b");
  const QCubic f = mestre_curve(a, b);
  const RatFunc u2 = U * U;
  const RatFunc g = C(-a * b) *
                    (C(b * b) * (u2 * u2 + u2 + C(1)).pow(3) + C(a * a * a) * u2 * u2 * (u2 + C(1)).pow(2)) *
                    (u2 + C(1));
  TwistFamily fam;
  fam.curve = f;
  fam.g = as_poly(g);
  for (const RatFunc& h : mestre_maps(a, b)) fam.points.push_back(point_from_x(f, fam.g, h.compose(u2)));
  fam.claimed_rank = 2;
  fam.provenance = provenance(s, "display g, derived points", "x = h1(u^2), h2(u^2)");
  return fam;
}

// ---- thm4_1 --------------------------------------------------------------

Rational thm4_1_lambda(const Rational& a) {
  require(a != 0, "a != 0", "thm4_1");
  return -2 * a * a;
}

TwistFamily thm4_1_display(const FamilySpec& s) {
  const Rational& a = param(s, "a");
  const Rational l = thm4_1_lambda(a);
  const Rational l2 = l * l, m = 2 * l - 1;
  const RatFunc D = C(l * m) * U * U + C(2 - l);
  const RatFunc N = C(l2 * (l + 1) * m * m) * U.pow(4) - C(4 * l2 * (l - 1) * m) * U.pow(3) +
                    C(2 * l * (l + 1) * (2 * l2 - 3 * l + 2)) * U * U - C(4 * l * (l - 1) * (l - 2)) * U +
                    C((l - 2) * (l - 2) * (l + 1));
  const RatFunc D2 = D * D;
  const RatFunc E2 = C(l * m) * U * U - C(2 * l * m) * U + C(l - 2);
  const RatFunc E3 = C(l * m) * U * U - C(2 * l - 4) * U + C(l - 2);
  const RatFunc w = C(4 * l) * U * (U - C(1)) * (C(l * m) * U + C(2 - l));
  TwistFamily fam;
  fam.curve = three_roots(0, 1, l);
  fam.g = as_poly(C(2) * N * (N - C(2) * D2) * (N - C(2 * l) * D2));
  fam.points = {FPoint::affine(N / (C(2) * D2), C(1) / (C(4) * D.pow(3))),
                FPoint::affine(C(l2) * (D2 - w) / E2.pow(2), C(a * l) / E2.pow(3)),
                FPoint::affine((D2 + w) / (C(l) * E3.pow(2)), -C(a) / (C(l2) * E3.pow(3)))};
  fam.claimed_rank = 3;
  fam.provenance = provenance(s, "display", "lambda = -2a^2");
  return fam;
}

PipelineResult thm4_1_pipeline(const FamilySpec& s) {
  const Rational& a = param(s, "a");
  const Rational l = thm4_1_lambda(a);
  const QCubic f = three_roots(0, 1, l);
  const std::array<Rational, 3> roots{0, 1, l};
  TwistIdentity t1 = twist_from_permutation(to_poly(f), swap_map(roots, 0, 1));
  TwistIdentity t2 = twist_from_permutation(to_poly(f), swap_map(roots, 0, 2));
  // Swapping 0 and 1 yields lambda(1-lambda)((2lambda-1)t - lambda^2); swapping
  // 0 and lambda yields (1-lambda)((lambda-2)t + 1).
  t1 = rescale_identity(t1, Poly(std::vector<Rational>{-l * (1 - l) * l * l, l * (1 - l) * (2 * l - 1)}));
  t2 = rescale_identity(t2, Poly(std::vector<Rational>{1 - l, (1 - l) * (l - 2)}));
  const ConicPoint pt{(l + 1) / 2, a * (l - 1), a * (l - 1)};
  const ConicParam cp = conic_param_double(t1.k, t2.k, pt);
  return {assemble_rank3(f, t1, t2, cp.t_of_u, provenance(s, "root permutations, " + cp.u_of_t)), {t1, t2}};
}

// ---- thm4_2a / thm4_2b ---------------------------------------------------

struct QuarticPairData {
  Rational lambda;
  std::array<Poly, 3> ks;
};

QuarticPairData quartic_pair_data(const Rational& l) {
  return {l,
          {Poly(std::vector<Rational>{1 - l, (1 - l) * (l - 2)}),
           Poly(std::vector<Rational>{-(1 - l) * l * l, (1 - l) * l * (l * l - l + 1)}),
           Poly(std::vector<Rational>{-l * l, l * (l + 1)})}};
}

PipelineResult thm4_2_pipeline(const FamilySpec& s, bool case_a) {
  const Rational& a = param(s, "a");
  Rational l;
  std::size_t i = 0, j = 1;
  Rational t0;
  if (case_a) {
    require(a != 0 && a != 1 && a != -1, "a not in {0, 1, -1}", s.id);
    l = (1 - a * a) / (a * a + 2);
    t0 = 2 * l / (l + 1);
  } else {
    require(a != 0 && a != 2, "a not in {0, 2}", s.id);
    l = a * (a - 2) / (a * a + 1);
    require(l != 1, "lambda != 1", s.id);
    i = 1;
    j = 2;
    t0 = 1 / l;
  }
  l.canonicalize();
  const QuarticPairData d = quartic_pair_data(l);
  const QCubic f = three_roots(0, 1, l);
  TwistIdentity t1 = identity_matching(f, d.ks[i]);
  TwistIdentity t2 = identity_matching(f, d.ks[j]);
  const ConicPoint pt{t0, exact_root(t1.k.eval(t0), "k(t0)"), exact_root(t2.k.eval(t0), "k(t0)")};
  const ConicParam cp = conic_param_double(t1.k, t2.k, pt);
  Provenance p = provenance(s, "root permutations, " + cp.u_of_t, "lambda = " + to_string(l));
  return {assemble_rank3(f, t1, t2, cp.t_of_u, std::move(p)), {t1, t2}};
}

// ---- thm4_3 --------------------------------------------------------------

QCubic thm4_3_curve(const Rational& a, const Rational& b) {
  require(a != 0 && b != 0, "a, b nonzero", "thm4_3");
  require(a != 1, "a != 1", "thm4_3");
  require(a != -1, "a != -1", "thm4_3");
  return three_roots(0, b, a * a * b);
}

PipelineResult thm4_3_pipeline(const FamilySpec& s) {
  const Rational &a = param(s, "a"), &b = param(s, "b");
  const QCubic f = thm4_3_curve(a, b);
  const Isogeny iso = two_isogeny_quotient(f);
  const Rational q = a * a - 3 * a + 4;
  const Rational m = a * (a + 1) * (a - 1) * (a - 1) * b;
  const Mobius mu(m, -m * b, -q, a * (a + 1) * b);
  TwistIdentity t1 = twist_from_isogeny(to_poly(f), iso, mu);
  t1 = rescale_identity(t1, Poly(std::vector<Rational>{-(a - 1) * a * b * a * (a + 1) * b, (a - 1) * a * b * q}));
  const std::array<Rational, 3> roots{0, b, a * a * b};
  TwistIdentity t2 = twist_from_permutation(to_poly(f), swap_map(roots, 1, 2));
  t2 = rescale_identity(t2, Poly(std::vector<Rational>{-a * a * b * b, b * (a * a + 1)}));
  const ConicPoint pt{a * a * b, (a - 1) * (a - 1) * a * b, a * a * b};
  const ConicParam cp = conic_param_double(t1.k, t2.k, pt);
  Provenance p = provenance(s, "2-isogeny and root permutation, " + cp.u_of_t);
  return {assemble_rank3(f, t1, t2, cp.t_of_u, std::move(p)), {t1, t2}};
}

TwistFamily thm4_3_display(const FamilySpec& s) {
  const Rational &a = param(s, "a"), &b = param(s, "b");
  const QCubic f = thm4_3_curve(a, b);
  const Rational q = a * a - 3 * a + 4, am1 = a - 1, am2 = am1 * am1, s1 = a * a + 1;
  const RatFunc g =
      C(-4 * b) * U * (C(am2) * U - C(a)) * (C(a * a * q) * U - C(s1 * am1)) *
      (C(a * q) * U * U - C(2 * a * am1) * U + C(a + 1)) *
      (C(a * (a + 1) * am2 * q) * U * U - C(2 * a * am2 * s1) * U + C(s1 * s1)) *
      (C(a * a * am2 * q * q) * U.pow(4) - C(4 * a * a * am2 * am1 * q) * U.pow(3) +
       C(2 * am2 * (3 * a * a * a * a - 6 * a * a * a + 5 * a * a + 2)) * U * U - C(4 * a * am2 * s1) * U +
       C(s1 * s1));
  TwistFamily fam;
  fam.curve = f;
  fam.g = as_poly(g);
  for (const FPoint& P : thm4_3_pipeline(s).family.points) fam.points.push_back(point_from_x(f, fam.g, P.x));
  fam.claimed_rank = 3;
  fam.provenance = provenance(s, "display g, derived points");
  return fam;
}

// ---- thm4_5 --------------------------------------------------------------

TwistFamily thm4_5_display(const FamilySpec& s) {
  const RatFunc u2 = U * U;
  TwistFamily fam;
  fam.curve = three_roots(-1, 0, 1);
  fam.g = as_poly(C(6) * (U.pow(12) - C(33) * U.pow(8) - C(33) * U.pow(4) + C(1)));
  fam.points = {FPoint::affine(-(u2 * u2 - C(6) * u2 + C(1)) / (C(3) * (u2 + C(1)).pow(2)),
                               C(2) / (C(9) * (u2 + C(1)).pow(3))),
                FPoint::affine(-(u2 * u2 + C(6) * u2 + C(1)) / (C(3) * (u2 - C(1)).pow(2)),
                               C(2) / (C(9) * (u2 - C(1)).pow(3))),
                FPoint::affine((u2 * u2 + C(1)) / (C(6) * u2), C(1) / (C(36) * U.pow(3)))};
  fam.claimed_rank = 3;
  fam.provenance = provenance(s, "display");
  return fam;
}

PipelineResult thm4_5_pipeline(const FamilySpec& s) {
  const QCubic f = three_roots(-1, 0, 1);
  const std::array<Rational, 3> roots{0, 1, -1};
  TwistIdentity t1 = twist_from_permutation(to_poly(f), swap_map(roots, 0, 1));
  TwistIdentity t2 = twist_from_permutation(to_poly(f), swap_map(roots, 0, 2));
  t1 = rescale_identity(t1, Poly{2, 6});
  t2 = rescale_identity(t2, Poly{2, -6});
  const ConicPoint pt{Rational(-1, 3), 0, 2};
  const ConicParam cp = conic_param_double(t1.k, t2.k, pt);
  return {assemble_rank3(f, t1, t2, cp.t_of_u, provenance(s, "root permutations, " + cp.u_of_t)), {t1, t2}};
}

// ---- rem4_6 --------------------------------------------------------------

unsigned rem4_6_level(const FamilySpec& s) {
  const Rational& level = param(s, "level");
  require(level == 1 || level == 2 || level == 4, "level in {1, 2, 4}", "rem4_6");
  return static_cast<unsigned>(level.get_num().get_ui());
}

int rem4_6_rank(unsigned level) { return level == 1 ? 1 : level == 2 ? 2 : 3; }

Poly rem4_6_g(unsigned level) {
  const RatFunc w = U.pow(static_cast<int>(level));
  return as_poly(C(6) * (w.pow(3) - C(33) * w * w - C(33) * w + C(1)));
}

TwistFamily rem4_6_display(const FamilySpec& s) {
  const unsigned level = rem4_6_level(s);
  if (level == 4) {
    TwistFamily fam = thm4_5_display(s);
    fam.provenance = provenance(s, "display");
    return fam;
  }
  TwistFamily fam;
  fam.curve = three_roots(-1, 0, 1);
  fam.g = rem4_6_g(level);
  if (level == 2) {
    fam.points = {FPoint::affine(-(U * U - C(6) * U + C(1)) / (C(3) * (U + C(1)).pow(2)),
                                 C(2) / (C(9) * (U + C(1)).pow(3))),
                  FPoint::affine(-(U * U + C(6) * U + C(1)) / (C(3) * (U - C(1)).pow(2)),
                                 C(2) / (C(9) * (U - C(1)).pow(3)))};
    fam.provenance = provenance(s, "display with u^2 -> u");
  } else {
    fam.points = {point_from_x(fam.curve, fam.g, (U - C(5)).pow(2) / (C(24) * (U + C(1))))};
    fam.provenance = provenance(s, "derived point", "x of P1 - P2 with u^4 -> u");
  }
  fam.claimed_rank = rem4_6_rank(level);
  return fam;
}

std::optional<RatFunc> try_descend(const RatFunc& r, unsigned m) {
  try {
    return descend(r, m);
  } catch (const CheckFailure&) {
    return std::nullopt;
  }
}

// x descends to the lower level and gives a point on its twist.
bool descends_to(const QCubic& f, const Poly& g, const RatFunc& x, unsigned m, std::vector<RatFunc>& out) {
  auto d = try_descend(x, m);
  if (!d) return false;
  try {
    point_from_x(f, g, *d);
  } catch (const CheckFailure&) {
    return false;
  }
  out.push_back(*d);
  return true;
}

PipelineResult rem4_6_pipeline(const FamilySpec& s) {
  const unsigned level = rem4_6_level(s);
  PipelineResult top = thm4_5_pipeline(s);
  if (level == 4) return top;
  const TwistFamily& fam = top.family;
  const unsigned m = 4 / level;
  const Poly g = rem4_6_g(level);
  const FTwist E = fam.twist();
  std::vector<RatFunc> xs;
  if (level == 2) {
    for (const FPoint& P : fam.points) descends_to(fam.curve, g, P.x, m, xs);
  } else {
    for (std::size_t i = 0; i < fam.points.size() && xs.empty(); ++i) {
      for (std::size_t j = i + 1; j < fam.points.size() && xs.empty(); ++j) {
        const FPoint& P = fam.points[i];
        const FPoint& Q = fam.points[j];
        if (!descends_to(fam.curve, g, point_sub(P, Q, E).x, m, xs)) {
          descends_to(fam.curve, g, point_add(P, Q, E).x, m, xs);
        }
      }
    }
  }
  if (xs.size() != static_cast<std::size_t>(rem4_6_rank(level))) {
    throw CheckFailure("descent", "found " + std::to_string(xs.size()) + " descending points");
  }
  Provenance p = provenance(s, "descent of the rank-3 pipeline family", "u^" + std::to_string(m) + " -> u");
  return {assemble_from_x(fam.curve, xs, rem4_6_rank(level), std::move(p)), top.identities};
}

// ---- registry ------------------------------------------------------------

struct Recipe {
  std::function<TwistFamily(const FamilySpec&)> display;
  std::function<PipelineResult(const FamilySpec&)> pipeline;
};

const std::map<std::string, Recipe>& recipes() {
  static const std::map<std::string, Recipe> table = {
      {"cor3_2", {cor3_2_display, cor3_2_pipeline}},
      {"cor3_3", {cor3_3_display, cor3_3_pipeline}},
      {"mestre3_4", {mestre_display, mestre_pipeline}},
      {"thm4_1", {thm4_1_display, thm4_1_pipeline}},
      {"thm4_2a",
       {[](const FamilySpec& s) {
          TwistFamily fam = thm4_2_pipeline(s, true).family;
          fam.provenance.method = "derived: " + fam.provenance.method;
          return fam;
        },
        [](const FamilySpec& s) { return thm4_2_pipeline(s, true); }}},
      {"thm4_2b",
       {[](const FamilySpec& s) {
          TwistFamily fam = thm4_2_pipeline(s, false).family;
          fam.provenance.method = "derived: " + fam.provenance.method;
          return fam;
        },
        [](const FamilySpec& s) { return thm4_2_pipeline(s, false); }}},
      {"thm4_3", {thm4_3_display, thm4_3_pipeline}},
      {"thm4_5", {thm4_5_display, thm4_5_pipeline}},
      {"rem4_6", {rem4_6_display, rem4_6_pipeline}},
  };
  return table;
}

int expected_degree(const FamilySpec& spec) {
  if (spec.id == "rem4_6") return 3 * static_cast<int>(rem4_6_level(spec));
  return catalog_entry(spec.id).degree;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"cor3_2", "y^2 = x^3 + a x^2 + b x, rank 2, deg g = 6", {{"a", 1}, {"b", 2}},
       {"ab != 0", "discriminant b^2(a^2 - 4b) != 0"}, 2, 6, true},
      {"cor3_3", "y^2 = x^3 + (b^2/4c) x^2 + b x + c via a 3-isogeny, rank 2, deg g = 6",
       {{"b", 3}, {"c", 1}}, {"bc != 0", "b^3 != 54c^2"}, 2, 6, true},
      {"mestre3_4", "y^2 = x^3 + a x + b, rank >= 2, deg g = 14", {{"a", 1}, {"b", 1}},
       {"ab != 0", "4a^3 + 27b^2 != 0"}, 2, 14, false},
      {"thm4_1", "y^2 = x(x-1)(x-lambda), lambda = -2a^2, rank >= 3, deg g = 12", {{"a", 1}},
       {"a != 0"}, 3, 12, true},
      {"thm4_2a", "y^2 = x(x-1)(x-lambda), lambda = (1-a^2)/(a^2+2), rank >= 3, deg g = 12",
       {{"a", 2}}, {"a not in {0, 1, -1}"}, 3, 12, false},
      {"thm4_2b", "y^2 = x(x-1)(x-lambda), lambda = a(a-2)/(a^2+1), rank >= 3, deg g = 12",
       {{"a", 1}}, {"a not in {0, 2}", "lambda != 1"}, 3, 12, false},
      {"thm4_3", "y^2 = x(x-b)(x-a^2 b) via a 2-isogeny, rank >= 3, deg g = 11", {{"a", 2}, {"b", 1}},
       {"a, b nonzero", "a != 1", "a != -1"}, 3, 11, false},
      {"thm4_5", "6(u^12 - 33u^8 - 33u^4 + 1) y^2 = x^3 - x, rank >= 3", {}, {}, 3, 12, true},
      {"rem4_6", "6(w^3 - 33w^2 - 33w + 1) y^2 = x^3 - x with w = u^level, ranks 1, 2, 3",
       {{"level", 1}}, {"level in {1, 2, 4}"}, 1, 3, false},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.id == id) return e;
  }
  throw std::invalid_argument("unknown family id: " + id);
}

FamilySpec make_spec(const std::string& id, const std::string& overrides) {
  FamilySpec spec{id, catalog_entry(id).defaults};
  std::stringstream in(overrides);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value, got " + item);
    const std::string name = item.substr(0, eq);
    auto it = std::find_if(spec.params.begin(), spec.params.end(),
                           [&](const auto& p) { return p.first == name; });
    if (it == spec.params.end()) throw std::invalid_argument(id + " has no parameter " + name);
    it->second = parse_rational(item.substr(eq + 1));
  }
  return spec;
}

const Rational& param(const FamilySpec& spec, const std::string& name) {
  for (const auto& [k, v] : spec.params) {
    if (k == name) return v;
  }
  throw std::invalid_argument(spec.id + ": missing parameter " + name);
}

TwistFamily build(const FamilySpec& spec) {
  catalog_entry(spec.id);
  TwistFamily fam = recipes().at(spec.id).display(spec);
  check_structure(fam);
  if (fam.g.degree() != expected_degree(spec)) {
    throw CheckFailure("degree", "deg g = " + std::to_string(fam.g.degree()) + ", expected " +
                                     std::to_string(expected_degree(spec)));
  }
  return fam;
}

PipelineResult build_pipeline(const FamilySpec& spec) {
  catalog_entry(spec.id);
  PipelineResult r = recipes().at(spec.id).pipeline(spec);
  check_structure(r.family);
  return r;
}

bool CrosscheckReport::ok() const {
  return !items.empty() && std::all_of(items.begin(), items.end(), [](const auto& i) { return i.ok; });
}

std::string CrosscheckReport::first_failure() const {
  for (const CrosscheckItem& i : items) {
    if (!i.ok) return i.name;
  }
  return "";
}

namespace {

bool matches_some_point(const FPoint& P, const TwistFamily& pipe) {
  const FTwist E = pipe.twist();
  std::vector<FPoint> torsion{FPoint::at_infinity()};
  for (const Rational& e : rational_roots(pipe.curve)) torsion.push_back(FPoint::affine(RatFunc(e), RatFunc()));
  for (const FPoint& Q : pipe.points) {
    for (const FPoint& T : torsion) {
      const FPoint R = point_add(Q, T, E);
      if (!R.infinity && R.x == P.x) return true;
    }
  }
  return false;
}

}  // namespace

CrosscheckReport crosscheck(const FamilySpec& spec) {
  CrosscheckReport report{spec.id, {}};
  TwistFamily fam;
  try {
    fam = build(spec);
  } catch (const CheckFailure& e) {
    report.items.push_back({e.check(), false, e.what()});
    return report;
  } catch (const std::exception& e) {
    report.items.push_back({"catalog_build", false, e.what()});
    return report;
  }
  return crosscheck(spec, fam);
}

CrosscheckReport crosscheck(const FamilySpec& spec, const TwistFamily& catalog_family) {
  CrosscheckReport report{spec.id, {}};
  try {
    check_structure(catalog_family);
    report.items.push_back({"structure", true, "g squarefree, points on curve and nonconstant"});
  } catch (const CheckFailure& e) {
    report.items.push_back({e.check(), false, e.what()});
  }
  const int deg = catalog_family.g.degree();
  report.items.push_back({"degree", deg == expected_degree(spec), "deg g = " + std::to_string(deg)});

  PipelineResult pipe;
  try {
    pipe = build_pipeline(spec);
  } catch (const std::exception& e) {
    report.items.push_back({"pipeline", false, e.what()});
    return report;
  }
  bool ids_ok = std::all_of(pipe.identities.begin(), pipe.identities.end(),
                            [](const TwistIdentity& t) { return t.verify(); });
  report.items.push_back({"twist_identities", ids_ok, std::to_string(pipe.identities.size()) + " identities"});

  const bool curve_ok = pipe.family.curve == catalog_family.curve;
  report.items.push_back({"curve", curve_ok, "base cubic"});
  bool g_ok = false;
  std::string detail;
  if (!catalog_family.g.is_zero()) {
    const SquareClass sc = square_class(RatFunc(catalog_family.g) / RatFunc(pipe.family.g));
    g_ok = sc.k == Poly::constant(1);
    detail = "square class of g_catalog / g_pipeline: " + sc.k.to_string('u');
  }
  report.items.push_back({"g_square_class", g_ok, detail});
  for (std::size_t i = 0; i < catalog_family.points.size(); ++i) {
    const bool ok = curve_ok && matches_some_point(catalog_family.points[i], pipe.family);
    report.items.push_back({"point_match[" + std::to_string(i) + "]", ok,
                            "x up to sign and 2-torsion translation"});
  }
  return report;
}

std::array<TwistFamily, 3> rem4_6_tower() {
  return {build(make_spec("rem4_6", "level=1")), build(make_spec("rem4_6", "level=2")),
          build(make_spec("rem4_6", "level=4"))};
}

RatFunc descend(const RatFunc& r, unsigned m) {
  auto down = [&](const Poly& p) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
      if (i % m == 0) {
        c.push_back(p.coeffs()[i]);
      } else if (p.coeffs()[i] != 0) {
        throw CheckFailure("descent", r.to_string('u') + " is not a function of u^" + std::to_string(m));
      }
    }
    return Poly(std::move(c));
  };
  return RatFunc(down(r.num()), down(r.den()));
}

}  // namespace twistrank
