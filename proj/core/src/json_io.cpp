#include "twistrank/json_io.hpp"

#include <stdexcept>

namespace twistrank {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("json: bad field '") + key + "': " + e.what());
  }
}

Json encode_integer(const Integer& n) { return n.get_str(); }

Json encode_checks(const std::vector<CertCheck>& checks) {
  Json out = Json::array();
  for (const CertCheck& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

template <class T>
Json encode_list(const std::vector<T>& v) {
  Json out = Json::array();
  for (const T& x : v) out.push_back(encode(x));
  return out;
}

}  // namespace

Json encode(const Rational& q) { return to_string(q); }

Json encode(const Poly& p) {
  Json out = Json::array();
  for (const Rational& c : p.coeffs()) out.push_back(encode(c));
  return out;
}

Json encode(const RatFunc& r) { return {{"num", encode(r.num())}, {"den", encode(r.den())}}; }

Json encode(const QCubic& f) { return {{"e2", encode(f.e2)}, {"e1", encode(f.e1)}, {"e0", encode(f.e0)}}; }

Json encode(const FPoint& P) {
  if (P.infinity) return {{"infinity", true}};
  return {{"x", encode(P.x)}, {"y", encode(P.y)}};
}

Json encode(const QPoint& P) {
  if (P.infinity) return {{"infinity", true}};
  return {{"x", encode(P.x)}, {"y", encode(P.y)}};
}

Json encode(const ParamList& params) {
  Json out = Json::array();
  for (const auto& [name, value] : params) out.push_back({{"name", name}, {"value", encode(value)}});
  return out;
}

Json encode(const TwistFamily& fam) {
  Json pts = Json::array();
  for (const FPoint& P : fam.points) pts.push_back(encode(P));
  const Provenance& pv = fam.provenance;
  return {{"curve", encode(fam.curve)},
          {"g", encode(fam.g)},
          {"points", pts},
          {"claimed_rank", fam.claimed_rank},
          {"provenance",
           {{"family", pv.family},
            {"params", encode(pv.params)},
            {"method", pv.method},
            {"substitution", pv.substitution},
            {"notes", pv.notes}}}};
}

Json encode(const SpecializedTwist& st) {
  Json pts = Json::array();
  for (const QPoint& P : st.points) pts.push_back(encode(P));
  return {{"u0", encode(st.u0)}, {"D", encode_integer(st.D)}, {"w", encode(st.w)}, {"curve", encode(st.f)},
          {"points", pts}};
}

Json encode(const SieveWitness& w) {
  return {{"u0", encode(w.u0)},
          {"D", encode_integer(w.D)},
          {"subset", w.subset},
          {"primes", w.primes},
          {"bound", w.bound},
          {"torsion_multiplier", w.torsion_multiplier},
          {"independent", w.independent},
          {"survivor", w.survivor},
          {"vectors_tested", w.vectors_tested}};
}

Json encode(const RankCertificate& cert) {
  return {{"family", cert.family},
          {"params", encode(cert.params)},
          {"checks", encode_checks(cert.checks)},
          {"witnesses", encode_list(cert.witnesses)},
          {"certified_lower", cert.certified_lower},
          {"genus_upper", cert.genus_upper}};
}

Json encode(const CrosscheckReport& rep) {
  Json items = Json::array();
  for (const CrosscheckItem& it : rep.items) items.push_back({{"name", it.name}, {"ok", it.ok}, {"detail", it.detail}});
  return {{"id", rep.id}, {"ok", rep.ok()}, {"items", items}};
}

Json encode(const DensityReport& rep) {
  Json series = Json::array();
  for (std::size_t i = 0; i < rep.xs.size(); ++i) {
    Json row = {{"x", encode_integer(rep.xs[i])}, {"count", rep.counts.at(i)}};
    if (!rep.certified_counts.empty()) row["certified"] = rep.certified_counts.at(i);
    series.push_back(row);
  }
  Json entries = Json::array();
  for (const DensityEntry& e : rep.entries) {
    Json primes = Json::array();
    for (const Integer& p : e.primes) primes.push_back(encode_integer(p));
    Json row = {{"D", encode_integer(e.D)}, {"a", e.a}, {"b", e.b}, {"primes", primes}, {"certified", e.certified}};
    if (e.witness) row["witness"] = encode(*e.witness);
    entries.push_back(row);
  }
  Json out = {{"family", rep.family},         {"grid", rep.grid},
              {"modulus", rep.modulus},       {"x_max", encode_integer(rep.x_max)},
              {"k", rep.k},                   {"max_abs_F", encode_integer(rep.max_abs_F)},
              {"series", series},             {"entries", entries}};
  try {
    const ExponentFit fit = fit_exponent(rep);
    out["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"residual", fit.residual},
                  {"points", fit.points}};
  } catch (const std::exception&) {
    out["fit"] = nullptr;
  }
  return out;
}

Rational decode_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("json: rational must be a string");
  return parse_rational(j.get<std::string>());
}

Integer decode_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("json: integer must be a string");
  Integer n;
  if (n.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("json: bad integer " + j.dump());
  return n;
}

Poly decode_poly(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: polynomial must be an array");
  std::vector<Rational> c;
  for (const Json& x : j) c.push_back(decode_rational(x));
  return Poly(std::move(c));
}

RatFunc decode_ratfunc(const Json& j) {
  if (j.is_string() || j.is_number()) return RatFunc(decode_rational(j));
  return RatFunc(decode_poly(field(j, "num")), decode_poly(field(j, "den")));
}

QCubic decode_cubic(const Json& j) {
  return QCubic{decode_rational(field(j, "e2")), decode_rational(field(j, "e1")), decode_rational(field(j, "e0"))};
}

FPoint decode_fpoint(const Json& j) {
  if (j.is_object() && j.value("infinity", false)) return FPoint::at_infinity();
  return FPoint::affine(decode_ratfunc(field(j, "x")), decode_ratfunc(field(j, "y")));
}

ParamList decode_params(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: params must be an array");
  ParamList out;
  for (const Json& p : j) out.emplace_back(get<std::string>(p, "name"), decode_rational(field(p, "value")));
  return out;
}

TwistFamily decode_family(const Json& j) {
  TwistFamily fam;
  fam.curve = decode_cubic(field(j, "curve"));
  fam.g = decode_poly(field(j, "g"));
  const Json& pts = field(j, "points");
  if (!pts.is_array()) throw std::invalid_argument("json: points must be an array");
  for (const Json& p : pts) fam.points.push_back(decode_fpoint(p));
  fam.claimed_rank = get<int>(j, "claimed_rank");
  if (j.contains("provenance")) {
    const Json& pv = j.at("provenance");
    fam.provenance.family = pv.value("family", "");
    if (pv.contains("params")) fam.provenance.params = decode_params(pv.at("params"));
    fam.provenance.method = pv.value("method", "");
    fam.provenance.substitution = pv.value("substitution", "");
    fam.provenance.notes = pv.value("notes", "");
  }
  return fam;
}

SieveWitness decode_witness(const Json& j) {
  SieveWitness w;
  w.u0 = decode_rational(field(j, "u0"));
  w.D = decode_integer(field(j, "D"));
  w.subset = get<std::vector<std::size_t>>(j, "subset");
  w.primes = get<std::vector<std::uint64_t>>(j, "primes");
  w.bound = get<int>(j, "bound");
  w.torsion_multiplier = get<std::uint64_t>(j, "torsion_multiplier");
  w.independent = get<bool>(j, "independent");
  w.survivor = get<std::vector<long>>(j, "survivor");
  w.vectors_tested = get<std::size_t>(j, "vectors_tested");
  return w;
}

RankCertificate decode_certificate(const Json& j) {
  RankCertificate c;
  c.family = get<std::string>(j, "family");
  c.params = decode_params(field(j, "params"));
  for (const Json& k : field(j, "checks"))
    c.checks.push_back({get<std::string>(k, "name"), get<bool>(k, "passed"), get<std::string>(k, "detail")});
  for (const Json& w : field(j, "witnesses")) c.witnesses.push_back(decode_witness(w));
  c.certified_lower = get<int>(j, "certified_lower");
  c.genus_upper = get<int>(j, "genus_upper");
  return c;
}

DensityReport decode_density(const Json& j) {
  DensityReport r;
  r.family = get<std::string>(j, "family");
  r.grid = get<long>(j, "grid");
  r.modulus = get<long>(j, "modulus");
  r.x_max = decode_integer(field(j, "x_max"));
  r.k = get<int>(j, "k");
  r.max_abs_F = decode_integer(field(j, "max_abs_F"));
  bool certified = false;
  for (const Json& row : field(j, "series")) {
    r.xs.push_back(decode_integer(field(row, "x")));
    r.counts.push_back(get<std::size_t>(row, "count"));
    if (row.contains("certified")) {
      certified = true;
      r.certified_counts.push_back(get<std::size_t>(row, "certified"));
    }
  }
  if (certified && r.certified_counts.size() != r.xs.size())
    throw std::invalid_argument("json: certified counts missing for some x");
  for (const Json& row : field(j, "entries")) {
    DensityEntry e;
    e.D = decode_integer(field(row, "D"));
    e.a = get<long>(row, "a");
    e.b = get<long>(row, "b");
    for (const Json& p : field(row, "primes")) e.primes.push_back(decode_integer(p));
    e.certified = get<bool>(row, "certified");
    if (row.contains("witness")) e.witness = decode_witness(row.at("witness"));
    r.entries.push_back(std::move(e));
  }
  return r;
}

}  // namespace twistrank
