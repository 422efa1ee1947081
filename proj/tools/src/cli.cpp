#include "twistrank_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "twistrank/json_io.hpp"

namespace twistrank::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Rational> parse_list(const std::string& text, std::size_t n, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw Usage(what + ": bad rational '" + item + "'");
    }
  }
  if (out.size() != n) throw Usage(what + ": expected " + std::to_string(n) + " comma-separated rationals");
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Usage(path + ": " + e.what());
  }
}

void write_json(const Json& j, const std::string& path) {
  std::ofstream o(path);
  if (!o) throw Usage("cannot write " + path);
  o << j.dump(2) << '\n';
}

// Either --family FILE or --id ID [--params P].
struct FamilySource {
  std::string file;
  std::string id;
  std::string params;

  void add(CLI::App* cmd) {
    cmd->add_option("--family", file, "TwistFamily JSON file");
    cmd->add_option("--id", id, "catalog family id");
    cmd->add_option("--params", params, "parameter overrides, e.g. a=1,b=2");
  }

  TwistFamily load() const {
    if (!file.empty() && !id.empty()) throw Usage("give either --family or --id, not both");
    if (!file.empty()) {
      try {
        return decode_family(read_json(file));
      } catch (const std::invalid_argument& e) {
        throw Usage(file + ": " + e.what());
      }
    }
    if (id.empty()) throw Usage("one of --family or --id is required");
    return build(spec());
  }

  FamilySpec spec() const {
    try {
      return make_spec(id, params);
    } catch (const std::invalid_argument& e) {
      throw Usage(e.what());
    }
  }
};

struct Budget {
  int samples = CertifyOptions{}.samples;
  int primes = CertifyOptions{}.prime_budget;
  int bound = CertifyOptions{}.relation_bound;
  std::uint64_t seed = CertifyOptions{}.seed;
  unsigned threads = default_threads();

  void add(CLI::App* cmd) {
    cmd->add_option("--samples", samples, "specializations tried")->check(CLI::PositiveNumber);
    cmd->add_option("--primes", primes, "sieve primes per specialization")->check(CLI::PositiveNumber);
    cmd->add_option("--bound", bound, "relation coefficient bound")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "seed for sieve prime selection");
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  CertifyOptions options() const { return {samples, primes, bound, seed, threads}; }
};

std::string join_params(const ParamList& ps) {
  std::string s;
  for (const auto& [k, v] : ps) s += (s.empty() ? "" : ",") + k + "=" + to_string(v);
  return s;
}

void print_certificate(const RankCertificate& c, std::ostream& out) {
  out << "family " << c.family << " (" << join_params(c.params) << ")\n";
  for (const CertCheck& k : c.checks) out << (k.passed ? "  pass " : "  FAIL ") << k.name << ": " << k.detail << '\n';
  for (const SieveWitness& w : c.witnesses) {
    out << "  witness u0=" << to_string(w.u0) << " D=" << w.D << " primes=" << w.primes.size()
        << " G=" << w.torsion_multiplier << " vectors=" << w.vectors_tested
        << (w.independent ? " independent" : " relation possible") << '\n';
  }
  out << "rank >= " << c.certified_lower << ", genus bound " << c.genus_upper << '\n';
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("TWISTRANK_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank lower bounds for quadratic twist families"};
  app.name("twistrank");
  app.require_subcommand(1);
  bool json = false;
  std::string out_path;
  auto json_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--json", json, "machine-readable output");
    cmd->add_option("--out", out_path, "write the JSON result to a file");
  };

  auto* catalog = app.add_subcommand("catalog", "named families");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "list catalog families");
  cat_list->add_flag("--json", json, "machine-readable output");
  auto* cat_build = catalog->add_subcommand("build", "build a catalog family as TwistFamily JSON");
  std::string build_id, build_params;
  cat_build->add_option("--id", build_id, "family id")->required();
  cat_build->add_option("--params", build_params, "parameter overrides, e.g. a=1,b=2");
  cat_build->add_option("--out", out_path, "output file");

  auto* forge = app.add_subcommand("forge", "assemble a family from root permutations");
  forge->require_subcommand(1);
  std::string curve_text, h_text, h1_text, h2_text, point_text;
  auto* rank2 = forge->add_subcommand("rank2", "one permutation Mobius map h");
  rank2->add_option("--curve", curve_text, "e2,e1,e0 of x^3 + e2 x^2 + e1 x + e0")->required();
  rank2->add_option("--mobius", h_text, "a,b,c,d of h(t) = (at+b)/(ct+d)")->required();
  rank2->add_option("--out", out_path, "output file");
  auto* rank3 = forge->add_subcommand("rank3", "two permutation Mobius maps and a conic point");
  rank3->add_option("--curve", curve_text, "e2,e1,e0")->required();
  rank3->add_option("--mobius1", h1_text, "a,b,c,d")->required();
  rank3->add_option("--mobius2", h2_text, "a,b,c,d")->required();
  rank3->add_option("--point", point_text, "t0,r0,s0 with r0^2 = k1(t0), s0^2 = k2(t0)")->required();
  rank3->add_option("--out", out_path, "output file");

  auto* certify = app.add_subcommand("certify", "certify the rank lower bound of a family");
  FamilySource cert_src;
  Budget cert_budget;
  cert_src.add(certify);
  cert_budget.add(certify);
  json_flags(certify);

  auto* specialize_cmd = app.add_subcommand("specialize", "specialize a family at u0");
  FamilySource spec_src;
  std::string u0_text;
  spec_src.add(specialize_cmd);
  specialize_cmd->add_option("--u0", u0_text, "rational u0")->required();
  json_flags(specialize_cmd);

  auto* density = app.add_subcommand("density", "squarefree parts of F(a, b) over a grid");
  FamilySource dens_src;
  Budget dens_budget;
  long grid = 50, modulus = 1;
  std::string x_max_text;
  bool do_certify = false;
  dens_src.add(density);
  dens_budget.add(density);
  density->add_option("--grid", grid, "bound on a and b")->check(CLI::PositiveNumber);
  density->add_option("--modulus", modulus, "a = b = 1 mod M")->check(CLI::PositiveNumber);
  density->add_option("--x-max", x_max_text, "keep |D| < x-max (default: no cap)");
  density->add_flag("--certify", do_certify, "sieve-certify each D");
  json_flags(density);

  auto* cross = app.add_subcommand("crosscheck", "compare a catalog family with the twisting pipeline");
  std::string cross_id, cross_params, cross_file;
  cross->add_option("--id", cross_id, "family id")->required();
  cross->add_option("--params", cross_params, "parameter overrides");
  cross->add_option("--family", cross_file, "TwistFamily JSON to compare instead of the catalog display");
  json_flags(cross);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*cat_list) {
      if (json) {
        Json arr = Json::array();
        for (const CatalogEntry& c : catalog_entries()) {
          arr.push_back({{"id", c.id},
                         {"description", c.description},
                         {"defaults", encode(c.defaults)},
                         {"hypotheses", c.hypotheses},
                         {"claimed_rank", c.claimed_rank},
                         {"degree", c.degree}});
        }
        out << arr.dump(2) << '\n';
      } else {
        for (const CatalogEntry& c : catalog_entries()) {
          out << c.id << "  rank " << c.claimed_rank << "  deg " << c.degree << "  " << join_params(c.defaults)
              << "  " << c.description << '\n';
        }
      }
      return ok;
    }

    if (*cat_build) {
      FamilySource src{"", build_id, build_params};
      const Json j = encode(build(src.spec()));
      if (out_path.empty()) out << j.dump(2) << '\n';
      else write_json(j, out_path);
      return ok;
    }

    if (*rank2 || *rank3) {
      const auto cv = parse_list(curve_text, 3, "--curve");
      const QCubic f = cubic_from_poly(Poly(std::vector<Rational>{cv[2], cv[1], cv[0], Rational(1)}));
      const Poly fp = to_poly(f);
      auto mob = [](const std::string& text, const std::string& what) {
        const auto v = parse_list(text, 4, what);
        return Mobius(v[0], v[1], v[2], v[3]);
      };
      TwistFamily fam;
      Provenance pv;
      pv.family = "forge";
      if (*rank2) {
        const TwistIdentity tid = twist_from_permutation(fp, mob(h_text, "--mobius"));
        const ConicParam cp = conic_param_single(tid.k);
        pv.method = "rank2: permutation identity, k = " + tid.k.to_string();
        pv.substitution = "t = " + cp.t_of_u.to_string('u') + ", " + cp.u_of_t;
        fam = assemble_rank2(f, tid, cp.t_of_u, pv);
      } else {
        const TwistIdentity t1 = twist_from_permutation(fp, mob(h1_text, "--mobius1"));
        const TwistIdentity t2 = twist_from_permutation(fp, mob(h2_text, "--mobius2"));
        const auto p = parse_list(point_text, 3, "--point");
        const ConicParam cp = conic_param_double(t1.k, t2.k, ConicPoint{p[0], p[1], p[2]});
        pv.method = "rank3: k1 = " + t1.k.to_string() + ", k2 = " + t2.k.to_string();
        pv.substitution = "t = " + cp.t_of_u.to_string('u') + ", " + cp.u_of_t;
        fam = assemble_rank3(f, t1, t2, cp.t_of_u, pv);
      }
      check_structure(fam);
      const Json j = encode(fam);
      if (out_path.empty()) out << j.dump(2) << '\n';
      else write_json(j, out_path);
      return ok;
    }

    if (*certify) {
      const TwistFamily fam = cert_src.load();
      const RankCertificate cert = certify_family(fam, cert_budget.options());
      if (!out_path.empty()) write_json(encode(cert), out_path);
      if (json) out << encode(cert).dump(2) << '\n';
      else print_certificate(cert, out);
      for (const CertCheck& c : cert.checks) {
        if (!c.passed) {
          err << "check failed: " << c.name << ": " << c.detail << '\n';
          return check_failed;
        }
      }
      return ok;
    }

    if (*specialize_cmd) {
      const TwistFamily fam = spec_src.load();
      Rational u0;
      try {
        u0 = parse_rational(u0_text);
      } catch (const std::exception&) {
        throw Usage("--u0: bad rational '" + u0_text + "'");
      }
      const SpecializedTwist st = specialize(fam, u0);
      if (!out_path.empty()) write_json(encode(st), out_path);
      if (json) {
        out << encode(st).dump(2) << '\n';
      } else {
        out << "u0 = " << to_string(u0) << ", D = " << st.D << ", w = " << to_string(st.w) << '\n';
        for (std::size_t i = 0; i < st.points.size(); ++i) {
          const QPoint& P = st.points[i];
          out << "  P" << i + 1 << " = ";
          if (P.infinity) out << "O\n";
          else out << "(" << to_string(P.x) << ", " << to_string(P.y) << ")\n";
        }
      }
      return ok;
    }

    if (*density) {
      const TwistFamily fam = dens_src.load();
      Integer x_max;
      if (x_max_text.empty()) {
        mpz_ui_pow_ui(x_max.get_mpz_t(), 10, 100);
      } else if (x_max.set_str(x_max_text, 10) != 0 || x_max < 1) {
        throw Usage("--x-max: expected a positive integer");
      }
      const CertifyOptions opt = dens_budget.options();
      DensityReport rep = enumerate_S(family_form(fam), grid, modulus, x_max, opt.threads);
      rep.family = fam.provenance.family;
      if (do_certify) certified_density(fam, rep, opt);
      const Json j = encode(rep);
      if (!out_path.empty()) write_json(j, out_path);
      if (json) {
        out << j.dump(2) << '\n';
      } else {
        out << "family " << rep.family << ", grid " << grid << ", M " << modulus << ", k " << rep.k << ", "
            << rep.entries.size() << " distinct D\n";
        for (std::size_t i = 0; i < rep.xs.size(); ++i) {
          out << "  x = " << rep.xs[i] << "  |S(x)| = " << rep.counts[i];
          if (!rep.certified_counts.empty()) out << "  certified " << rep.certified_counts[i];
          out << '\n';
        }
        if (!j["fit"].is_null())
          out << "slope " << j["fit"]["slope"].get<double>() << " (1/k = " << 1.0 / rep.k << ")\n";
      }
      return ok;
    }

    if (*cross) {
      FamilySource src{"", cross_id, cross_params};
      const FamilySpec spec = src.spec();
      CrosscheckReport rep;
      if (cross_file.empty()) {
        rep = crosscheck(spec);
      } else {
        TwistFamily fam;
        try {
          fam = decode_family(read_json(cross_file));
        } catch (const std::invalid_argument& e) {
          throw Usage(cross_file + ": " + e.what());
        }
        rep = crosscheck(spec, fam);
      }
      if (!out_path.empty()) write_json(encode(rep), out_path);
      if (json) {
        out << encode(rep).dump(2) << '\n';
      } else {
        for (const CrosscheckItem& it : rep.items)
          out << (it.ok ? "  ok   " : "  FAIL ") << it.name << (it.detail.empty() ? "" : ": " + it.detail) << '\n';
      }
      if (!rep.ok()) {
        err << "check failed: " << rep.first_failure() << '\n';
        return check_failed;
      }
      return ok;
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.check() << ": " << e.what() << '\n';
    return check_failed;
  } catch (const HypothesisError& e) {
    err << "hypothesis failed: " << e.hypothesis() << ": " << e.what() << '\n';
    return check_failed;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return check_failed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace twistrank::cli
