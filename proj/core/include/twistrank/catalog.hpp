#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "twistrank/twistforge.hpp"

namespace twistrank {

using ParamList = std::vector<std::pair<std::string, Rational>>;

/// A named family with its parameter values.
struct FamilySpec {
  std::string id;
  ParamList params;
};

struct CatalogEntry {
  std::string id;
  std::string description;
  ParamList defaults;
  std::vector<std::string> hypotheses;
  int claimed_rank;
  /// Degree of g at generic parameters.
  int degree;
  /// Whether the points come from displayed formulas (otherwise derived).
  bool displayed_points;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& id);

/// Defaults overridden by "name=value" pairs separated by commas. Unknown
/// ids or parameter names throw std::invalid_argument.
FamilySpec make_spec(const std::string& id, const std::string& overrides = "");
const Rational& param(const FamilySpec& spec, const std::string& name);

/// The family from its displayed g and points. Derived points use the
/// pipeline's x-coordinates. Throws HypothesisError naming a violated
/// hypothesis.
TwistFamily build(const FamilySpec& spec);

/// The family as produced by the twisting pipeline, with the identities used.
struct PipelineResult {
  TwistFamily family;
  std::vector<TwistIdentity> identities;
};
PipelineResult build_pipeline(const FamilySpec& spec);

struct CrosscheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CrosscheckReport {
  std::string id;
  std::vector<CrosscheckItem> items;
  bool ok() const;
  /// Name of the first failing item, empty if none.
  std::string first_failure() const;
};

/// Compares a catalog family with the pipeline: g up to squares in Q(u),
/// each point's x against some pipeline point translated by 2-torsion.
CrosscheckReport crosscheck(const FamilySpec& spec);
CrosscheckReport crosscheck(const FamilySpec& spec, const TwistFamily& catalog_family);

/// g(u), g(u^2), g(u^4) for g = 6(u^3 - 33u^2 - 33u + 1), ranks 1, 2, 3.
std::array<TwistFamily, 3> rem4_6_tower();

/// s with r(u) = s(u^m); throws CheckFailure named "descent" otherwise.
RatFunc descend(const RatFunc& r, unsigned m);

}  // namespace twistrank
