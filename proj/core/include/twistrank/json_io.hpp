#pragma once

#include <nlohmann/json.hpp>

#include "twistrank/catalog.hpp"
#include "twistrank/certify.hpp"
#include "twistrank/densitylab.hpp"

namespace twistrank {

using Json = nlohmann::json;

// Rationals and big integers travel as decimal strings ("num/den" or "n").
// Polynomials are coefficient arrays, lowest degree first. Decoders throw
// std::invalid_argument on malformed input and do no mathematical checks.

Json encode(const Rational& q);
Json encode(const Poly& p);
Json encode(const RatFunc& r);
Json encode(const QCubic& f);
Json encode(const FPoint& P);
Json encode(const QPoint& P);
Json encode(const ParamList& params);
Json encode(const TwistFamily& fam);
Json encode(const SpecializedTwist& st);
Json encode(const SieveWitness& w);
Json encode(const RankCertificate& cert);
Json encode(const CrosscheckReport& rep);
Json encode(const DensityReport& rep);

Rational decode_rational(const Json& j);
Integer decode_integer(const Json& j);
Poly decode_poly(const Json& j);
RatFunc decode_ratfunc(const Json& j);
QCubic decode_cubic(const Json& j);
FPoint decode_fpoint(const Json& j);
ParamList decode_params(const Json& j);
TwistFamily decode_family(const Json& j);
SieveWitness decode_witness(const Json& j);
RankCertificate decode_certificate(const Json& j);
DensityReport decode_density(const Json& j);

}  // namespace twistrank
