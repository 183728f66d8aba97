#pragma once

#include <string>

#include <json.hpp>

#include "soliton/curve.hpp"
#include "soliton/models.hpp"
#include "soliton/numeric.hpp"

namespace soliton {

using json = nlohmann::ordered_json;

json to_json(const GaussianRational& c);
GaussianRational rational_from_json(const json& j);

json to_json(const Ring& ring);
RingPtr ring_from_json(const json& j);

// {"terms":[{"coeff":{"re":"3/4","im":"0"},"factors":[{"var":"E","order":0,"exp":2}]}]}
json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const json& j, const RingPtr& ring);

// {"degree":d,"coeffs":[leading, ..., constant]}
json to_json(const LambdaPoly& p);
LambdaPoly lambdapoly_from_json(const json& j, const RingPtr& ring);

json to_json(const SolitonDerivation& der);
json to_json(const ConditionSet& cs);
json to_json(const CurveData& cd);
json to_json(const ReducedCondition& rc);
json to_json(const VerifyReport& rep, bool with_details = false);

// 12 significant digits, so identical runs give identical bytes
double round12(double v);

std::string to_latex(const GaussianRational& c);
std::string to_latex(const DiffPoly& p);
std::string to_latex(const LambdaPoly& p);

// Plain text in the syntax accepted by parse_diffpoly.
std::string to_text(const DiffPoly& p);
std::string to_text(const LambdaPoly& p);

// Grammar: sums/products of rationals, i, and jets written q, q', q'', q''', q[4];
// '^' takes an integer exponent (negative only on invertible symbols), '/' only
// divides by numbers.  "lambda" is the spectral parameter in parse_lambdapoly.
DiffPoly parse_diffpoly(const std::string& text, const RingPtr& ring);
LambdaPoly parse_lambdapoly(const std::string& text, const RingPtr& ring);

} // namespace soliton
