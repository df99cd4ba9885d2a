#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qwalk/diagnostics.hpp"
#include "qwalk/expansion.hpp"
#include "qwalk/group.hpp"
#include "qwalk/polyharmonic.hpp"

namespace qwalk {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Human, Structured, Csv };
OutputFormat parse_format(const std::string& name);

// exact leaves are strings in the coefficient syntax of the polynomial files
Json field_to_json(const FieldElem& x);
FieldElem field_from_json(const Json& j);
Json poly_to_json(const LaurentPoly& p, int pi_twice = 0);
LaurentPoly poly_from_json(const Json& j, const std::vector<std::string>& vars);
Json twist_to_json(const Twist& t);
Twist twist_from_json(const Json& j);

Json expansion_to_json(const AsymptoticExpansion& e);
AsymptoticExpansion expansion_from_json(const Json& j);
bool same_expansion(const AsymptoticExpansion& a, const AsymptoticExpansion& b);

Json interpolated_to_json(const InterpolatedTerms& t);
Json decomposition_to_json(const Decomposition& d, const PolyBasis& basis, const PolyBasis& adjoint);
Json convergence_to_json(const ConvergenceReport& r);

struct AnalysisOptions {
  int certificate_depth = 8;
  Point start;
  // certified instead of the group orbit sum, e.g. for large steps
  std::optional<RatFunc> numerator;
};
// Model, group and saddle diagnostics; failures are reported as entries, not thrown
Json analyze_model(const Model& m, const AnalysisOptions& opt);

// human: one "path = value" line per leaf; structured: indented JSON
std::string render(const Json& j, OutputFormat f);

}  // namespace qwalk
