#pragma once

#include <nlohmann/json.hpp>

#include "isoform/keygeom.hpp"
#include "isoform/solver.hpp"

namespace isoform {

using Json = nlohmann::json;

// Rings: {"kind":"fp","p":5} or {"kind":"zpk","p":3,"k":2}; the string forms
// "fp:5" and "zpk:3,2" are accepted on input. Matrices are arrays of rows.
Json to_json(const Ring& ring);
Ring ring_from_json(const Json& j);

Json to_json(const Vec& v);
Vec vec_from_json(const Ring& ring, const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Ring& ring, const Json& j);

// Forms: {"ring":..., "gram":[[...]]} or {"ring":..., "pfister":[a_1,...]}.
Json to_json(const GramForm& q);
GramForm form_from_json(const Json& j);

Json to_json(const HyperbolicBasis& basis);
Json to_json(const WittDecomposition& wd);
Json to_json(const SolutionCertificate& cert);
Json to_json(const ModuleConstruction& c);
Json to_json(const GroupLawReport& report);

/// Parses a JSON document, mapping syntax errors to Errc::Parse.
Json parse_json(const std::string& text);

}  // namespace isoform
