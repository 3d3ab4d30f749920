#include "isoform/json_io.hpp"

namespace isoform {

namespace {

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), Errc::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

Int as_int(const Json& j) {
  require(j.is_number_integer(), Errc::Parse, "expected an integer, got " + j.dump());
  return j.get<Int>();
}

}  // namespace

Json to_json(const Ring& ring) {
  if (ring.is_field()) return {{"kind", "fp"}, {"p", ring.p()}};
  return {{"kind", "zpk"}, {"p", ring.p()}, {"k", ring.k()}};
}

Ring ring_from_json(const Json& j) {
  if (j.is_string()) return Ring::parse(j.get<std::string>());
  const Json& kind = field(j, "kind");
  require(kind.is_string(), Errc::Parse, "ring kind must be a string");
  const Int p = as_int(field(j, "p"));
  if (kind == "fp") return Ring::prime_field(p);
  if (kind == "zpk") return Ring::local(p, static_cast<int>(as_int(field(j, "k"))));
  raise(Errc::Parse, "unknown ring kind " + kind.dump());
}

Json to_json(const Vec& v) { return Json(v); }

Vec vec_from_json(const Ring& ring, const Json& j) {
  require(j.is_array(), Errc::Parse, "expected an array of integers");
  Vec out;
  for (const Json& x : j) out.push_back(ring.reduce(as_int(x)));
  return out;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

Matrix matrix_from_json(const Ring& ring, const Json& j) {
  require(j.is_array(), Errc::Parse, "expected an array of rows");
  std::vector<Vec> rows;
  for (const Json& r : j) rows.push_back(vec_from_json(ring, r));
  for (const Vec& r : rows) require(r.size() == rows.front().size(), Errc::Parse, "ragged matrix");
  return Matrix::from_rows(ring, rows);
}

Json to_json(const GramForm& q) { return {{"ring", to_json(q.ring())}, {"gram", to_json(q.gram())}}; }

GramForm form_from_json(const Json& j) {
  const Ring ring = ring_from_json(field(j, "ring"));
  if (j.contains("pfister")) return pfister_expand(PfisterSpec(ring, vec_from_json(ring, j.at("pfister"))));
  return GramForm(matrix_from_json(ring, field(j, "gram")));
}

Json to_json(const HyperbolicBasis& basis) {
  Json pairs = Json::array();
  for (const auto& pr : basis.pairs) pairs.push_back({{"e", pr.e}, {"f", pr.f}});
  return pairs;
}

Json to_json(const WittDecomposition& wd) {
  return {{"index", wd.index},
          {"hyperbolic", to_json(wd.hyperbolic)},
          {"anisotropic_basis", to_json(wd.anisotropic_basis)},
          {"anisotropic_gram", to_json(wd.anisotropic.gram())}};
}

Json to_json(const SolutionCertificate& cert) {
  Json out{{"verdict", std::string(to_string(cert.verdict))}};
  out["witness"] = cert.witness ? Json(*cert.witness) : Json(nullptr);
  Json trace = Json::array();
  for (const auto& t : cert.trace) trace.push_back({{"stage", t.stage}, {"detail", t.detail}});
  out["trace"] = trace;
  if (cert.residue_witt) out["residue_witt"] = to_json(*cert.residue_witt);
  return out;
}

Json to_json(const ModuleConstruction& c) {
  return {{"W_basis", to_json(c.result.basis)},
          {"generator", c.result.generator ? Json(*c.result.generator) : Json(nullptr)},
          {"kernel_coefficients", c.kernel_coefficients},
          {"certificates",
           {{"residue_W", to_json(c.residue_lagrangian.basis())},
            {"isometry", to_json(c.lifted.matrix())},
            {"hyperbolic_basis", to_json(c.local_basis)},
            {"search_attempts", c.result.attempts},
            {"used_enumeration", c.result.used_enumeration}}}};
}

Json to_json(const GroupLawReport& r) {
  return {{"trials", r.trials},           {"closure_checks", r.closure_checks},
          {"inverse_checks", r.inverse_checks}, {"identity_checks", r.identity_checks},
          {"inconclusive", r.inconclusive}, {"violations", r.violations}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    raise(Errc::Parse, e.what());
  }
}

}  // namespace isoform
