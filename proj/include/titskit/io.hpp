#pragma once

#include "titskit/geometry.hpp"
#include "titskit/polynomial.hpp"
#include "titskit/tits.hpp"

#include <json.hpp>

#include <string>

// JSON surfaces:
//   arrangement  {"dim": n, "hyperplanes": [{"normal": ["1","-1"], "offset": "0"}, ...]}
//   element      [{"sign_vector": "+0-", "coeff": "<rational or polynomial>"}, ...]
namespace titskit::io {

using json = nlohmann::json;

/// Rationals may be given as strings ("p" or "p/q") or JSON integers.
/// Throws ParseError on schema violations, plus the Arrangement errors.
Arrangement arrangement_from_json(const json& doc, ArrangementKind kind = ArrangementKind::File);
json arrangement_to_json(const Arrangement& arr);
Arrangement load_arrangement(const std::string& path);

std::string coefficient_string(const Rational& c);
std::string coefficient_string(const Polynomial& c);
std::string coefficient_string(double c);
std::string coefficient_string(const RealPolynomial& c);

template <typename Scalar>
json element_to_json(const FaceSet& faces, const TitsElement<Scalar>& w) {
  json out = json::array();
  for (const auto& [f, c] : w.terms()) {
    out.push_back({{"sign_vector", faces[f].signs.str()}, {"coeff", coefficient_string(c)}});
  }
  return out;
}

/// Throws NotAFace for sign vectors outside `faces`.
TitsElement<Rational> rational_element_from_json(const FaceSet& faces, const json& doc);
TitsElement<Polynomial> polynomial_element_from_json(const FaceSet& faces, const json& doc);

}  // namespace titskit::io
