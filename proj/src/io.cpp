#include "titskit/io.hpp"

#include "titskit/errors.hpp"

#include <cstdio>
#include <fstream>

namespace titskit::io {

namespace {

Rational rational_field(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw ParseError("expected a rational string, got " + value.dump());
}

template <typename Scalar, typename Parse>
TitsElement<Scalar> element_from_json(const FaceSet& faces, const json& doc, Parse parse) {
  if (!doc.is_array()) throw ParseError("element must be a JSON array");
  TitsElement<Scalar> w;
  for (const auto& term : doc) {
    if (!term.contains("sign_vector") || !term.contains("coeff")) {
      throw ParseError("element term needs 'sign_vector' and 'coeff'");
    }
    const FaceId f = faces.at(SignVector::parse(term.at("sign_vector").get<std::string>()));
    w.add(f, parse(term.at("coeff").get<std::string>()));
  }
  return w;
}

}  // namespace

Arrangement arrangement_from_json(const json& doc, ArrangementKind kind) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("hyperplanes")) {
    throw ParseError("arrangement needs 'dim' and 'hyperplanes'");
  }
  const auto dim = doc.at("dim").get<long long>();
  if (dim <= 0) throw ParseError("'dim' must be positive");
  std::vector<Hyperplane> hyperplanes;
  for (const auto& h : doc.at("hyperplanes")) {
    if (!h.contains("normal")) throw ParseError("hyperplane needs 'normal'");
    RationalVector normal;
    for (const auto& x : h.at("normal")) normal.push_back(rational_field(x));
    const Rational offset = h.contains("offset") ? rational_field(h.at("offset")) : Rational(0);
    hyperplanes.push_back({std::move(normal), offset});
  }
  return Arrangement(static_cast<std::size_t>(dim), std::move(hyperplanes), kind);
}

json arrangement_to_json(const Arrangement& arr) {
  json hyperplanes = json::array();
  for (const auto& h : arr.hyperplanes()) {
    json normal = json::array();
    for (const auto& x : h.normal) normal.push_back(to_string(x));
    hyperplanes.push_back({{"normal", normal}, {"offset", to_string(h.offset)}});
  }
  return {{"dim", arr.dim()}, {"hyperplanes", hyperplanes}};
}

Arrangement load_arrangement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open arrangement file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("arrangement file '" + path + "': " + e.what());
  }
  return arrangement_from_json(doc, ArrangementKind::File);
}

std::string coefficient_string(const Rational& c) { return to_string(c); }
std::string coefficient_string(const Polynomial& c) { return to_string(c); }
std::string coefficient_string(const RealPolynomial& c) { return to_string(c); }
std::string coefficient_string(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", c);
  return buf;
}

TitsElement<Rational> rational_element_from_json(const FaceSet& faces, const json& doc) {
  return element_from_json<Rational>(faces, doc, [](const std::string& s) { return parse_rational(s); });
}

TitsElement<Polynomial> polynomial_element_from_json(const FaceSet& faces, const json& doc) {
  return element_from_json<Polynomial>(faces, doc, [](const std::string& s) { return parse_polynomial(s); });
}

}  // namespace titskit::io
