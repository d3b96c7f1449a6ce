#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpw/laurent.hpp"
#include "cpw/linsolve.hpp"
#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"
#include "cpw/series.hpp"

namespace cpw::io {

using Json = nlohmann::json;  // std::map-backed objects: keys come out sorted

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

template <class TermMap>
Json terms_to_json(const TermMap& terms) {
  Json arr = Json::array();
  for (const auto& [e, c] : terms) arr.push_back({{"exponents", e}, {"coeff", to_string(c)}});
  return arr;
}

inline Json to_json(const MultiPoly& p) { return {{"vars", p.vars()}, {"terms", terms_to_json(p.terms())}}; }

inline Json to_json(const Series& s) {
  return {{"vars", s.vars()}, {"cap", s.cap()}, {"terms", terms_to_json(s.terms())}};
}

inline Series series_from_json(const Json& j) {
  Series s(j.at("vars").get<std::vector<std::string>>(), j.at("cap").get<int>());
  for (const auto& t : j.at("terms")) s.add_term(t.at("exponents").get<Exponents>(), rational_from_json(t.at("coeff")));
  return s;
}

inline Json to_json(const PairPowers& p) {
  Json arr = Json::array();
  for (const auto& [pair, e] : p) arr.push_back({pair.first, pair.second, to_string(e)});
  return arr;
}

inline Json to_json(const LaurentSum& s) {
  Json arr = Json::array();
  for (const auto& [p, c] : s.terms()) arr.push_back({{"pairs", to_json(p)}, {"coeff", to_string(c)}});
  return arr;
}

inline Json to_json(const Matrix& m) {
  Json arr = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    arr.push_back(r);
  }
  return arr;
}

/// "t*b1^2" style key for a monomial.
inline std::string monomial_key(const std::vector<std::string>& vars, const Exponents& e) {
  std::string k;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!k.empty()) k += "*";
    k += vars[i];
    if (e[i] != 1) k += "^" + std::to_string(e[i]);
  }
  return k.empty() ? "1" : k;
}

inline Json keyed_poly(const MultiPoly& p) {
  Json o = Json::object();
  for (const auto& [e, c] : p.terms()) o[monomial_key(p.vars(), e)] = to_string(c);
  return o;
}

}  // namespace cpw::io
