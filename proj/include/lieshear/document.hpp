#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/lie_algebra.hpp"
#include "lieshear/notation.hpp"
#include "lieshear/rational.hpp"

// Algebra documents:
//
//   (0,0,12)                                         bare Salamon string
//   {"salamon": "(l.12,0,0)", "substitutions": {"l": "1/2"}}
//   {"dim": 10, "d": {"10": "e12 + e(3,9)"}}          unlisted keys are closed

namespace lieshear {

struct AlgebraDocument {
  std::optional<std::string> salamon;
  int dim = 0;
  std::map<int, std::string> d;  // explicit form when salamon is empty
  std::map<std::string, Rational> substitutions;

  static AlgebraDocument parse(std::string_view text);

  /// Applies the document's substitutions, overridden by `overrides`, then
  /// parses.
  LieAlgebra build(const std::map<std::string, Rational>& overrides = {}) const {
    auto values = substitutions;
    for (const auto& [k, v] : overrides) values[k] = v;
    if (salamon) return parse_salamon(substitute_parameters(*salamon, values));
    std::vector<KForm> forms;
    for (int k = 1; k <= dim; ++k) {
      auto it = d.find(k);
      forms.push_back(it == d.end() ? KForm(dim, 2)
                                    : parse_form(substitute_parameters(it->second, values), dim, 2));
    }
    return LieAlgebra(std::move(forms));
  }
};

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  if (v.is_string()) return rational_from_string(v.get<std::string>());
  throw ParseError(what + " must be an integer or a rational string", 0);
}

}  // namespace detail

inline AlgebraDocument AlgebraDocument::parse(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  AlgebraDocument doc;
  if (start == text.size()) throw ParseError("empty algebra document", 0);
  if (text[start] != '{') {
    std::string_view body = text.substr(start);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
    doc.salamon = std::string(body);
    return doc;
  }

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw ParseError("algebra document must be a JSON object", start);
  const bool has_salamon = j.contains("salamon");
  const bool has_d = j.contains("d") || j.contains("dim");
  if (has_salamon == has_d)
    throw ParseError("algebra document needs exactly one of \"salamon\" or \"dim\"/\"d\"", start);
  for (const auto& [key, value] : j.items())
    if (key != "salamon" && key != "dim" && key != "d" && key != "substitutions")
      throw ParseError("unknown key \"" + key + "\" in algebra document", start);

  if (has_salamon) {
    if (!j["salamon"].is_string()) throw ParseError("\"salamon\" must be a string", start);
    doc.salamon = j["salamon"].get<std::string>();
  } else {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
      throw ParseError("\"dim\" must be an integer", start);
    doc.dim = j["dim"].get<int>();
    if (doc.dim < 1 || doc.dim > kMaxDim)
      throw DimensionError("algebra dimension must be in 1.." + std::to_string(kMaxDim));
    if (j.contains("d")) {
      if (!j["d"].is_object()) throw ParseError("\"d\" must be an object", start);
      for (const auto& [key, value] : j["d"].items()) {
        int k = 0;
        try {
          std::size_t used = 0;
          k = std::stoi(key, &used);
          if (used != key.size()) k = 0;
        } catch (const std::exception&) {
          k = 0;
        }
        if (k < 1 || k > doc.dim)
          throw DimensionError("\"d\" key \"" + key + "\" is not an index in 1.." + std::to_string(doc.dim));
        if (!value.is_string()) throw ParseError("\"d\"." + key + " must be a form literal string", start);
        doc.d[k] = value.get<std::string>();
      }
    }
  }
  if (j.contains("substitutions")) {
    if (!j["substitutions"].is_object()) throw ParseError("\"substitutions\" must be an object", start);
    for (const auto& [key, value] : j["substitutions"].items())
      doc.substitutions[key] = detail::json_rational(value, "substitution " + key);
  }
  return doc;
}

/// {"dim": n, "d": {"k": literal}} with closed generators omitted.
inline nlohmann::ordered_json algebra_to_json(const LieAlgebra& g) {
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (int k = 1; k <= g.dim(); ++k)
    if (!g.d(k).is_zero()) d[std::to_string(k)] = format_form(g.d(k));
  return {{"dim", g.dim()}, {"d", std::move(d)}};
}

/// Salamon string up to dimension 9, compact JSON document beyond.
inline std::string render_algebra(const LieAlgebra& g) {
  return g.dim() <= 9 ? print_salamon(g) : algebra_to_json(g).dump();
}

}  // namespace lieshear
