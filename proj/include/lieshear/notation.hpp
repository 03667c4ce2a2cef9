#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/lie_algebra.hpp"
#include "lieshear/rational.hpp"

// Text formats:
//
//   Salamon   algebra := "(" entry ("," entry)* ")"
//             entry   := "0" | ["+"|"-"] term (("+"|"-") term)*
//             term    := [coeff "."] digit digit        distinct digits 1-9
//             coeff   := uint | uint "/" uint | "(" expr ")"
//
//   "2.54" is 2·e5∧e4; "(51,52,53,13+2.54,0)" has de4 = e13 + 2e54.
//
//   Forms     form  := "0" | ["+"|"-"] fterm (("+"|"-") fterm)*
//             fterm := [coeff ["*"]] "e" (digits | "(" int ("," int)* ")") | coeff
//
//   Vectors   vec   := ["+"|"-"] vterm (("+"|"-") vterm)*,  vterm := [coeff ["*"]] "E" int
//
// expr is exact rational arithmetic with + - * / and parentheses.
// Whitespace is ignored everywhere; U+2212 is read as "-".

namespace lieshear {

namespace detail {

inline std::string normalize_minus(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(normalize_minus(text)) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// Character right at the cursor, without skipping whitespace.
  char raw_peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

  /// Digit run starting at the cursor (after whitespace).
  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw ParseError(what + ", found " + found, pos_);
  }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
};

Rational parse_expr(Cursor& c);

inline Rational parse_uint(Cursor& c) {
  const std::string d = c.digits();
  if (d.empty()) c.fail("expected a number");
  return Rational(Integer(d));
}

inline Rational parse_factor(Cursor& c) {
  if (c.accept('-')) return -parse_factor(c);
  if (c.accept('+')) return parse_factor(c);
  if (c.accept('(')) {
    Rational v = parse_expr(c);
    c.expect(')', "')'");
    return v;
  }
  return parse_uint(c);
}

inline Rational parse_product(Cursor& c) {
  Rational v = parse_factor(c);
  while (true) {
    if (c.accept('*')) {
      v *= parse_factor(c);
    } else if (c.peek() == '/') {
      const std::size_t at = c.pos();
      c.accept('/');
      Rational den = parse_factor(c);
      if (den == 0) c.fail_at("division by zero", at);
      v /= den;
    } else {
      return v;
    }
  }
}

inline Rational parse_expr(Cursor& c) {
  Rational v = parse_product(c);
  while (true) {
    if (c.accept('+'))
      v += parse_product(c);
    else if (c.accept('-'))
      v -= parse_product(c);
    else
      return v;
  }
}

/// uint ["/" uint] or "(" expr ")", as used in front of a basis symbol.
inline Rational parse_coefficient(Cursor& c) {
  if (c.accept('(')) {
    Rational v = parse_expr(c);
    c.expect(')', "')'");
    return v;
  }
  Rational v = parse_uint(c);
  if (c.peek() == '/') {
    const std::size_t at = c.pos();
    c.accept('/');
    Rational den = parse_uint(c);
    if (den == 0) c.fail_at("division by zero", at);
    v /= den;
  }
  return v;
}

struct SalamonTerm {
  Rational coeff;
  int first;
  int second;
  std::size_t pos;
};

inline void parse_pair(Cursor& c, std::string_view d, std::size_t at, SalamonTerm& t) {
  if (d.size() != 2) c.fail_at("a term needs exactly two index digits, got '" + std::string(d) + "'", at);
  t.first = d[0] - '0';
  t.second = d[1] - '0';
  if (t.first == 0 || t.second == 0) c.fail_at("index digits must be 1-9", at);
  if (t.first == t.second)
    c.fail_at("repeated index " + std::to_string(t.first) + " in a pair", at);
}

inline SalamonTerm parse_salamon_term(Cursor& c) {
  SalamonTerm t{1, 0, 0, 0};
  c.skip_ws();
  t.pos = c.pos();
  if (c.peek() == '(') {
    t.coeff = parse_coefficient(c);
    c.expect('.', "'.' after a coefficient");
    c.skip_ws();
    const std::size_t at = c.pos();
    parse_pair(c, c.digits(), at, t);
    return t;
  }
  const std::string d = c.digits();
  if (d.empty()) c.fail("expected a term");
  if (c.peek() == '/' || c.peek() == '.') {
    t.coeff = Rational(Integer(d));
    if (c.accept('/')) {
      Rational den = parse_uint(c);
      if (den == 0) c.fail_at("division by zero", t.pos);
      t.coeff /= den;
    }
    c.expect('.', "'.' after a coefficient");
    c.skip_ws();
    const std::size_t at = c.pos();
    parse_pair(c, c.digits(), at, t);
    return t;
  }
  parse_pair(c, d, t.pos, t);
  return t;
}

inline std::string format_coefficient_prefix(const Rational& c, const char* sep) {
  return c == 1 ? std::string() : to_string(c) + sep;
}

}  // namespace detail

/// Parses Salamon notation such as "(0,0,12)" or "(51,52,53,2.54,0)".
inline LieAlgebra parse_salamon(std::string_view text) {
  detail::Cursor c(text);
  c.expect('(', "'(' opening the algebra");
  std::vector<std::vector<detail::SalamonTerm>> entries;
  while (true) {
    std::vector<detail::SalamonTerm> terms;
    c.skip_ws();
    const std::size_t save = c.pos();
    if (c.accept('0') && (c.peek() == ',' || c.peek() == ')')) {
      // zero entry
    } else {
      c.set_pos(save);
      int sign = 1;
      if (c.accept('-')) sign = -1;
      else c.accept('+');
      while (true) {
        auto t = detail::parse_salamon_term(c);
        t.coeff *= sign;
        terms.push_back(std::move(t));
        if (c.accept('+')) sign = 1;
        else if (c.accept('-')) sign = -1;
        else break;
      }
    }
    entries.push_back(std::move(terms));
    if (c.accept(',')) continue;
    c.expect(')', "',' or ')'");
    break;
  }
  if (!c.at_end()) c.fail("trailing characters after the algebra");
  const int n = static_cast<int>(entries.size());
  if (n > 9) throw ParseError("Salamon notation supports at most 9 generators", 0);
  std::vector<KForm> d;
  for (const auto& terms : entries) {
    KForm f(n, 2);
    for (const auto& t : terms) {
      for (int idx : {t.first, t.second})
        if (idx > n)
          throw ParseError("index " + std::to_string(idx) + " exceeds dimension " +
                               std::to_string(n),
                           t.pos);
      f += KForm::basis(n, {t.first, t.second}, t.coeff);
    }
    d.push_back(std::move(f));
  }
  return LieAlgebra(std::move(d));
}

/// Salamon string of an algebra of dimension at most 9. Each term is written
/// with a positive coefficient, choosing the index order accordingly
/// (-e15 prints as "51").
inline std::string print_salamon(const LieAlgebra& g) {
  if (g.dim() > 9)
    throw DimensionError("Salamon notation needs dimension <= 9; use the JSON form");
  std::string out = "(";
  for (int k = 1; k <= g.dim(); ++k) {
    if (k > 1) out += ",";
    const KForm& f = g.d(k);
    if (f.is_zero()) {
      out += "0";
      continue;
    }
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
      const auto idx = m.indices();
      if (!first) out += "+";
      first = false;
      const bool positive = c > 0;
      const Rational mag = positive ? c : Rational(-c);
      out += detail::format_coefficient_prefix(mag, ".");
      out += std::to_string(positive ? idx[0] : idx[1]);
      out += std::to_string(positive ? idx[1] : idx[0]);
    }
  }
  return out + ")";
}

/// Parses a form literal on R^dim, e.g. "e1425 + e1436 - 2*e4567".
/// "0" (or an empty sum) yields the zero form of `expected_degree`.
inline KForm parse_form(std::string_view text, int dim, std::optional<int> expected_degree = {}) {
  detail::Cursor c(text);
  std::optional<KForm> acc;
  auto add = [&](KForm term, std::size_t at) {
    if (expected_degree && term.degree() != *expected_degree)
      throw ParseError("expected a " + std::to_string(*expected_degree) + "-form, got a term of degree " +
                           std::to_string(term.degree()),
                       at);
    if (acc && acc->degree() != term.degree())
      throw ParseError("mixed degrees in a form literal", at);
    if (acc) *acc += term;
    else acc = std::move(term);
  };
  if (c.at_end()) c.fail("empty form literal");
  int sign = 1;
  if (c.accept('-')) sign = -1;
  else c.accept('+');
  while (true) {
    c.skip_ws();
    const std::size_t at = c.pos();
    Rational coeff = sign;
    bool has_coeff = false;
    if (c.peek() != 'e') {
      coeff *= detail::parse_coefficient(c);
      has_coeff = true;
      c.accept('*');
    }
    if (c.accept('e')) {
      std::vector<int> idx;
      if (c.raw_peek() == '(') {
        c.accept('(');
        do {
          const std::string d = c.digits();
          if (d.empty()) c.fail("expected an index");
          idx.push_back(std::stoi(d));
        } while (c.accept(','));
        c.expect(')', "')'");
      } else {
        if (!std::isdigit(static_cast<unsigned char>(c.raw_peek()))) c.fail("expected index digits after 'e'");
        for (char ch : c.digits()) idx.push_back(ch - '0');
      }
      for (int i : idx)
        if (i < 1 || i > dim)
          throw ParseError("index " + std::to_string(i) + " exceeds dimension " + std::to_string(dim), at);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
          if (idx[a] == idx[b])
            throw ParseError("repeated index " + std::to_string(idx[a]) + " in a monomial", at);
      add(KForm::basis(dim, idx, coeff), at);
    } else if (has_coeff) {
      // a bare 0 carries no degree; any other constant is a 0-form
      if (coeff != 0) add(KForm::scalar(dim, coeff), at);
    } else {
      c.fail("expected a coefficient or a basis monomial");
    }
    if (c.accept('+')) sign = 1;
    else if (c.accept('-')) sign = -1;
    else break;
  }
  if (!c.at_end()) c.fail("unexpected character in form literal");
  if (!acc) return KForm(dim, expected_degree.value_or(0));
  return std::move(*acc);
}

/// Canonical literal: terms in lexicographic order, "0" for the zero form.
inline std::string format_form(const KForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (m.degree() == 0) {
      out += to_string(mag);
      continue;
    }
    out += detail::format_coefficient_prefix(mag, "*");
    const auto idx = m.indices();
    out += "e";
    if (idx.back() <= 9) {
      for (int i : idx) out += std::to_string(i);
    } else {
      out += "(";
      for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
      out += ")";
    }
  }
  return out;
}

/// Parses "E4" or "E1 - 1/2*E3".
inline Vector parse_vector(std::string_view text, int dim) {
  detail::Cursor c(text);
  Vector v(dim);
  if (c.at_end()) c.fail("empty vector literal");
  int sign = 1;
  if (c.accept('-')) sign = -1;
  else c.accept('+');
  while (true) {
    c.skip_ws();
    const std::size_t at = c.pos();
    Rational coeff = sign;
    if (c.peek() != 'E') {
      coeff *= detail::parse_coefficient(c);
      c.accept('*');
    }
    if (!c.accept('E')) c.fail("expected 'E<index>'");
    const std::string d = c.digits();
    if (d.empty()) c.fail("expected an index after 'E'");
    const int i = std::stoi(d);
    if (i < 1 || i > dim)
      throw ParseError("index " + std::to_string(i) + " exceeds dimension " + std::to_string(dim), at);
    v[i] += coeff;
    if (c.accept('+')) sign = 1;
    else if (c.accept('-')) sign = -1;
    else break;
  }
  if (!c.at_end()) c.fail("unexpected character in vector literal");
  return v;
}

inline std::string format_vector(const Vector& v) {
  std::string out;
  for (int i = 1; i <= v.dim(); ++i) {
    const Rational& c = v[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += detail::format_coefficient_prefix(mag, "*") + "E" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

/// Replaces every identifier that names a parameter by its parenthesized
/// exact value, e.g. "l.27" with l = 1 becomes "(1).27". Other identifiers
/// (e13, E4) are left untouched.
inline std::string substitute_parameters(std::string_view text,
                                         const std::map<std::string, Rational>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      const std::string ident(text.substr(i, j - i));
      auto it = values.find(ident);
      out += it == values.end() ? ident : "(" + to_string(it->second) + ")";
      i = j;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace lieshear
