#pragma once

// Text and JSON forms of polynomials and rational functions.
//
//   text:  "-1 - q + 2 q^3 + 1/2 q^-2"   ascending exponents, "0" for zero
//   JSON:  {"terms": [[exp, "num/den"], ...]}   ascending exponents
//
// Both forms round-trip exactly.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qcongr/laurent_poly.hpp"
#include "qcongr/rational_function.hpp"

namespace qcongr {

using json = nlohmann::json;

inline std::string rat_to_string(const Rat& c) {
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("invalid rational: '" + s + "'");
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("invalid rational: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

namespace detail {

// Writes one term given as (coefficient, rendered monomial). An empty
// monomial means the constant term.
inline void append_term(std::string& out, const Rat& c, const std::string& monomial) {
  const bool negative = sgn(c) < 0;
  if (out.empty()) {
    if (negative) out += '-';
  } else {
    out += negative ? " - " : " + ";
  }
  Rat mag = abs(c);
  if (monomial.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += monomial;
  } else {
    out += mag.get_str();
    out += ' ';
    out += monomial;
  }
}

inline std::string power_text(char var, Exponent e) {
  if (e == 0) return {};
  std::string s(1, var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace detail

inline std::string to_text(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) detail::append_term(out, c, detail::power_text('q', e));
  return out;
}

/// Parses the text form. Accepts arbitrary spacing, repeated exponents
/// and unordered terms; the result is canonical.
inline LaurentPoly parse_text(std::string_view s) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto fail = [&](const char* what) -> LaurentPoly {
    throw std::invalid_argument(std::string("parse_text: ") + what + " at offset " + std::to_string(pos) + " in '" +
                                std::string(s) + "'");
  };
  auto read_int = [&]() -> std::string {
    std::string digits;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) digits += s[pos++];
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    return digits;
  };
  std::vector<LaurentPoly::Term> terms;
  skip();
  if (pos == s.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == s.size()) break;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rat c = 1;
    bool have_coeff = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::string num = read_int();
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::string den = read_int();
        if (den.empty() || den[0] == '-' || den[0] == '+') fail("bad denominator");
        num += "/" + den;
      }
      c = rat_from_string(num);
      have_coeff = true;
      skip();
    }
    Exponent e = 0;
    if (pos < s.size() && s[pos] == 'q') {
      ++pos;
      e = 1;
      skip();
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        skip();
        std::string digits = read_int();
        if (digits.empty() || digits == "-" || digits == "+") fail("bad exponent");
        e = std::stoll(digits);
      }
    } else if (!have_coeff) {
      fail("expected a term");
    }
    if (negative) c = -c;
    terms.emplace_back(e, c);
  }
  return LaurentPoly::from_terms(std::move(terms));
}

inline json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, rat_to_string(c)}));
  return json{{"terms", terms}};
}

inline LaurentPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw std::invalid_argument("polynomial JSON must be an object with a \"terms\" array");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
      throw std::invalid_argument("polynomial term must be [exponent, \"num/den\"]");
    terms.emplace_back(t[0].get<Exponent>(), rat_from_string(t[1].get<std::string>()));
  }
  return LaurentPoly::from_terms(std::move(terms));
}

inline std::string to_text(const RationalFunction& f) {
  if (f.den() == LaurentPoly(1)) return to_text(f.num());
  return "(" + to_text(f.num()) + ") / (" + to_text(f.den()) + ")";
}

inline json to_json(const RationalFunction& f) { return json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline RationalFunction rf_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num")) throw std::invalid_argument("rational function JSON needs \"num\"");
  LaurentPoly den = j.contains("den") ? poly_from_json(j.at("den")) : LaurentPoly(1);
  return RationalFunction::make(poly_from_json(j.at("num")), den);
}

}  // namespace qcongr
