#include "modgeo/serialization.hpp"

#include "modgeo/errors.hpp"

#include <cctype>

namespace modgeo {

namespace {

mpz_class parse_integer(std::string_view text) {
  mpz_class z;
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || z.set_str(s, 10) != 0) throw FormatError("invalid integer literal: " + std::string(text));
  return z;
}

std::string coefficient_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw FormatError("coefficient must be a decimal string or an integer");
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

mpq_class parse_exact_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  if (s.empty()) throw FormatError("empty numeric literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw FormatError("zero denominator in " + s);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    exponent = std::stol(s.substr(e + 1));
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.erase(0, 1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    exponent -= static_cast<long>(s.size() - dot - 1);
  } else {
    digits = s;
  }
  if (digits.empty()) throw FormatError("invalid numeric literal: " + std::string(text));
  mpq_class q(parse_integer(digits));
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    q *= ten_pow;
  } else {
    q /= ten_pow;
  }
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Json to_json(const IntegerBivariatePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"i", e[0]}, {"j", e[1]}, {"c", c.get_str()}});
  }
  return {{"degree", std::max(p.max_partial_degree(), 0)},
          {"total_degree", std::max(p.total_degree(), 0)},
          {"terms", std::move(terms)}};
}

IntegerBivariatePoly integer_poly_from_json(const Json& j) {
  IntegerBivariatePoly p;
  for (const Json& t : require(j, "terms")) {
    if (t.contains("ci")) {
      mpq_class ci = parse_exact_rational(coefficient_text(t.at("ci")));
      if (ci != 0) throw FormatError("integer polynomial with a nonzero imaginary coefficient");
    }
    p.add_term({require(t, "i").get<int>(), require(t, "j").get<int>()},
               parse_integer(coefficient_text(require(t, "c"))));
  }
  return p;
}

Json to_json(const GaussianBivariatePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json term = {{"i", e[0]}, {"j", e[1]}, {"c", rational_to_string(c.re)}};
    if (c.im != 0) term["ci"] = rational_to_string(c.im);
    terms.push_back(std::move(term));
  }
  return {{"degree", std::max(p.max_partial_degree(), 0)},
          {"total_degree", std::max(p.total_degree(), 0)},
          {"terms", std::move(terms)}};
}

GaussianBivariatePoly gaussian_poly_from_json(const Json& j) {
  GaussianBivariatePoly p;
  for (const Json& t : require(j, "terms")) {
    mpq_class re = parse_exact_rational(coefficient_text(require(t, "c")));
    mpq_class im = t.contains("ci") ? parse_exact_rational(coefficient_text(t.at("ci"))) : mpq_class(0);
    p.add_term({require(t, "i").get<int>(), require(t, "j").get<int>()}, GaussianRational(re, im));
  }
  return p;
}

Json to_json(const RealQuadruplePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"e", {e[0], e[1], e[2], e[3]}}, {"c", rational_to_string(c)}});
  }
  return {{"vars", {"X1", "Y1", "X2", "Y2"}}, {"terms", std::move(terms)}};
}

RealQuadruplePoly real_quadruple_from_json(const Json& j) {
  RealQuadruplePoly p;
  for (const Json& t : require(j, "terms")) {
    const Json& e = require(t, "e");
    if (!e.is_array() || e.size() != 4) throw FormatError("exponent must have four entries");
    p.add_term({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()},
               parse_exact_rational(coefficient_text(require(t, "c"))));
  }
  return p;
}

}  // namespace modgeo
