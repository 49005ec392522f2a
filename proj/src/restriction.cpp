#include "modgeo/restriction.hpp"

#include "modgeo/errors.hpp"
#include "modgeo/modular_polynomials.hpp"

#include <cctype>
#include <string>

namespace modgeo {

ComplexPlaneCurve::ComplexPlaneCurve(GaussianBivariatePoly p) : p_(std::move(p)) {
  if (p_.is_zero()) throw PreconditionError("curve polynomial is zero");
  horizontal_ = !p_.depends_on(0);
  vertical_ = !p_.depends_on(1);
}

ComplexPlaneCurve::ComplexPlaneCurve(const IntegerBivariatePoly& p) : ComplexPlaneCurve(to_gaussian(p)) {}

// ---------------------------------------------------------------------------

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, Precision pi_bits) : s_(text), pi_bits_(pi_bits) {}

  GaussianBivariatePoly parse() {
    GaussianBivariatePoly p = sum();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static GaussianBivariatePoly constant(const GaussianRational& c) {
    GaussianBivariatePoly p;
    p.add_term({0, 0}, c);
    return p;
  }

  GaussianBivariatePoly sum() {
    GaussianBivariatePoly acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = product();
    if (negate) acc = acc.scaled(GaussianRational(-1));
    while (true) {
      if (accept('+')) {
        acc = acc + product();
      } else if (accept('-')) {
        acc = acc - product();
      } else {
        return acc;
      }
    }
  }

  GaussianBivariatePoly product() {
    GaussianBivariatePoly acc = power();
    while (true) {
      skip_space();
      if (accept('*')) {
        acc = acc * power();
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        acc = acc * power();  // implicit product such as 2T1 or (1+i)T2
      } else {
        return acc;
      }
    }
  }

  GaussianBivariatePoly power() {
    GaussianBivariatePoly base = atom();
    if (!accept('^')) return base;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    if (e > 10000) fail("exponent too large");
    GaussianBivariatePoly out = constant(GaussianRational(1));
    for (long k = 0; k < e; ++k) out = out * base;
    return out;
  }

  GaussianBivariatePoly atom() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      GaussianBivariatePoly inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(GaussianRational(number()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      GaussianBivariatePoly p;
      if (name == "T1" || name == "X") {
        p.add_term({1, 0}, GaussianRational(1));
      } else if (name == "T2" || name == "Y") {
        p.add_term({0, 1}, GaussianRational(1));
      } else if (name == "i" || name == "I") {
        p.add_term({0, 0}, GaussianRational(0, 1));
      } else if (name == "pi") {
        p.add_term({0, 0}, GaussianRational(pi(pi_bits_).to_rational()));
      } else {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return p;
    }
    fail("unexpected character");
  }

  mpq_class number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      std::size_t exp_start = pos_;
      digits();
      if (exp_start == pos_) pos_ = save;
    }
    mpq_class value = parse_exact_rational(s_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '/' ) {
      ++pos_;
      skip_space();
      std::size_t den_start = pos_;
      digits();
      if (den_start == pos_) fail("expected a denominator");
      mpq_class den = parse_exact_rational(s_.substr(den_start, pos_ - den_start));
      if (den == 0) fail("zero denominator");
      value /= den;
    }
    return value;
  }

  std::string_view s_;
  Precision pi_bits_;
  std::size_t pos_ = 0;
};

mpz_class binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// Coefficients of (x + iy)^n as (m -> C(n, m) i^m) for x^(n-m) y^m.
std::vector<GaussianRational> binomial_gaussian(int n) {
  static const GaussianRational units[4] = {GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1),
                                            GaussianRational(0, -1)};
  std::vector<GaussianRational> out;
  out.reserve(n + 1);
  for (int m = 0; m <= n; ++m) out.push_back(units[m % 4] * GaussianRational(mpq_class(binomial(n, m))));
  return out;
}

}  // namespace

GaussianBivariatePoly parse_curve_expression(std::string_view text, Precision pi_bits) {
  return ExpressionParser(text, pi_bits).parse();
}

WeilRestriction weil_restrict(const ComplexPlaneCurve& c) {
  std::map<int, std::vector<GaussianRational>> expansions;
  auto expansion = [&](int n) -> const std::vector<GaussianRational>& {
    auto it = expansions.find(n);
    if (it == expansions.end()) it = expansions.emplace(n, binomial_gaussian(n)).first;
    return it->second;
  };
  WeilRestriction out;
  for (const auto& [e, coef] : c.poly().terms()) {
    const auto& u = expansion(e[0]);
    const auto& v = expansion(e[1]);
    for (int m = 0; m <= e[0]; ++m) {
      GaussianRational cu = coef * u[m];
      for (int n = 0; n <= e[1]; ++n) {
        GaussianRational w = cu * v[n];
        RealQuadruplePoly::Exponent ex{e[0] - m, m, e[1] - n, n};
        out.re_part.add_term(ex, w.re);
        out.im_part.add_term(ex, w.im);
      }
    }
  }
  return out;
}

std::array<Complex, 4> f2_map(const Real& x1, const Real& y1, const Real& x2, const Real& y2) {
  return {Complex(x1, y1), Complex(x1, -y1), Complex(x2, y2), Complex(x2, -y2)};
}

std::pair<GaussianQuadruplePoly, GaussianQuadruplePoly> surface_equations(const ComplexPlaneCurve& c) {
  std::pair<GaussianQuadruplePoly, GaussianQuadruplePoly> out;
  for (const auto& [e, coef] : c.poly().terms()) {
    out.first.add_term({e[0], 0, e[1], 0}, coef);
    out.second.add_term({0, e[0], 0, e[1]}, coef.conj());
  }
  return out;
}

SpecialSurface::SpecialSurface(long level1, long level2) : n1(level1), n2(level2) {
  if (n1 < 1 || n2 < 1) throw PreconditionError("special surface levels must be positive");
}

std::pair<Real, Real> special_surface_residual(const SpecialSurface& s, const std::array<Complex, 4>& t) {
  auto p1 = modpoly(s.n1);
  auto p2 = modpoly(s.n2);
  return {evaluate(p1->poly, t[0], t[1]).abs(), evaluate(p2->poly, t[2], t[3]).abs()};
}

}  // namespace modgeo
