#include "modgeo/modular_polynomials.hpp"

#include "modgeo/errors.hpp"
#include "modgeo/modular_forms.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

namespace modgeo {

std::vector<IsogenyTriple> cyclic_isogeny_matrices(long level) {
  if (level < 1) throw PreconditionError("isogeny degree must be positive");
  std::vector<IsogenyTriple> out;
  for (long a = 1; a <= level; ++a) {
    if (level % a != 0) continue;
    const long d = level / a;
    for (long b = 0; b < d; ++b) {
      if (std::gcd(std::gcd(a, b), d) == 1) out.push_back({a, b, d});
    }
  }
  return out;
}

long dedekind_psi(long level) {
  if (level < 1) throw PreconditionError("level must be positive");
  long n = level;
  long psi = level;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    psi = psi / p * (p + 1);
    while (n % p == 0) n /= p;
  }
  if (n > 1) psi = psi / n * (n + 1);
  return psi;
}

bool is_symmetric(const IntegerBivariatePoly& p) {
  for (const auto& [e, c] : p.terms()) {
    if (p.coefficient({e[1], e[0]}) != c) return false;
  }
  return true;
}

bool kronecker_congruence_holds(const IntegerBivariatePoly& p, long prime) {
  // (X^p - Y)(X - Y^p) = X^(p+1) - X^p Y^p - X Y + Y^(p+1)
  IntegerBivariatePoly reference;
  const int q = static_cast<int>(prime);
  reference.add_term({q + 1, 0}, 1);
  reference.add_term({q, q}, -1);
  reference.add_term({1, 1}, -1);
  reference.add_term({0, q + 1}, 1);
  IntegerBivariatePoly diff = p - reference;
  for (const auto& [e, c] : diff.terms()) {
    if (mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(prime)) == 0) return false;
  }
  return true;
}

namespace {

struct Attempt {
  bool ok = false;
  IntegerBivariatePoly poly;
  double max_residual = 0.0;
};

// Coefficients of prod_k (Y - r_k), ascending in Y.
std::vector<Complex> expand_roots(const std::vector<Complex>& roots, Precision prec) {
  std::vector<Complex> c{Complex(Real(1L, prec), Real(prec))};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(prec));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= c[k] * r;
    }
    c = std::move(next);
  }
  return c;
}

// Monomial coefficients of the interpolant through (nodes, values).
std::vector<Complex> newton_interpolate(const std::vector<Complex>& nodes, std::vector<Complex> values) {
  const std::size_t n = nodes.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t s = n - 1; s >= k; --s) {
      values[s] = (values[s] - values[s - 1]) / (nodes[s] - nodes[s - k]);
    }
  }
  const Precision prec = values.front().precision();
  std::vector<Complex> poly{values[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<Complex> next(poly.size() + 1, Complex(prec));
    for (std::size_t m = 0; m < poly.size(); ++m) {
      next[m + 1] += poly[m];
      next[m] -= poly[m] * nodes[k];
    }
    next[0] += values[k];
    poly = std::move(next);
  }
  return poly;
}

Attempt interpolate_at(long level, const std::vector<IsogenyTriple>& triples, Precision prec) {
  const long psi = static_cast<long>(triples.size());
  const std::size_t samples = static_cast<std::size_t>(psi) + 1;
  // Samples on re(z) = 1/pi with |q| between 1e-2 and 1e-8.
  const Real x = Real(1L, prec) / pi(prec);
  const Real two_pi = pi(prec) * 2L;
  const Real y_lo = log(Real(100L, prec)) / two_pi;
  const Real y_hi = log(Real(100000000L, prec)) / two_pi;

  std::vector<Complex> nodes;
  std::vector<std::vector<Complex>> elementary;  // [sample][power of Y]
  for (std::size_t s = 0; s < samples; ++s) {
    Real y = y_lo + (y_hi - y_lo) * static_cast<long>(s) / psi;
    Complex z(x, y);
    nodes.push_back(j_eval(UpperHalfPoint(z)));
    std::vector<Complex> roots;
    for (const auto& t : triples) {
      Complex w = (z * Real(t.a, prec) + Real(t.b, prec)) / Real(t.d, prec);
      roots.push_back(j_eval(UpperHalfPoint(w)));
    }
    elementary.push_back(expand_roots(roots, prec));
  }

  Attempt out;
  out.ok = true;
  for (long m = 0; m <= psi; ++m) {
    std::vector<Complex> values;
    for (std::size_t s = 0; s < samples; ++s) values.push_back(elementary[s][m]);
    std::vector<Complex> coeffs = newton_interpolate(nodes, std::move(values));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      mpz_class rounded = coeffs[i].re().round_to_integer();
      Real err = max(abs(coeffs[i].re() - Real(rounded, prec)), abs(coeffs[i].im()));
      double e = err.to_double();
      if (!std::isfinite(e)) e = 1e300;
      out.max_residual = std::max(out.max_residual, e);
      if (e >= 0.25) out.ok = false;
      out.poly.add_term({static_cast<int>(i), static_cast<int>(m)}, rounded);
    }
  }
  if (!out.ok) return out;

  // Structural checks, then vanishing at a point outside the sample set.
  if (out.poly.coefficient({0, static_cast<int>(psi)}) != 1 ||
      out.poly.coefficient({static_cast<int>(psi), 0}) != 1 || !is_symmetric(out.poly)) {
    out.ok = false;
    return out;
  }
  const Precision check_prec = prec;
  Complex probe(Real(0.1, check_prec), Real(1.1, check_prec));
  Complex j1 = j_eval(UpperHalfPoint(probe));
  Complex j2 = j_eval(UpperHalfPoint(probe * static_cast<long>(level)));
  BivariateEvaluator<Complex> eval(out.poly, check_prec + coefficient_bits(out.poly));
  Complex v = eval.value(j1.with_precision(eval.precision()), j2.with_precision(eval.precision()));
  Real scale = eval.abs_sum(j1.abs(), j2.abs());
  if (v.abs() > scale * two_pow(-static_cast<long>(check_prec / 2), check_prec)) out.ok = false;
  return out;
}

}  // namespace

ModularPolynomial compute_modular_polynomial(long level, const ModpolyOptions& options) {
  if (level < 1) throw PreconditionError("level must be positive");
  if (level > options.max_level) {
    throw LevelTooLarge("level " + std::to_string(level) + " exceeds the configured maximum " +
                        std::to_string(options.max_level));
  }
  ModularPolynomial out;
  out.level = level;
  out.psi = dedekind_psi(level);
  if (level == 1) {
    out.poly.add_term({1, 0}, 1);
    out.poly.add_term({0, 1}, -1);
    out.precision_used = options.precision;
    return out;
  }
  const auto triples = cyclic_isogeny_matrices(level);
  double last_residual = 0.0;
  for (Precision prec = std::max(options.precision, kMinPrecision); prec <= options.max_precision; prec *= 2) {
    Attempt a = interpolate_at(level, triples, prec);
    last_residual = a.max_residual;
    if (a.ok) {
      out.poly = std::move(a.poly);
      out.max_rounding_residual = a.max_residual;
      out.precision_used = prec;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "Phi_" << level << ": rounding failed up to " << options.max_precision
      << " bits (last max residual " << last_residual << ")";
  throw PrecisionExhausted(msg.str());
}

Json to_json(const ModularPolynomial& m) {
  Json j = to_json(m.poly);
  j["N"] = m.level;
  j["psi"] = m.psi;
  j["max_rounding_residual"] = m.max_rounding_residual;
  j["precision_bits"] = m.precision_used;
  j["version"] = ModularPolynomialCache::kVersion;
  return j;
}

ModularPolynomial modular_polynomial_from_json(const Json& j) {
  ModularPolynomial m;
  if (!j.contains("N")) throw FormatError("modular polynomial file lacks 'N'");
  m.level = j.at("N").get<long>();
  m.psi = j.contains("psi") ? j.at("psi").get<long>() : dedekind_psi(m.level);
  m.poly = integer_poly_from_json(j);
  m.max_rounding_residual = j.value("max_rounding_residual", 0.0);
  m.precision_used = j.value("precision_bits", static_cast<Precision>(0));
  return m;
}

ModularPolynomialCache::ModularPolynomialCache(std::optional<std::filesystem::path> directory)
    : directory_(std::move(directory)) {}

std::filesystem::path ModularPolynomialCache::file_name(long level) {
  return "modpoly_" + std::to_string(level) + ".json";
}

std::shared_ptr<const ModularPolynomial> ModularPolynomialCache::get(long level, const ModpolyOptions& options) {
  if (level > options.max_level) {
    throw LevelTooLarge("level " + std::to_string(level) + " exceeds the configured maximum " +
                        std::to_string(options.max_level));
  }
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(level); it != entries_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = entries_.find(level); it != entries_.end()) return it->second;

  std::shared_ptr<const ModularPolynomial> result;
  if (directory_) {
    std::ifstream in(*directory_ / file_name(level));
    if (in) {
      try {
        Json j = Json::parse(in);
        if (j.value("version", std::string()) == kVersion && j.value("N", 0L) == level) {
          result = std::make_shared<const ModularPolynomial>(modular_polynomial_from_json(j));
        }
      } catch (const std::exception&) {
        result.reset();  // unreadable file: recompute and overwrite
      }
    }
  }
  if (!result) {
    result = std::make_shared<const ModularPolynomial>(compute_modular_polynomial(level, options));
    if (directory_) {
      std::error_code ec;
      std::filesystem::create_directories(*directory_, ec);
      const auto target = *directory_ / file_name(level);
      const auto tmp = target.string() + ".tmp";
      {
        std::ofstream out(tmp);
        out << to_json(*result).dump(1) << '\n';
      }
      std::filesystem::rename(tmp, target, ec);
    }
  }
  entries_.emplace(level, result);
  return result;
}

ModularPolynomialCache& ModularPolynomialCache::global() {
  static ModularPolynomialCache cache = [] {
    const char* dir = std::getenv("MODGEO_CACHE_DIR");
    if (dir != nullptr && *dir != '\0') return ModularPolynomialCache(std::filesystem::path(dir));
    return ModularPolynomialCache();
  }();
  return cache;
}

std::shared_ptr<const ModularPolynomial> modpoly(long level, const ModpolyOptions& options) {
  return ModularPolynomialCache::global().get(level, options);
}

bool is_scalar_multiple(const GaussianBivariatePoly& p, const IntegerBivariatePoly& q) {
  if (p.is_zero() || q.is_zero() || p.size() != q.size()) return false;
  const auto& [e0, c0] = *q.terms().begin();
  GaussianRational pc = p.coefficient(e0);
  if (pc.is_zero()) return false;
  GaussianRational lambda = pc / GaussianRational(mpq_class(c0));
  for (const auto& [e, c] : q.terms()) {
    if (!(p.coefficient(e) == lambda * GaussianRational(mpq_class(c)))) return false;
  }
  return true;
}

std::optional<long> is_strongly_special_equation(const GaussianBivariatePoly& p, long max_level) {
  if (p.is_zero()) throw PreconditionError("zero polynomial");
  ModpolyOptions options;
  options.max_level = std::max(max_level, options.max_level);
  for (long n = 1; n <= max_level; ++n) {
    const long psi = dedekind_psi(n);
    if (p.degree_in(0) != psi || p.degree_in(1) != psi) continue;
    if (is_scalar_multiple(p, modpoly(n, options)->poly)) return n;
  }
  return std::nullopt;
}

std::optional<long> is_strongly_special_equation(const IntegerBivariatePoly& p, long max_level) {
  return is_strongly_special_equation(to_gaussian(p), max_level);
}

}  // namespace modgeo
