#pragma once

#include "modgeo/complex.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

namespace modgeo {

namespace detail {

inline bool coeff_is_zero(const mpz_class& c) { return c == 0; }
inline bool coeff_is_zero(const mpq_class& c) { return c == 0; }
inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }

}  // namespace detail

/// Sparse polynomial in `Vars` variables. Zero coefficients are never stored.
template <std::size_t Vars, class Coeff>
class SparsePolynomial {
 public:
  using Exponent = std::array<int, Vars>;
  using TermMap = std::map<Exponent, Coeff>;

  SparsePolynomial() = default;

  /// Adds `c` to the coefficient of x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Coeff& c) {
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  void set_term(const Exponent& e, const Coeff& c) {
    if (detail::coeff_is_zero(c)) {
      terms_.erase(e);
    } else {
      terms_[e] = c;
    }
  }

  [[nodiscard]] Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff() : it->second;
  }

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  [[nodiscard]] int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  /// Largest degree in any single variable.
  [[nodiscard]] int max_partial_degree() const {
    int d = -1;
    for (std::size_t v = 0; v < Vars; ++v) d = std::max(d, degree_in(v));
    return d;
  }

  [[nodiscard]] bool depends_on(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[var] > 0; });
  }

  [[nodiscard]] SparsePolynomial derivative(std::size_t var) const {
    SparsePolynomial out;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent f = e;
      f[var] -= 1;
      out.add_term(f, c * Coeff(e[var]));
    }
    return out;
  }

  template <class Scalar>
  [[nodiscard]] SparsePolynomial scaled(const Scalar& s) const {
    SparsePolynomial out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  /// Exact evaluation in any ring constructible from Coeff.
  template <class T>
  [[nodiscard]] T evaluate(const std::array<T, Vars>& x) const {
    std::array<std::vector<T>, Vars> powers;
    for (std::size_t v = 0; v < Vars; ++v) {
      int deg = std::max(degree_in(v), 0);
      powers[v].reserve(deg + 1);
      powers[v].push_back(T(1));
      for (int k = 1; k <= deg; ++k) powers[v].push_back(powers[v].back() * x[v]);
    }
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = T(c);
      for (std::size_t v = 0; v < Vars; ++v) {
        if (e[v] > 0) term = term * powers[v][e[v]];
      }
      acc = acc + term;
    }
    return acc;
  }

  friend SparsePolynomial operator+(const SparsePolynomial& p, const SparsePolynomial& q) {
    SparsePolynomial out = p;
    for (const auto& [e, c] : q.terms_) out.add_term(e, c);
    return out;
  }

  friend SparsePolynomial operator-(const SparsePolynomial& p, const SparsePolynomial& q) {
    SparsePolynomial out = p;
    for (const auto& [e, c] : q.terms_) out.add_term(e, Coeff(0) - c);
    return out;
  }

  friend SparsePolynomial operator*(const SparsePolynomial& p, const SparsePolynomial& q) {
    SparsePolynomial out;
    for (const auto& [e1, c1] : p.terms_) {
      for (const auto& [e2, c2] : q.terms_) {
        Exponent e;
        for (std::size_t v = 0; v < Vars; ++v) e[v] = e1[v] + e2[v];
        out.add_term(e, c1 * c2);
      }
    }
    return out;
  }

  friend bool operator==(const SparsePolynomial& p, const SparsePolynomial& q) { return p.terms_ == q.terms_; }

 private:
  TermMap terms_;
};

/// Bivariate integer polynomial in (T1, T2); houses the modular polynomials.
using IntegerBivariatePoly = SparsePolynomial<2, mpz_class>;
/// Bivariate polynomial with exact Gaussian-rational coefficients.
using GaussianBivariatePoly = SparsePolynomial<2, GaussianRational>;
/// Polynomial in (X1, Y1, X2, Y2) with exact real (rational) coefficients.
using RealQuadruplePoly = SparsePolynomial<4, mpq_class>;
/// Polynomial in (T1, T2, T3, T4) with Gaussian-rational coefficients.
using GaussianQuadruplePoly = SparsePolynomial<4, GaussianRational>;

GaussianBivariatePoly to_gaussian(const IntegerBivariatePoly& p);

/// Number of bits of the largest coefficient magnitude (0 for the zero poly).
std::size_t coefficient_bits(const IntegerBivariatePoly& p);
std::size_t coefficient_bits(const GaussianBivariatePoly& p);

/// Horner evaluation at the smaller of the argument precisions.
Complex evaluate(const IntegerBivariatePoly& p, const Complex& t1, const Complex& t2);
Complex evaluate(const GaussianBivariatePoly& p, const Complex& t1, const Complex& t2);
Complex evaluate(const GaussianQuadruplePoly& p, const std::array<Complex, 4>& t);
Real evaluate(const RealQuadruplePoly& p, const std::array<Real, 4>& x);

template <class Scalar>
struct ValueAndGradient {
  Scalar value;
  Scalar d1;
  Scalar d2;
};

/// Bivariate Horner evaluator with coefficients pre-converted at a fixed
/// precision; returns the value together with both partial derivatives.
/// Scalar is Real (integer coefficients only) or Complex.
template <class Scalar>
class BivariateEvaluator {
 public:
  BivariateEvaluator(const IntegerBivariatePoly& p, Precision prec);
  BivariateEvaluator(const GaussianBivariatePoly& p, Precision prec)
    requires std::is_same_v<Scalar, Complex>;

  [[nodiscard]] Precision precision() const { return prec_; }
  [[nodiscard]] Scalar value(const Scalar& t1, const Scalar& t2) const;
  [[nodiscard]] ValueAndGradient<Scalar> value_and_gradient(const Scalar& t1, const Scalar& t2) const;
  /// sum |c| |t1|^i |t2|^j, the natural scale of the value.
  [[nodiscard]] Real abs_sum(const Real& a1, const Real& a2) const;

 private:
  // dense rows: coef_[i][j] multiplies t1^i t2^j
  Precision prec_;
  std::vector<std::vector<Scalar>> coef_;
  std::vector<std::vector<Real>> abs_coef_;
};

extern template class BivariateEvaluator<Real>;
extern template class BivariateEvaluator<Complex>;

}  // namespace modgeo
