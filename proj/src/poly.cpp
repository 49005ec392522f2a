#include "modgeo/poly.hpp"

namespace modgeo {

GaussianBivariatePoly to_gaussian(const IntegerBivariatePoly& p) {
  GaussianBivariatePoly out;
  for (const auto& [e, c] : p.terms()) out.set_term(e, GaussianRational(mpq_class(c)));
  return out;
}

std::size_t coefficient_bits(const IntegerBivariatePoly& p) {
  std::size_t bits = 0;
  for (const auto& [e, c] : p.terms()) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

std::size_t coefficient_bits(const GaussianBivariatePoly& p) {
  // log2 of a rational's magnitude is at most bits(num) - bits(den) + 1
  long bits = 0;
  for (const auto& [e, c] : p.terms()) {
    for (const mpq_class* q : {&c.re, &c.im}) {
      if (*q == 0) continue;
      long b = static_cast<long>(mpz_sizeinbase(q->get_num_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(q->get_den_mpz_t(), 2)) + 1;
      bits = std::max(bits, b);
    }
  }
  return static_cast<std::size_t>(bits);
}

Complex evaluate(const IntegerBivariatePoly& p, const Complex& t1, const Complex& t2) {
  Precision prec = std::min(t1.precision(), t2.precision());
  return BivariateEvaluator<Complex>(p, prec).value(t1, t2);
}

Complex evaluate(const GaussianBivariatePoly& p, const Complex& t1, const Complex& t2) {
  Precision prec = std::min(t1.precision(), t2.precision());
  return BivariateEvaluator<Complex>(p, prec).value(t1, t2);
}

Complex evaluate(const GaussianQuadruplePoly& p, const std::array<Complex, 4>& t) {
  Precision prec = t[0].precision();
  for (const auto& v : t) prec = std::min(prec, v.precision());
  std::array<std::vector<Complex>, 4> powers;
  for (std::size_t v = 0; v < 4; ++v) {
    int deg = std::max(p.degree_in(v), 0);
    powers[v].emplace_back(Real(1L, prec), Real(0L, prec));
    for (int k = 1; k <= deg; ++k) powers[v].push_back(powers[v].back() * t[v]);
  }
  Complex acc(prec);
  for (const auto& [e, c] : p.terms()) {
    Complex term(c, prec);
    for (std::size_t v = 0; v < 4; ++v) {
      if (e[v] > 0) term *= powers[v][e[v]];
    }
    acc += term;
  }
  return acc;
}

Real evaluate(const RealQuadruplePoly& p, const std::array<Real, 4>& x) {
  Precision prec = x[0].precision();
  for (const auto& v : x) prec = std::min(prec, v.precision());
  std::array<std::vector<Real>, 4> powers;
  for (std::size_t v = 0; v < 4; ++v) {
    int deg = std::max(p.degree_in(v), 0);
    powers[v].emplace_back(1L, prec);
    for (int k = 1; k <= deg; ++k) powers[v].push_back(powers[v].back() * x[v]);
  }
  Real acc(prec);
  for (const auto& [e, c] : p.terms()) {
    Real term(c, prec);
    for (std::size_t v = 0; v < 4; ++v) {
      if (e[v] > 0) term *= powers[v][e[v]];
    }
    acc += term;
  }
  return acc;
}

namespace {

Real zero_like(Precision prec, const Real*) { return Real(prec); }
Complex zero_like(Precision prec, const Complex*) { return Complex(prec); }

template <class Scalar>
Scalar make_zero(Precision prec) {
  return zero_like(prec, static_cast<const Scalar*>(nullptr));
}

Real scalar_from(const mpz_class& c, Precision prec, const Real*) { return Real(c, prec); }
Complex scalar_from(const mpz_class& c, Precision prec, const Complex*) {
  return Complex(Real(c, prec), Real(prec));
}

}  // namespace

template <class Scalar>
BivariateEvaluator<Scalar>::BivariateEvaluator(const IntegerBivariatePoly& p, Precision prec) : prec_(prec) {
  const int d1 = std::max(p.degree_in(0), 0);
  const int d2 = std::max(p.degree_in(1), 0);
  coef_.assign(d1 + 1, std::vector<Scalar>(d2 + 1, make_zero<Scalar>(prec)));
  abs_coef_.assign(d1 + 1, std::vector<Real>(d2 + 1, Real(prec)));
  for (const auto& [e, c] : p.terms()) {
    coef_[e[0]][e[1]] = scalar_from(c, prec, static_cast<const Scalar*>(nullptr));
    abs_coef_[e[0]][e[1]] = Real(mpz_class(abs(c)), prec);
  }
}

template <class Scalar>
BivariateEvaluator<Scalar>::BivariateEvaluator(const GaussianBivariatePoly& p, Precision prec)
  requires std::is_same_v<Scalar, Complex>
    : prec_(prec) {
  const int d1 = std::max(p.degree_in(0), 0);
  const int d2 = std::max(p.degree_in(1), 0);
  coef_.assign(d1 + 1, std::vector<Scalar>(d2 + 1, Complex(prec)));
  abs_coef_.assign(d1 + 1, std::vector<Real>(d2 + 1, Real(prec)));
  for (const auto& [e, c] : p.terms()) {
    coef_[e[0]][e[1]] = Complex(c, prec);
    abs_coef_[e[0]][e[1]] = coef_[e[0]][e[1]].abs();
  }
}

template <class Scalar>
Scalar BivariateEvaluator<Scalar>::value(const Scalar& t1, const Scalar& t2) const {
  Scalar outer = make_zero<Scalar>(prec_);
  for (auto row = coef_.rbegin(); row != coef_.rend(); ++row) {
    Scalar inner = make_zero<Scalar>(prec_);
    for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * t2 + *c;
    outer = outer * t1 + inner;
  }
  return outer;
}

template <class Scalar>
ValueAndGradient<Scalar> BivariateEvaluator<Scalar>::value_and_gradient(const Scalar& t1, const Scalar& t2) const {
  Scalar v = make_zero<Scalar>(prec_);
  Scalar dv1 = make_zero<Scalar>(prec_);
  Scalar dv2 = make_zero<Scalar>(prec_);
  for (auto row = coef_.rbegin(); row != coef_.rend(); ++row) {
    Scalar r = make_zero<Scalar>(prec_);
    Scalar dr = make_zero<Scalar>(prec_);
    for (auto c = row->rbegin(); c != row->rend(); ++c) {
      dr = dr * t2 + r;
      r = r * t2 + *c;
    }
    dv1 = dv1 * t1 + v;
    v = v * t1 + r;
    dv2 = dv2 * t1 + dr;
  }
  return {std::move(v), std::move(dv1), std::move(dv2)};
}

template <class Scalar>
Real BivariateEvaluator<Scalar>::abs_sum(const Real& a1, const Real& a2) const {
  Real outer(prec_);
  for (auto row = abs_coef_.rbegin(); row != abs_coef_.rend(); ++row) {
    Real inner(prec_);
    for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * a2 + *c;
    outer = outer * a1 + inner;
  }
  return outer;
}

template class BivariateEvaluator<Real>;
template class BivariateEvaluator<Complex>;

}  // namespace modgeo
