#pragma once

#include "modgeo/real.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace modgeo {

/// Exact complex rational a + b i.
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] GaussianRational conj() const { return {re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Arbitrary-precision complex number; the precision is the smaller of
/// the two component precisions.
class Complex {
 public:
  explicit Complex(Precision prec = kDefaultPrecision) : re_(prec), im_(prec) {}
  Complex(Real re, Real im);
  explicit Complex(Real re);
  Complex(double re, double im, Precision prec) : re_(re, prec), im_(im, prec) {}
  Complex(const GaussianRational& value, Precision prec) : re_(value.re, prec), im_(value.im, prec) {}

  [[nodiscard]] const Real& re() const { return re_; }
  [[nodiscard]] const Real& im() const { return im_; }
  [[nodiscard]] Real& re() { return re_; }
  [[nodiscard]] Real& im() { return im_; }

  [[nodiscard]] Precision precision() const { return std::min(re_.precision(), im_.precision()); }
  [[nodiscard]] Complex with_precision(Precision prec) const {
    return {re_.with_precision(prec), im_.with_precision(prec)};
  }
  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  [[nodiscard]] Complex conj() const { return {re_, -im_}; }
  /// |z|^2
  [[nodiscard]] Real norm() const { return re_ * re_ + im_ * im_; }
  [[nodiscard]] Real abs() const { return hypot(re_, im_); }
  [[nodiscard]] Real arg() const { return atan2(im_, re_); }

  [[nodiscard]] std::string to_string(int digits = 20) const;

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);

  friend Complex operator-(const Complex& z) { return {-z.re_, -z.im_}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(long a, const Complex& b) { return b * a; }
  friend Complex operator/(const Complex& a, long b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator+(const Complex& a, const Real& b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, const Real& b) { return {a.re_ - b, a.im_}; }
  friend Complex operator+(const Complex& a, long b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, long b) { return {a.re_ - b, a.im_}; }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z);

 private:
  Real re_;
  Real im_;
};

/// i * x
Complex times_i(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, unsigned long n);
Real abs(const Complex& z);
/// |a - b|
Real distance(const Complex& a, const Complex& b);

}  // namespace modgeo
