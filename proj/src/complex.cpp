#include "modgeo/complex.hpp"

#include "modgeo/errors.hpp"

#include <ostream>

namespace modgeo {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  mpq_class den = b.re * b.re + b.im * b.im;
  if (den == 0) throw PoleError("division by zero Gaussian rational");
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  // keep both parts at the common precision
  Precision p = std::min(re_.precision(), im_.precision());
  if (re_.precision() != p) re_ = re_.with_precision(p);
  if (im_.precision() != p) im_ = im_.with_precision(p);
}

Complex::Complex(Real re) : re_(std::move(re)), im_(re_.precision()) {}

std::string Complex::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  if (im_.sign() < 0) {
    s += " - " + (-im_).to_string(digits) + "i";
  } else {
    s += " + " + im_.to_string(digits) + "i";
  }
  return s;
}

Complex& Complex::operator+=(const Complex& rhs) { return *this = *this + rhs; }
Complex& Complex::operator-=(const Complex& rhs) { return *this = *this - rhs; }
Complex& Complex::operator*=(const Complex& rhs) { return *this = *this * rhs; }
Complex& Complex::operator/=(const Complex& rhs) { return *this = *this / rhs; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

Complex operator/(const Complex& a, const Complex& b) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (b.is_zero()) throw PoleError("complex division by zero");
  if (abs(b.re_) >= abs(b.im_)) {
    Real r = b.im_ / b.re_;
    Real den = b.re_ + b.im_ * r;
    return {(a.re_ + a.im_ * r) / den, (a.im_ - a.re_ * r) / den};
  }
  Real r = b.re_ / b.im_;
  Real den = b.re_ * r + b.im_;
  return {(a.re_ * r + a.im_) / den, (a.im_ * r - a.re_) / den};
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << z.to_string(static_cast<int>(os.precision()));
}

Complex times_i(const Complex& z) { return {-z.im(), z.re()}; }

Complex exp(const Complex& z) {
  Real m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw PoleError("log of zero");
  return {log(z.abs()), z.arg()};
}

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return z;
  Real r = z.abs();
  Real a = sqrt((r + abs(z.re())) / 2L);
  if (z.re().sign() >= 0) {
    return {a, z.im() / (a * 2L)};
  }
  Real b = z.im().sign() < 0 ? -a : a;
  return {z.im() / (b * 2L), b};
}

Complex pow(const Complex& z, unsigned long n) {
  Complex result(Real(1L, z.precision()), Real(0L, z.precision()));
  Complex base = z;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Real abs(const Complex& z) { return z.abs(); }

Real distance(const Complex& a, const Complex& b) { return (a - b).abs(); }

}  // namespace modgeo
