#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace modgeo {

using Precision = mpfr_prec_t;

/// Working precision used when the caller does not choose one.
inline constexpr Precision kDefaultPrecision = 192;
inline constexpr Precision kMinPrecision = 64;

/// Arbitrary-precision real number owning an mpfr_t.
///
/// Every value carries its own mantissa precision. Binary operations
/// produce a result at the smaller of the two operand precisions, so a
/// computation never silently claims more accuracy than its inputs.
class Real {
 public:
  explicit Real(Precision prec = kDefaultPrecision);
  Real(long value, Precision prec);
  Real(double value, Precision prec);
  Real(const mpz_class& value, Precision prec);
  Real(const mpq_class& value, Precision prec);
  /// Parses a decimal (or "p/q") string, rounding to nearest.
  Real(std::string_view text, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  [[nodiscard]] Precision precision() const { return mpfr_get_prec(value_); }
  /// Returns a copy rounded (or zero-extended) to `prec` bits.
  [[nodiscard]] Real with_precision(Precision prec) const;

  [[nodiscard]] mpfr_srcptr get() const { return value_; }
  [[nodiscard]] mpfr_ptr get() { return value_; }

  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  [[nodiscard]] long exponent() const;

  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact value as a rational (every finite mpfr value is dyadic).
  [[nodiscard]] mpq_class to_rational() const;
  /// Nearest integer, ties away from zero.
  [[nodiscard]] mpz_class round_to_integer() const;
  [[nodiscard]] mpz_class floor_to_integer() const;
  /// Scientific notation with `digits` significant digits.
  [[nodiscard]] std::string to_string(int digits = 20) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator-(const Real& x);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) > 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) <= 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Real& x);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real pow(const Real& x, unsigned long n);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real pi(Precision prec);
/// 2^e at the given precision.
Real two_pow(long e, Precision prec);

}  // namespace modgeo
