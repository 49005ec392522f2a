#include "modgeo/real.hpp"

#include "modgeo/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>

namespace modgeo {

namespace {

Precision clamp_precision(Precision prec) {
  return std::clamp<Precision>(prec, MPFR_PREC_MIN, MPFR_PREC_MAX);
}

Precision min_prec(const Real& a, const Real& b) {
  return std::min(a.precision(), b.precision());
}

}  // namespace

Real::Real(Precision prec) {
  mpfr_init2(value_, clamp_precision(prec));
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(value_, clamp_precision(prec));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, Precision prec) {
  mpfr_init2(value_, clamp_precision(prec));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, Precision prec) {
  mpfr_init2(value_, clamp_precision(prec));
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, Precision prec) {
  mpfr_init2(value_, clamp_precision(prec));
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(std::string_view text, Precision prec) {
  mpfr_init2(value_, clamp_precision(prec));
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
      mpfr_clear(value_);
      throw FormatError("invalid rational literal: " + s);
    }
    q.canonicalize();
    mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
    return;
  }
  char* end = nullptr;
  mpfr_strtofr(value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') {
    mpfr_clear(value_);
    throw FormatError("invalid real literal: " + s);
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(Precision prec) const {
  Real r(prec);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

long Real::exponent() const {
  if (!mpfr_regular_p(value_)) return mpfr_zero_p(value_) ? MPFR_EMIN_MIN : MPFR_EMAX_MAX;
  return mpfr_get_exp(value_);
}

mpq_class Real::to_rational() const {
  if (!is_finite()) throw PreconditionError("to_rational of a non-finite value");
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  mpq_class q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

mpz_class Real::round_to_integer() const {
  mpz_class z;
  Real r(precision());
  mpfr_round(r.value_, value_);
  mpfr_get_z(z.get_mpz_t(), r.value_, MPFR_RNDN);
  return z;
}

mpz_class Real::floor_to_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDD);
  return z;
}

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& x) {
  Real r(x.precision());
  mpfr_neg(r.value_, x.value_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.to_string(static_cast<int>(os.precision()));
}

#define MODGEO_UNARY(name, fn)                  \
  Real name(const Real& x) {                    \
    Real r(x.precision());                      \
    fn(r.get(), x.get(), MPFR_RNDN);            \
    return r;                                   \
  }

MODGEO_UNARY(abs, mpfr_abs)
MODGEO_UNARY(sqrt, mpfr_sqrt)
MODGEO_UNARY(exp, mpfr_exp)
MODGEO_UNARY(log, mpfr_log)
MODGEO_UNARY(sin, mpfr_sin)
MODGEO_UNARY(cos, mpfr_cos)

#undef MODGEO_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(min_prec(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(min_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, unsigned long n) {
  Real r(x.precision());
  mpfr_pow_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real two_pow(long e, Precision prec) {
  Real r(1L, prec);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

}  // namespace modgeo
