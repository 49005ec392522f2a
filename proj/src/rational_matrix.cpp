#include "modgeo/rational_matrix.hpp"

#include "modgeo/errors.hpp"

#include <ostream>

namespace modgeo {

RationalMatrix2::RationalMatrix2(mpq_class a, mpq_class b, mpq_class c, mpq_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  a_.canonicalize();
  b_.canonicalize();
  c_.canonicalize();
  d_.canonicalize();
}

bool RationalMatrix2::is_integral() const {
  return a_.get_den() == 1 && b_.get_den() == 1 && c_.get_den() == 1 && d_.get_den() == 1;
}

RationalMatrix2 RationalMatrix2::inverse() const {
  mpq_class det_value = det();
  if (det_value == 0) throw SingularMatrix("matrix is singular");
  return {d_ / det_value, -b_ / det_value, -c_ / det_value, a_ / det_value};
}

RationalMatrix2 operator*(const RationalMatrix2& m, const RationalMatrix2& n) {
  return {m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
          m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_};
}

std::ostream& operator<<(std::ostream& os, const RationalMatrix2& m) {
  return os << "(" << m.a_ << " " << m.b_ << "; " << m.c_ << " " << m.d_ << ")";
}

Complex mobius_apply(const RationalMatrix2& m, const Complex& z) {
  const Precision prec = z.precision();
  Complex num = z * Real(m.a(), prec) + Real(m.b(), prec);
  Complex den = z * Real(m.c(), prec) + Real(m.d(), prec);
  if (den.abs() <= two_pow(-static_cast<long>(prec / 2), prec)) {
    throw PoleError("Mobius denominator vanishes numerically");
  }
  return num / den;
}

}  // namespace modgeo
