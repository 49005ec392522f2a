#pragma once

#include "modgeo/complex.hpp"

#include <gmpxx.h>

#include <iosfwd>

namespace modgeo {

/// Exact 2x2 rational matrix (a b; c d). Entries are kept in lowest terms.
class RationalMatrix2 {
 public:
  RationalMatrix2() : RationalMatrix2(1, 0, 0, 1) {}
  RationalMatrix2(mpq_class a, mpq_class b, mpq_class c, mpq_class d);

  static RationalMatrix2 identity() { return {}; }

  [[nodiscard]] const mpq_class& a() const { return a_; }
  [[nodiscard]] const mpq_class& b() const { return b_; }
  [[nodiscard]] const mpq_class& c() const { return c_; }
  [[nodiscard]] const mpq_class& d() const { return d_; }

  [[nodiscard]] mpq_class det() const { return a_ * d_ - b_ * c_; }
  [[nodiscard]] mpq_class trace() const { return a_ + d_; }
  [[nodiscard]] bool is_integral() const;
  /// Throws SingularMatrix when det = 0.
  [[nodiscard]] RationalMatrix2 inverse() const;
  [[nodiscard]] RationalMatrix2 scaled(const mpq_class& s) const { return {a_ * s, b_ * s, c_ * s, d_ * s}; }

  friend RationalMatrix2 operator*(const RationalMatrix2& m, const RationalMatrix2& n);
  friend bool operator==(const RationalMatrix2& m, const RationalMatrix2& n) {
    return m.a_ == n.a_ && m.b_ == n.b_ && m.c_ == n.c_ && m.d_ == n.d_;
  }
  friend std::ostream& operator<<(std::ostream& os, const RationalMatrix2& m);

 private:
  mpq_class a_, b_, c_, d_;
};

/// (a z + b) / (c z + d) at the precision of z. Throws PoleError when
/// |c z + d| <= 2^(-prec/2).
Complex mobius_apply(const RationalMatrix2& m, const Complex& z);

}  // namespace modgeo
