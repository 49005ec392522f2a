#pragma once

#include "modgeo/complex.hpp"
#include "modgeo/poly.hpp"

#include <array>
#include <string_view>
#include <utility>

namespace modgeo {

/// An algebraic curve P(T1, T2) = 0 in Y(1) x Y(1) with exact coefficients.
class ComplexPlaneCurve {
 public:
  /// Throws PreconditionError for the zero polynomial.
  explicit ComplexPlaneCurve(GaussianBivariatePoly p);
  explicit ComplexPlaneCurve(const IntegerBivariatePoly& p);

  [[nodiscard]] const GaussianBivariatePoly& poly() const { return p_; }
  /// P depends on T2 only, so the curve is {T2 = c} for finitely many c.
  [[nodiscard]] bool is_horizontal() const { return horizontal_; }
  /// P depends on T1 only.
  [[nodiscard]] bool is_vertical() const { return vertical_; }

 private:
  GaussianBivariatePoly p_;
  bool horizontal_;
  bool vertical_;
};

/// Parses expressions such as "T1*T2 - 10^6", "T2 - pi*T1" or "(1+2i)*T1^2 - T2"
/// with +, -, *, ^ (nonnegative integer exponents), parentheses, exact
/// decimals and fractions p/q, the unit i, and pi (rounded to `pi_bits` bits
/// and then taken exactly). Throws FormatError.
GaussianBivariatePoly parse_curve_expression(std::string_view text, Precision pi_bits = kDefaultPrecision);

/// P(x1 + i y1, x2 + i y2) = re + i im in variables (X1, Y1, X2, Y2).
struct WeilRestriction {
  RealQuadruplePoly re_part;
  RealQuadruplePoly im_part;
};
WeilRestriction weil_restrict(const ComplexPlaneCurve& c);

/// (x1 + i y1, x1 - i y1, x2 + i y2, x2 - i y2)
std::array<Complex, 4> f2_map(const Real& x1, const Real& y1, const Real& x2, const Real& y2);

/// Equations of V = f^2(C~): Q1 = P(T1, T3) and Q2 = conj(P)(T2, T4).
std::pair<GaussianQuadruplePoly, GaussianQuadruplePoly> surface_equations(const ComplexPlaneCurve& c);

/// S_{N1,N2} : Phi_N1(T1, T2) = Phi_N2(T3, T4) = 0.
struct SpecialSurface {
  long n1 = 1;
  long n2 = 1;
  /// Throws PreconditionError unless both levels are positive.
  SpecialSurface(long level1, long level2);
};

/// (|Phi_N1(T1, T2)|, |Phi_N2(T3, T4)|)
std::pair<Real, Real> special_surface_residual(const SpecialSurface& s, const std::array<Complex, 4>& t);

}  // namespace modgeo
