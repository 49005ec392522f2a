#pragma once

#include "modgeo/complex.hpp"
#include "modgeo/rational_matrix.hpp"

namespace modgeo {

/// A point of the upper half-plane. Construction checks im(z) > 0.
class UpperHalfPoint {
 public:
  explicit UpperHalfPoint(Complex z);

  [[nodiscard]] const Complex& z() const { return z_; }
  [[nodiscard]] Precision precision() const { return z_.precision(); }

 private:
  Complex z_;
};

struct FundamentalDomainReduction {
  UpperHalfPoint point;
  /// gamma in SL2(Z) with gamma . z = point
  RationalMatrix2 gamma;
};

/// Moves z into the standard fundamental domain |re z| <= 1/2, |z| >= 1 by
/// translations and inversions. On the boundary the representative with
/// re(z) <= 0 is chosen.
FundamentalDomainReduction reduce_to_fundamental_domain(const UpperHalfPoint& z);

/// Normalized Eisenstein series and the discriminant, summed directly at z
/// (no reduction, so only use where im(z) is not small).
struct ModularFormValues {
  Complex e4;
  Complex e6;
  Complex delta;
};
ModularFormValues modular_forms_at(const UpperHalfPoint& z);

/// j(z) = E4(z)^3 / Delta(z) at the precision of z.
Complex j_eval(const UpperHalfPoint& z);

struct JWithDerivative {
  Complex j;
  Complex dj;  // dj/dz at z
};
JWithDerivative j_eval_with_derivative(const UpperHalfPoint& z);

/// A point z of the fundamental domain with |j(z) - c| <= 2^(-prec/2) max(1, |c|).
/// Throws NonConvergence when no seed converges.
UpperHalfPoint j_inverse(const Complex& c);

/// The CM point (D + sqrt(D)) / 2 of discriminant D < 0.
UpperHalfPoint cm_point(long discriminant, Precision prec);
/// j of the CM point of discriminant D. Throws InvalidDiscriminant.
Complex heegner_j(long discriminant, Precision prec = kDefaultPrecision);

}  // namespace modgeo
