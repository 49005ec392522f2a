#pragma once

#include "modgeo/modular_forms.hpp"
#include "modgeo/rational_matrix.hpp"

#include <vector>

namespace modgeo {

/// Rational matrix A = (a b; c -a) with trace 0 and det < 0. It defines the
/// special geodesic S_A = { z in H : A z = conj(z) }.
class GeodesicMatrix {
 public:
  /// Throws PreconditionError unless trace(A) = 0 and det(A) < 0.
  explicit GeodesicMatrix(RationalMatrix2 a);

  [[nodiscard]] const RationalMatrix2& matrix() const { return a_; }
  [[nodiscard]] mpq_class det() const { return a_.det(); }

  /// Integral representative with coprime entries and a positive first
  /// nonzero entry among (c, a, b). Equal loci <=> equal canonical forms.
  [[nodiscard]] GeodesicMatrix canonical() const;

  friend bool operator==(const GeodesicMatrix& x, const GeodesicMatrix& y) { return x.a_ == y.a_; }

 private:
  RationalMatrix2 a_;
};

/// The set S_A in H. Semicircles carry center and squared radius; the
/// endpoint at infinity of a vertical line is implicit in the kind.
struct GeodesicLocus {
  enum class Kind { Semicircle, VerticalLine };
  Kind kind = Kind::VerticalLine;
  mpq_class center;     // semicircle
  mpq_class radius_sq;  // semicircle, > 0
  mpq_class x0;         // vertical line

  /// Finite endpoints are center +- sqrt(radius_sq); true when these are rational.
  [[nodiscard]] bool has_rational_endpoints() const;

  friend bool operator==(const GeodesicLocus& u, const GeodesicLocus& v);
};

GeodesicLocus locus(const GeodesicMatrix& a);

/// |A z - conj(z)|
Real geodesic_residual(const GeodesicMatrix& a, const UpperHalfPoint& z);
bool contains(const GeodesicMatrix& a, const UpperHalfPoint& z, const Real& tol);

/// B A B^-1, the geodesic B . S_A. Requires det(B) > 0.
GeodesicMatrix conjugate_geodesic(const RationalMatrix2& b, const GeodesicMatrix& a);

/// Geodesic with endpoints p +- sqrt(D): (p, D - p^2; 1, -p).
GeodesicMatrix geodesic_from_quadratic(const mpq_class& p, const mpq_class& discriminant);

bool is_rational_square(const mpq_class& q);

/// `count` points spread along the locus, avoiding the endpoints. Vertical
/// lines are sampled for im(z) between `y_min` and `y_max`.
std::vector<UpperHalfPoint> sample_locus(const GeodesicLocus& locus, int count, Precision prec,
                                         double y_min = 0.1, double y_max = 10.0);

}  // namespace modgeo
