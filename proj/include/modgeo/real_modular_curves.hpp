#pragma once

#include "modgeo/geodesics.hpp"
#include "modgeo/modular_forms.hpp"
#include "modgeo/modular_polynomials.hpp"
#include "modgeo/poly.hpp"
#include "modgeo/rational_matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace modgeo {

/// The real plane curve Z_N : Phi_N(x + iy, x - iy) = 0 with an exact
/// integer equation F(x, y). For N = 1 the equation is F = y.
struct RealCurveZN {
  long level = 1;
  IntegerBivariatePoly equation;  // variables (x, y)
};

/// Phi(x + iy, x - iy) = re + i im, expanded exactly.
struct ConjugateExpansion {
  IntegerBivariatePoly re;
  IntegerBivariatePoly im;
};
ConjugateExpansion expand_conjugate_substitution(const IntegerBivariatePoly& phi);

/// Throws NonRealExpansion if the imaginary part is not identically zero (N >= 2).
RealCurveZN build_zn(long level, const ModpolyOptions& options = {});

/// Relative distance from t2 to the nearest root of P(t1, .):
///   min_k |t2 - r_k(t1)| / max(1, |t2|).
/// A first-order bound deg * |P| / |dP/dT2| (always >= the true distance)
/// is used when it is already below 2^(-prec/2); otherwise the fiber is
/// solved and the distance is measured directly. Evaluation runs with guard
/// bits equal to the coefficient size, so huge coefficients do not swamp
/// the result. A bound at or below `good_enough` is returned as is.
class FiberResidual {
 public:
  FiberResidual(const GaussianBivariatePoly& p, Precision prec);
  FiberResidual(const IntegerBivariatePoly& p, Precision prec);

  [[nodiscard]] double residual(const Complex& t1, const Complex& t2, double good_enough = 0.0) const;
  /// Roots of P(t1, T2) in T2, at the working precision.
  [[nodiscard]] std::vector<Complex> fiber_roots(const Complex& t1) const;
  [[nodiscard]] Precision precision() const { return prec_; }
  [[nodiscard]] Precision guard_precision() const { return eval_.precision(); }
  [[nodiscard]] int fiber_degree() const { return degree_; }

 private:
  Precision prec_;
  int degree_;
  BivariateEvaluator<Complex> eval_;
  std::vector<std::vector<Complex>> by_t2_;  // [j][i] multiplies t1^i t2^j
};

/// Residual of (x, y) against Z_N, i.e. FiberResidual(Phi_N).residual(t, conj t).
double zn_residual(long level, const Real& x, const Real& y, Precision prec = kDefaultPrecision,
                   double good_enough = 0.0, const ModpolyOptions& options = {});

struct BoundingBox {
  double xmin = -1;
  double xmax = 1;
  double ymin = -1;
  double ymax = 1;

  [[nodiscard]] bool nondegenerate() const { return xmin < xmax && ymin < ymax; }
  [[nodiscard]] bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
};

enum class BranchEnd { BoxExit, Closed, Singular, Stall, MaxPoints, Escape };
std::string to_string(BranchEnd end);

/// Polyline approximating a one-dimensional real solution set.
struct TracedBranch {
  int dimension = 2;
  std::vector<std::vector<Real>> points;
  std::vector<double> residuals;  // per point, see FiberResidual
  double step = 0.0;
  BranchEnd start_end = BranchEnd::BoxExit;
  BranchEnd finish_end = BranchEnd::BoxExit;
  bool closed = false;
  /// Steps whose Jacobian null space was well conditioned (rank deficiency 1).
  std::size_t well_conditioned_steps = 0;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] double max_residual() const;
};

struct TraceOptions {
  BoundingBox bbox;
  double step = 0.05;
  double tol = 1e-10;
  int grid = 256;
  std::size_t max_points = 20000;
  Precision precision = kDefaultPrecision;
  ModpolyOptions modpoly;
};

/// Seeds from sign changes of F on a grid over the box, then follows each
/// branch with a tangent predictor and a Newton corrector orthogonal to the
/// tangent. Branches end at the box boundary, on closure, or at points where
/// the gradient vanishes numerically; they never switch branches.
std::vector<TracedBranch> trace_zn(const RealCurveZN& curve, const TraceOptions& options);

/// Foot of the perpendicular from (x, y) onto the part of the curve that
/// `branch` approximates, found by Newton projection and tangential sliding
/// from the nearest vertex. nullopt when (x, y) is farther than 4 steps from
/// the polyline or the iteration leaves the branch.
struct CurveProjection {
  std::vector<Real> foot;
  Real distance;
};
std::optional<CurveProjection> project_to_branch(const RealCurveZN& curve, const TracedBranch& branch,
                                                 const Real& x, const Real& y);

/// Witness that (x, y) lies on the image under j of a special geodesic:
/// an integral A with det(A) = -N and A z = conj(z) for z = j^-1(x + iy).
struct GeodesicCertificate {
  long level = 1;
  RationalMatrix2 matrix;  // A
  UpperHalfPoint z{Complex(0.0, 1.0, kDefaultPrecision)};
  IsogenyTriple isogeny{1, 0, 1};
  RationalMatrix2 gamma;  // SL2(Z) part
  Real residual;          // |A z - conj(z)|
  double conditioning = 1.0;
  double bound = 0.0;     // residual <= bound
  bool trace_zero = false;
  std::optional<GeodesicMatrix> geodesic;  // S_A through z when A has trace 0
};

/// Throws PreconditionError when (x, y) is not on Z_N within tol and
/// CertificationFailed when no isogeny/SL2(Z) combination matches.
GeodesicCertificate certify_special_geodesic_point(long level, const Real& x, const Real& y, double tol);

}  // namespace modgeo
