#pragma once

#include "modgeo/real_modular_curves.hpp"
#include "modgeo/restriction.hpp"
#include "modgeo/serialization.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace modgeo {

/// Intersection-dimension bookkeeping for a component A of V cap S in an
/// n-dimensional ambient space.
struct AtypicalityReport {
  int dim_a = 0;
  int dim_v = 0;
  int dim_s = 0;
  int ambient_n = 0;
  int excess = 0;  // dim_a - (dim_v + dim_s - n)
  bool atypical = false;
  /// Set by callers once no coordinate is constant on A; implies atypical.
  bool strongly_flag = false;

  /// codim(A) < codim(V) + codim(S), equivalent to excess > 0.
  [[nodiscard]] bool codimension_atypical() const;
};

/// Throws DimensionError for negative dimensions or dimensions above n.
AtypicalityReport atypicality_excess(int dim_a, int dim_v, int dim_s, int ambient_n);

/// Box in (x1, y1, x2, y2) coordinates.
struct Box4 {
  std::array<double, 4> lo{-3000, -3000, -1e6, -1e6};
  std::array<double, 4> hi{3000, 3000, 1e6, 1e6};

  [[nodiscard]] bool nondegenerate() const;
  [[nodiscard]] bool contains(const std::array<double, 4>& p) const;
};

struct IntersectionOptions {
  Box4 bbox;
  /// Maximal step in 4D arclength; 0 picks 1/400 of the (x1, y1) diagonal.
  double step = 0.0;
  double tol = 1e-10;
  /// Seeding grid for Z_M over the (x1, y1) part of the box.
  int grid = 256;
  std::size_t max_points = 2000;
  std::size_t max_branches = 16;
  Precision precision = kDefaultPrecision;

  [[nodiscard]] double effective_step() const;
};

/// Traces the real curve {Re P = Im P = 0, F_M(x1, y1) = 0} in R^4. Seeds are
/// the fibre roots over points of traced Z_M branches; the tangent is the
/// null vector of the 3x4 Jacobian and the corrector is a min-norm
/// Gauss-Newton step. Residual per point: the larger of the fibre distance
/// of t2 to the roots of P(t1, .) and the Z_M residual of (x1, y1), both
/// relative as in FiberResidual. Throws NoSeeds when no fibre root lies in
/// the box.
std::vector<TracedBranch> trace_intersection(const ComplexPlaneCurve& c, long m, const IntersectionOptions& options);

/// Dimension-one rule: at least 20 steps taken with a well-conditioned
/// one-dimensional null space.
bool is_dimension_one(const TracedBranch& branch);

/// Levels certifying one planar projection of a branch.
struct ProjectionLevels {
  /// Ascending levels with every point on Z_N for some N of the set; a single
  /// level when one suffices. Empty when some point has no level up to Nmax.
  std::vector<long> levels;
  /// max over points of the accepted Z_N residual.
  double max_residual = std::numeric_limits<double>::infinity();
  /// Largest distance from the first point, a lower bound for the diameter.
  double spread = 0.0;
  bool singleton = true;
};

struct ProjectionCertificate {
  TracedBranch branch;
  ProjectionLevels p1;
  ProjectionLevels p2;
  long nmax = 0;
  double tol = 0.0;
  /// Every coordinate of the f^2 image varies by more than 10 tol.
  bool strongly_atypical = false;

  [[nodiscard]] bool valid() const;
  /// Two-level summary: the largest certified level on each side (0 if none).
  [[nodiscard]] std::pair<long, long> level_pair() const;
};

/// Requires a 4-dimensional branch with at least 10 points.
ProjectionCertificate certify_projections(const TracedBranch& branch, long nmax, double tol);

struct DetectorBudget {
  long nmax_exact = 10;
  long nmax_search = 12;
  std::vector<long> m_list{1, 2, 3};
  double tol = 1e-8;
  /// Distinct certified level pairs needed for EvidenceSpecial.
  std::size_t evidence_pairs = 3;
  IntersectionOptions trace;
};

enum class VerdictKind { StronglySpecial, EvidenceSpecial, NotSpecial, Inconclusive };
std::string to_string(VerdictKind kind);

struct EvidenceItem {
  long m = 1;
  std::vector<long> levels1;
  std::vector<long> levels2;
  std::size_t branch_points = 0;
  double max_residual = 0.0;
  bool certified = false;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<long> level;
  std::vector<EvidenceItem> evidence;
  std::optional<EvidenceItem> witness;
  std::size_t distinct_level_pairs = 0;
};

/// Throws HorizontalVerticalError when C depends on one variable only.
Verdict detect_strongly_special(const ComplexPlaneCurve& c, const DetectorBudget& budget = {});

Json to_json(const Verdict& v, const DetectorBudget& budget);

enum class ContainmentTag { ImpossibleByDominance, ForcesEqualsPhiN };
std::string to_string(ContainmentTag tag);

struct ContainmentImplication {
  ContainmentTag tag = ContainmentTag::ImpossibleByDominance;
  int j = 1;
  int k = 2;
  long level = 1;
  /// ImpossibleByDominance: a sampled real point of C~ off Z_N on the
  /// relevant plane, as (x1, y1, x2, y2), with its Z_N residual.
  std::optional<std::array<Real, 4>> witness;
  double witness_residual = 0.0;
  /// (1, 4) and (2, 3) pair a conjugated coordinate with an unconjugated one.
  bool via_conjugate = false;
  /// Forces cases: whether P is an exact scalar multiple of Phi_N.
  bool exact_identity = false;
};

/// Consequence of C~'s image lying on Phi_N(T_j, T_k) = 0 for 1 <= j < k <= 4.
ContainmentImplication containment_implications(int j, int k, long level, const ComplexPlaneCurve& c,
                                                double tol = 1e-8);

/// Deterministic sample of real points of C~: random t1 in the (x1, y1) part
/// of the box, then all fibre roots t2 inside the box.
std::vector<std::array<Real, 4>> sample_real_points(const ComplexPlaneCurve& c, std::size_t count, const Box4& box,
                                                    Precision prec, unsigned long seed = 1);

}  // namespace modgeo
