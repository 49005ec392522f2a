#include "modgeo/atypical.hpp"

#include "modgeo/errors.hpp"
#include "modgeo/modular_polynomials.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

namespace modgeo {

bool AtypicalityReport::codimension_atypical() const {
  return (ambient_n - dim_a) < (ambient_n - dim_v) + (ambient_n - dim_s);
}

AtypicalityReport atypicality_excess(int dim_a, int dim_v, int dim_s, int ambient_n) {
  if (ambient_n < 0 || dim_a < 0 || dim_v < 0 || dim_s < 0) throw DimensionError("dimensions must be nonnegative");
  if (dim_a > ambient_n || dim_v > ambient_n || dim_s > ambient_n) {
    throw DimensionError("dimension exceeds the ambient dimension");
  }
  AtypicalityReport r;
  r.dim_a = dim_a;
  r.dim_v = dim_v;
  r.dim_s = dim_s;
  r.ambient_n = ambient_n;
  r.excess = dim_a - (dim_v + dim_s - ambient_n);
  r.atypical = r.excess > 0;
  return r;
}

bool Box4::nondegenerate() const {
  for (int k = 0; k < 4; ++k) {
    if (!(lo[k] < hi[k])) return false;
  }
  return true;
}

bool Box4::contains(const std::array<double, 4>& p) const {
  for (int k = 0; k < 4; ++k) {
    if (!(p[k] >= lo[k] && p[k] <= hi[k])) return false;
  }
  return true;
}

double IntersectionOptions::effective_step() const {
  if (step > 0.0) return step;
  return std::hypot(bbox.hi[0] - bbox.lo[0], bbox.hi[1] - bbox.lo[1]) / 400.0;
}

// ---------------------------------------------------------------------------

namespace {

using P4 = std::array<Real, 4>;
using D4 = std::array<double, 4>;

D4 to_doubles(const P4& u) { return {u[0].to_double(), u[1].to_double(), u[2].to_double(), u[3].to_double()}; }

double dist4(const D4& a, const D4& b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

Real det3(const std::array<std::array<Real, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// The system Re P = Im P = F_M = 0 on R^4 with row-normalized Jacobian.
class IntersectionKernel {
 public:
  IntersectionKernel(const ComplexPlaneCurve& c, long m, Precision prec)
      : prec_(prec),
        m_(m),
        zm_(build_zn(m)),
        p_guard_(prec + static_cast<Precision>(coefficient_bits(c.poly())) + 16),
        f_guard_(prec + static_cast<Precision>(coefficient_bits(zm_.equation)) + 16),
        p_eval_(c.poly(), p_guard_),
        f_eval_(zm_.equation, f_guard_),
        fiber_(c.poly(), prec) {}

  [[nodiscard]] const RealCurveZN& zm() const { return zm_; }
  [[nodiscard]] const FiberResidual& fiber() const { return fiber_; }

  struct System {
    std::array<Real, 3> g;
    std::array<std::array<Real, 4>, 3> rows;
  };

  [[nodiscard]] std::optional<System> evaluate(const P4& u) const {
    Complex t1(u[0].with_precision(p_guard_), u[1].with_precision(p_guard_));
    Complex t2(u[2].with_precision(p_guard_), u[3].with_precision(p_guard_));
    auto pv = p_eval_.value_and_gradient(t1, t2);
    auto fv = f_eval_.value_and_gradient(u[0].with_precision(f_guard_), u[1].with_precision(f_guard_));
    Real pn = sqrt(pv.d1.norm() + pv.d2.norm());
    Real fn = hypot(fv.d1, fv.d2);
    if (pn.is_zero() || fn.is_zero()) return std::nullopt;
    // d/dx = P', d/dy = i P' for both planes.
    System s;
    s.g = {(pv.value.re() / pn).with_precision(prec_), (pv.value.im() / pn).with_precision(prec_),
           (fv.value / fn).with_precision(prec_)};
    auto cut = [&](const Real& v, const Real& n) { return (v / n).with_precision(prec_); };
    s.rows[0] = {cut(pv.d1.re(), pn), cut(-pv.d1.im(), pn), cut(pv.d2.re(), pn), cut(-pv.d2.im(), pn)};
    s.rows[1] = {cut(pv.d1.im(), pn), cut(pv.d1.re(), pn), cut(pv.d2.im(), pn), cut(pv.d2.re(), pn)};
    s.rows[2] = {cut(fv.d1, fn), cut(fv.d2, fn), Real(0L, prec_), Real(0L, prec_)};
    return s;
  }

  /// Min-norm Gauss-Newton: u -= J^T (J J^T)^-1 G.
  bool correct(P4& u, double max_move) const {
    const P4 start = u;
    const Real conv = two_pow(-static_cast<long>(prec_) + 8, 64);
    for (int it = 0; it < 40; ++it) {
      auto s = evaluate(u);
      if (!s) return false;
      std::array<std::array<Real, 3>, 3> a;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          Real acc(0L, prec_);
          for (int k = 0; k < 4; ++k) acc += s->rows[r][k] * s->rows[c][k];
          a[r][c] = acc;
        }
      }
      Real det = det3(a);
      if (det <= 1e-30) return false;
      std::array<Real, 3> lambda;
      for (int c = 0; c < 3; ++c) {
        auto m = a;
        for (int r = 0; r < 3; ++r) m[r][c] = s->g[r];
        lambda[c] = det3(m) / det;
      }
      Real move(0L, prec_);
      Real size(1L, prec_);
      for (int k = 0; k < 4; ++k) {
        Real d = lambda[0] * s->rows[0][k] + lambda[1] * s->rows[1][k] + lambda[2] * s->rows[2][k];
        u[k] = u[k] - d;
        if (!u[k].is_finite()) return false;
        move += abs(d);
        size += abs(u[k]);
      }
      Real travelled(0L, prec_);
      for (int k = 0; k < 4; ++k) travelled += (u[k] - start[k]) * (u[k] - start[k]);
      if (sqrt(travelled) > max_move) return false;
      if (move <= conv * size) return true;
    }
    return false;
  }

  /// Unit null vector of the normalized Jacobian (generalized cross product),
  /// or nullopt when its length sqrt(det J J^T) is below 1e-12.
  [[nodiscard]] std::optional<D4> tangent(const P4& u) const {
    auto s = evaluate(u);
    if (!s) return std::nullopt;
    D4 t{};
    double norm2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      std::array<std::array<Real, 3>, 3> minor;
      for (int r = 0; r < 3; ++r) {
        int col = 0;
        for (int c = 0; c < 4; ++c) {
          if (c == k) continue;
          minor[r][col++] = s->rows[r][c];
        }
      }
      double v = det3(minor).to_double();
      t[k] = (k % 2 == 0) ? v : -v;
      norm2 += v * v;
    }
    const double norm = std::sqrt(norm2);
    if (!(norm > 1e-12)) return std::nullopt;
    for (double& v : t) v /= norm;
    return t;
  }

  [[nodiscard]] double residual(const P4& u, double good_enough = 0.0) const {
    Complex t1(u[0], u[1]);
    Complex t2(u[2], u[3]);
    double rp = fiber_.residual(t1, t2, good_enough);
    double rz = zn_residual(m_, u[0], u[1], prec_, good_enough);
    return std::max(rp, rz);
  }

 private:
  Precision prec_;
  long m_;
  RealCurveZN zm_;
  Precision p_guard_;
  Precision f_guard_;
  BivariateEvaluator<Complex> p_eval_;
  BivariateEvaluator<Real> f_eval_;
  FiberResidual fiber_;
};

class IntersectionTracer {
 public:
  IntersectionTracer(const ComplexPlaneCurve& c, long m, const IntersectionOptions& options)
      : opt_(options), step_(options.effective_step()), kernel_(c, m, options.precision) {}

  std::vector<TracedBranch> run() {
    TraceOptions zopt;
    zopt.bbox = {opt_.bbox.lo[0], opt_.bbox.hi[0], opt_.bbox.lo[1], opt_.bbox.hi[1]};
    zopt.step = step_;
    zopt.tol = opt_.tol;
    zopt.grid = opt_.grid;
    zopt.max_points = opt_.max_points;
    zopt.precision = opt_.precision;
    std::vector<TracedBranch> zm_branches = trace_zn(kernel_.zm(), zopt);

    std::vector<TracedBranch> out;
    bool any_seed = false;
    for (const auto& zb : zm_branches) {
      for (const auto& q : zb.points) {
        if (out.size() >= opt_.max_branches) return out;
        Complex t1(q[0], q[1]);
        for (const Complex& r : kernel_.fiber().fiber_roots(t1)) {
          P4 u{q[0], q[1], r.re().with_precision(opt_.precision), r.im().with_precision(opt_.precision)};
          D4 ud = to_doubles(u);
          if (!opt_.bbox.contains(ud)) continue;
          any_seed = true;
          if (near_traced(ud)) continue;
          if (auto b = trace_from(u)) {
            for (const auto& p : b->points) traced_.push_back(to_doubles({p[0], p[1], p[2], p[3]}));
            out.push_back(std::move(*b));
            if (out.size() >= opt_.max_branches) return out;
          }
        }
      }
    }
    if (!any_seed) throw NoSeeds("no fibre solution over the traced Z_M lies in the box");
    return out;
  }

 private:
  [[nodiscard]] bool near_traced(const D4& u) const {
    for (const auto& p : traced_) {
      if (dist4(p, u) <= step_) return true;
    }
    return false;
  }

  struct HalfRun {
    std::vector<P4> points;
    std::vector<double> residuals;
    BranchEnd end = BranchEnd::BoxExit;
    bool closed = false;
  };

  HalfRun walk(const P4& seed, D4 t, std::size_t budget, bool detect_closure) const {
    HalfRun run;
    P4 p = seed;
    double h = step_;
    const double h_min = step_ * std::ldexp(1.0, -24);
    double arclength = 0.0;
    const D4 sd = to_doubles(seed);
    while (true) {
      if (run.points.size() >= budget) {
        run.end = BranchEnd::MaxPoints;
        return run;
      }
      if (h < h_min) {
        run.end = BranchEnd::Stall;
        return run;
      }
      P4 q = p;
      for (int k = 0; k < 4; ++k) q[k] = p[k] + Real(h * t[k], opt_.precision);
      bool ok = kernel_.correct(q, 0.5 * h);
      std::optional<D4> tq;
      double r = 0.0;
      D4 qd{};
      if (ok) {
        qd = to_doubles(q);
        D4 pd = to_doubles(p);
        double advance = 0.0;
        for (int k = 0; k < 4; ++k) advance += (qd[k] - pd[k]) * t[k];
        ok = advance > 0.0 && dist4(qd, pd) <= 2.0 * h;
      }
      if (ok) {
        if (!opt_.bbox.contains(qd)) {
          run.end = BranchEnd::BoxExit;
          return run;
        }
        tq = kernel_.tangent(q);
        if (!tq) {
          double rq = kernel_.residual(q, opt_.tol);
          if (rq <= opt_.tol) {
            run.points.push_back(q);
            run.residuals.push_back(rq);
          }
          run.end = BranchEnd::Singular;
          return run;
        }
        double dot = 0.0;
        for (int k = 0; k < 4; ++k) dot += (*tq)[k] * t[k];
        if (dot < 0) {
          for (double& v : *tq) v = -v;
          dot = -dot;
        }
        ok = dot >= 0.9;
        if (ok) {
          r = kernel_.residual(q, opt_.tol);
          ok = r <= opt_.tol;
        }
      }
      if (!ok) {
        h *= 0.5;
        continue;
      }
      arclength += dist4(qd, to_doubles(p));
      run.points.push_back(q);
      run.residuals.push_back(r);
      p = q;
      t = *tq;
      h = std::min(step_, 2.0 * h);
      if (detect_closure && arclength > 3.0 * step_ && dist4(qd, sd) <= step_) {
        run.end = BranchEnd::Closed;
        run.closed = true;
        return run;
      }
    }
  }

  std::optional<TracedBranch> trace_from(P4 seed) const {
    if (!kernel_.correct(seed, step_)) return std::nullopt;
    auto t = kernel_.tangent(seed);
    if (!t) return std::nullopt;
    double r0 = kernel_.residual(seed, opt_.tol);
    if (r0 > opt_.tol) return std::nullopt;
    HalfRun fwd = walk(seed, *t, opt_.max_points, true);
    HalfRun bwd;
    bwd.end = fwd.closed ? BranchEnd::Closed : BranchEnd::MaxPoints;
    if (!fwd.closed && fwd.points.size() + 1 < opt_.max_points) {
      D4 back{-(*t)[0], -(*t)[1], -(*t)[2], -(*t)[3]};
      bwd = walk(seed, back, opt_.max_points - fwd.points.size() - 1, false);
    }
    TracedBranch b;
    b.dimension = 4;
    b.step = step_;
    b.closed = fwd.closed;
    b.start_end = fwd.closed ? BranchEnd::Closed : bwd.end;
    b.finish_end = fwd.end;
    auto push = [&](const P4& p, double r) {
      b.points.push_back({p[0], p[1], p[2], p[3]});
      b.residuals.push_back(r);
    };
    for (std::size_t k = bwd.points.size(); k-- > 0;) push(bwd.points[k], bwd.residuals[k]);
    push(seed, r0);
    for (std::size_t k = 0; k < fwd.points.size(); ++k) push(fwd.points[k], fwd.residuals[k]);
    // every accepted step had a tangent, i.e. a well-conditioned null space
    b.well_conditioned_steps = b.points.size() - 1;
    return b;
  }

  IntersectionOptions opt_;
  double step_;
  IntersectionKernel kernel_;
  std::vector<D4> traced_;
};

}  // namespace

std::vector<TracedBranch> trace_intersection(const ComplexPlaneCurve& c, long m, const IntersectionOptions& options) {
  if (c.is_horizontal() || c.is_vertical()) throw HorizontalVerticalError("curve depends on one variable only");
  if (m < 1) throw PreconditionError("level must be positive");
  if (!options.bbox.nondegenerate()) throw PreconditionError("bounding box is degenerate");
  if (!(options.effective_step() > 0.0)) throw PreconditionError("step must be positive");
  if (!(options.tol > 0.0)) throw PreconditionError("tolerance must be positive");
  IntersectionTracer tracer(c, m, options);
  return tracer.run();
}

bool is_dimension_one(const TracedBranch& branch) { return branch.well_conditioned_steps >= 20; }

// ---------------------------------------------------------------------------

namespace {

double spread_of(const std::vector<Complex>& pts) {
  double best = 0.0;
  for (const auto& p : pts) best = std::max(best, distance(p, pts.front()).to_double());
  return best;
}

ProjectionLevels certify_plane(const std::vector<std::pair<Real, Real>>& pts, long nmax, double tol, Precision prec) {
  ProjectionLevels out;
  std::vector<Complex> zs;
  zs.reserve(pts.size());
  for (const auto& [x, y] : pts) zs.emplace_back(x, y);
  out.spread = spread_of(zs);
  out.singleton = !(out.spread > 10.0 * tol);

  ModpolyOptions mo;
  mo.max_level = std::max(mo.max_level, nmax);
  auto residual = [&](long n, std::size_t k) { return zn_residual(n, pts[k].first, pts[k].second, prec, tol, mo); };
  auto fits = [&](long n, std::size_t k) { return residual(n, k) <= tol; };

  // A sample decides the candidate levels; every point is verified afterwards.
  const std::size_t sample_count = std::min<std::size_t>(32, pts.size());
  std::vector<std::size_t> sample;
  for (std::size_t s = 0; s < sample_count; ++s) sample.push_back(s * (pts.size() - 1) / std::max<std::size_t>(1, sample_count - 1));

  std::set<long> cover;
  for (long n = 1; n <= nmax && cover.empty(); ++n) {
    bool all = true;
    for (std::size_t k : sample) {
      if (!fits(n, k)) {
        all = false;
        break;
      }
    }
    if (all) cover.insert(n);
  }
  auto first_fit = [&](std::size_t k) -> std::optional<long> {
    for (long n = 1; n <= nmax; ++n) {
      if (fits(n, k)) return n;
    }
    return std::nullopt;
  };
  if (cover.empty()) {
    for (std::size_t k : sample) {
      auto n = first_fit(k);
      if (!n) return out;
      cover.insert(*n);
    }
  }
  double worst = 0.0;
  long last = *cover.begin();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::optional<double> accepted;
    double r = residual(last, k);
    if (r <= tol) accepted = r;
    for (auto it = cover.begin(); !accepted && it != cover.end(); ++it) {
      if (*it == last) continue;
      r = residual(*it, k);
      if (r <= tol) {
        accepted = r;
        last = *it;
      }
    }
    if (!accepted) {
      auto n = first_fit(k);
      if (!n) return out;
      cover.insert(*n);
      last = *n;
      accepted = residual(*n, k);
    }
    worst = std::max(worst, *accepted);
  }
  out.levels.assign(cover.begin(), cover.end());
  out.max_residual = worst;
  return out;
}

}  // namespace

bool ProjectionCertificate::valid() const {
  return !p1.singleton && !p2.singleton && !p1.levels.empty() && !p2.levels.empty() && p1.max_residual <= tol &&
         p2.max_residual <= tol;
}

std::pair<long, long> ProjectionCertificate::level_pair() const {
  return {p1.levels.empty() ? 0 : p1.levels.back(), p2.levels.empty() ? 0 : p2.levels.back()};
}

ProjectionCertificate certify_projections(const TracedBranch& branch, long nmax, double tol) {
  if (branch.dimension != 4) throw PreconditionError("projection certificates need a 4-dimensional branch");
  if (branch.points.size() < 10) throw PreconditionError("branch has fewer than 10 points");
  if (nmax < 1) throw PreconditionError("nmax must be positive");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const Precision prec = std::max<Precision>(kDefaultPrecision, branch.points.front()[0].precision());
  std::vector<std::pair<Real, Real>> p1;
  std::vector<std::pair<Real, Real>> p2;
  std::array<std::vector<Complex>, 4> image;
  for (const auto& u : branch.points) {
    p1.emplace_back(u[0], u[1]);
    p2.emplace_back(u[2], u[3]);
    auto f = f2_map(u[0], u[1], u[2], u[3]);
    for (int k = 0; k < 4; ++k) image[k].push_back(f[k]);
  }
  ProjectionCertificate c;
  c.branch = branch;
  c.nmax = nmax;
  c.tol = tol;
  c.p1 = certify_plane(p1, nmax, tol, prec);
  c.p2 = certify_plane(p2, nmax, tol, prec);
  c.strongly_atypical = true;
  for (const auto& coord : image) c.strongly_atypical = c.strongly_atypical && spread_of(coord) > 10.0 * tol;
  return c;
}

// ---------------------------------------------------------------------------

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::StronglySpecial: return "StronglySpecial";
    case VerdictKind::EvidenceSpecial: return "EvidenceSpecial";
    case VerdictKind::NotSpecial: return "NotSpecial";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict detect_strongly_special(const ComplexPlaneCurve& c, const DetectorBudget& budget) {
  if (c.is_horizontal() || c.is_vertical()) throw HorizontalVerticalError("curve depends on one variable only");
  Verdict v;
  if (auto n = is_strongly_special_equation(c.poly(), budget.nmax_exact)) {
    v.kind = VerdictKind::StronglySpecial;
    v.level = *n;
    return v;
  }
  std::set<std::pair<std::vector<long>, std::vector<long>>> pairs;
  for (long m : budget.m_list) {
    if (v.witness) break;  // the verdict is settled
    std::vector<TracedBranch> branches;
    try {
      branches = trace_intersection(c, m, budget.trace);
    } catch (const NoSeeds&) {
      continue;
    }
    for (const auto& b : branches) {
      if (b.points.size() < 10) continue;
      ProjectionCertificate cert = certify_projections(b, budget.nmax_search, budget.tol);
      EvidenceItem item;
      item.m = m;
      item.levels1 = cert.p1.levels;
      item.levels2 = cert.p2.levels;
      item.branch_points = b.points.size();
      item.max_residual = b.max_residual();
      item.certified = cert.valid();
      if (item.certified) {
        pairs.insert({item.levels1, item.levels2});
        v.evidence.push_back(item);
        continue;
      }
      const bool solid = is_dimension_one(b) && b.max_residual() <= budget.tol && !cert.p1.singleton &&
                         !cert.p2.singleton;
      if (solid && (cert.p1.levels.empty() || cert.p2.levels.empty()) && !v.witness) v.witness = item;
    }
  }
  v.distinct_level_pairs = pairs.size();
  if (v.witness) {
    v.kind = VerdictKind::NotSpecial;
  } else if (pairs.size() >= budget.evidence_pairs) {
    v.kind = VerdictKind::EvidenceSpecial;
  } else {
    v.kind = VerdictKind::Inconclusive;
  }
  return v;
}

namespace {

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

Json evidence_json(const EvidenceItem& e) {
  return {{"M", e.m},
          {"levels", {e.levels1.empty() ? 0 : e.levels1.back(), e.levels2.empty() ? 0 : e.levels2.back()}},
          {"levels1", e.levels1},
          {"levels2", e.levels2},
          {"branch_points", e.branch_points},
          {"max_residual", sci(e.max_residual)},
          {"certified", e.certified}};
}

}  // namespace

Json to_json(const Verdict& v, const DetectorBudget& budget) {
  Json out;
  out["verdict"] = to_string(v.kind);
  if (v.level) out["N"] = *v.level;
  Json ev = Json::array();
  for (const auto& e : v.evidence) ev.push_back(evidence_json(e));
  out["evidence"] = ev;
  if (v.witness) out["witness"] = evidence_json(*v.witness);
  out["distinct_level_pairs"] = v.distinct_level_pairs;
  out["budgets"] = {{"Nmax_exact", budget.nmax_exact},
                    {"Nmax_search", budget.nmax_search},
                    {"M_list", budget.m_list},
                    {"tol", sci(budget.tol)},
                    {"evidence_pairs", budget.evidence_pairs},
                    {"step", sci(budget.trace.effective_step())},
                    {"precision_bits", static_cast<long>(budget.trace.precision)}};
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(ContainmentTag tag) {
  switch (tag) {
    case ContainmentTag::ImpossibleByDominance: return "ImpossibleByDominance";
    case ContainmentTag::ForcesEqualsPhiN: return "ForcesEqualsPhiN";
  }
  return "ImpossibleByDominance";
}

std::vector<std::array<Real, 4>> sample_real_points(const ComplexPlaneCurve& c, std::size_t count, const Box4& box,
                                                    Precision prec, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo[0], box.hi[0]);
  std::uniform_real_distribution<double> uy(box.lo[1], box.hi[1]);
  FiberResidual fiber(c.poly(), prec);
  std::vector<std::array<Real, 4>> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 100 * count; ++attempt) {
    Real x1(ux(rng), prec);
    Real y1(uy(rng), prec);
    for (const Complex& r : fiber.fiber_roots(Complex(x1, y1))) {
      std::array<Real, 4> u{x1, y1, r.re().with_precision(prec), r.im().with_precision(prec)};
      if (!box.contains(to_doubles(u))) continue;
      out.push_back(u);
      if (out.size() >= count) break;
    }
  }
  return out;
}

ContainmentImplication containment_implications(int j, int k, long level, const ComplexPlaneCurve& c, double tol) {
  if (!(1 <= j && j < k && k <= 4)) throw PreconditionError("need 1 <= j < k <= 4");
  if (level < 1) throw PreconditionError("level must be positive");
  ContainmentImplication out;
  out.j = j;
  out.k = k;
  out.level = level;
  if ((j == 1 && k == 2) || (j == 3 && k == 4)) {
    out.tag = ContainmentTag::ImpossibleByDominance;
    const int off = j == 1 ? 0 : 2;
    Box4 box;
    box.lo = {-3000, -3000, -1e12, -1e12};
    box.hi = {3000, 3000, 1e12, 1e12};
    for (const auto& u : sample_real_points(c, 32, box, kDefaultPrecision)) {
      double r = zn_residual(level, u[off], u[off + 1]);
      if (r > tol) {
        out.witness = u;
        out.witness_residual = r;
        break;
      }
    }
    return out;
  }
  out.tag = ContainmentTag::ForcesEqualsPhiN;
  out.via_conjugate = (j == 2 && k == 3) || (j == 1 && k == 4);
  out.exact_identity = is_scalar_multiple(c.poly(), modpoly(level)->poly);
  return out;
}

}  // namespace modgeo
