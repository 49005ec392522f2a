#include "modgeo/real_modular_curves.hpp"

#include "modgeo/errors.hpp"
#include "modgeo/roots.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace modgeo {

namespace {

mpz_class binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

double to_double_clamped(const Real& r) {
  double d = r.to_double();
  if (!std::isfinite(d)) return std::numeric_limits<double>::max();
  return d;
}

}  // namespace

ConjugateExpansion expand_conjugate_substitution(const IntegerBivariatePoly& phi) {
  // (x + iy)^i (x - iy)^j = sum_m i^m K(i, j, m) x^(i+j-m) y^m with
  // K(i, j, m) = sum_{m1 + m2 = m} (-1)^m2 C(i, m1) C(j, m2).
  ConjugateExpansion out;
  std::map<std::pair<int, int>, std::vector<mpz_class>> kcache;
  for (const auto& [e, c] : phi.terms()) {
    const int i = e[0];
    const int j = e[1];
    auto [it, fresh] = kcache.try_emplace({i, j});
    if (fresh) {
      it->second.assign(i + j + 1, mpz_class(0));
      for (int m1 = 0; m1 <= i; ++m1) {
        mpz_class b1 = binomial(i, m1);
        for (int m2 = 0; m2 <= j; ++m2) {
          mpz_class term = b1 * binomial(j, m2);
          if (m2 % 2 == 1) term = -term;
          it->second[m1 + m2] += term;
        }
      }
    }
    const auto& k = it->second;
    for (int m = 0; m <= i + j; ++m) {
      if (k[m] == 0) continue;
      mpz_class v = c * k[m];
      // i^m: real for even m, i times (-1)^((m-1)/2) for odd m
      if ((m / 2) % 2 == 1) v = -v;
      if (m % 2 == 0) {
        out.re.add_term({i + j - m, m}, v);
      } else {
        out.im.add_term({i + j - m, m}, v);
      }
    }
  }
  return out;
}

RealCurveZN build_zn(long level, const ModpolyOptions& options) {
  if (level < 1) throw PreconditionError("level must be positive");
  RealCurveZN out;
  out.level = level;
  if (level == 1) {
    out.equation.add_term({0, 1}, mpz_class(1));
    return out;
  }
  auto phi = modpoly(level, options);
  ConjugateExpansion ex = expand_conjugate_substitution(phi->poly);
  if (!ex.im.is_zero()) throw NonRealExpansion("Phi_N(x+iy, x-iy) has a nonzero imaginary part");
  out.equation = std::move(ex.re);
  return out;
}

// ---------------------------------------------------------------------------

FiberResidual::FiberResidual(const GaussianBivariatePoly& p, Precision prec)
    : prec_(prec),
      degree_(std::max(p.degree_in(1), 0)),
      eval_(p, prec + static_cast<Precision>(coefficient_bits(p)) + 16) {
  if (p.is_zero()) throw PreconditionError("zero polynomial");
  const Precision g = eval_.precision();
  const int d1 = std::max(p.degree_in(0), 0);
  by_t2_.assign(degree_ + 1, std::vector<Complex>(d1 + 1, Complex(g)));
  for (const auto& [e, c] : p.terms()) by_t2_[e[1]][e[0]] = Complex(c, g);
}

FiberResidual::FiberResidual(const IntegerBivariatePoly& p, Precision prec)
    : FiberResidual(to_gaussian(p), prec) {}

std::vector<Complex> FiberResidual::fiber_roots(const Complex& t1) const {
  const Precision g = eval_.precision();
  Complex a = t1.with_precision(g);
  std::vector<Complex> coeffs;
  coeffs.reserve(by_t2_.size());
  for (const auto& row : by_t2_) {
    Complex acc = row.back();
    for (std::size_t i = row.size() - 1; i-- > 0;) acc = acc * a + row[i];
    coeffs.push_back(acc);
  }
  return polynomial_roots(coeffs, g);
}

double FiberResidual::residual(const Complex& t1, const Complex& t2, double good_enough) const {
  const Precision g = eval_.precision();
  Complex a = t1.with_precision(g);
  Complex b = t2.with_precision(g);
  Real scale = max(Real(1L, g), b.abs());
  if (degree_ == 0) {
    return eval_.value(a, b).is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto vg = eval_.value_and_gradient(a, b);
  if (vg.value.is_zero()) return 0.0;
  if (!vg.d2.is_zero()) {
    Real bound = vg.value.abs() * static_cast<long>(degree_) / vg.d2.abs() / scale;
    if (bound <= std::max(good_enough, std::ldexp(1.0, -static_cast<int>(prec_ / 2)))) return bound.to_double();
  }
  std::vector<Complex> roots = fiber_roots(t1);
  if (roots.empty()) return std::numeric_limits<double>::infinity();
  Real best = distance(roots.front(), b);
  for (const auto& r : roots) best = min(best, distance(r, b));
  return to_double_clamped(best / scale);
}

namespace {

struct ResidualKey {
  long level;
  Precision prec;
  bool operator==(const ResidualKey&) const = default;
};

struct ResidualKeyHash {
  std::size_t operator()(const ResidualKey& k) const {
    return std::hash<long>()(k.level) * 31 + std::hash<long>()(static_cast<long>(k.prec));
  }
};

std::shared_ptr<const FiberResidual> zn_membership(long level, Precision prec, const ModpolyOptions& options = {}) {
  static std::mutex mutex;
  static std::unordered_map<ResidualKey, std::shared_ptr<const FiberResidual>, ResidualKeyHash> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({level, prec});
    if (it != cache.end()) return it->second;
  }
  auto phi = modpoly(level, options);
  auto made = std::make_shared<const FiberResidual>(phi->poly, prec);
  std::lock_guard lock(mutex);
  return cache.try_emplace({level, prec}, made).first->second;
}

}  // namespace

double zn_residual(long level, const Real& x, const Real& y, Precision prec, double good_enough,
                   const ModpolyOptions& options) {
  if (level < 1) throw PreconditionError("level must be positive");
  auto m = zn_membership(level, prec, options);
  Complex t(x.with_precision(prec), y.with_precision(prec));
  return m->residual(t, t.conj(), good_enough);
}

std::string to_string(BranchEnd end) {
  switch (end) {
    case BranchEnd::BoxExit: return "box_exit";
    case BranchEnd::Closed: return "closed";
    case BranchEnd::Singular: return "singular";
    case BranchEnd::Stall: return "stall";
    case BranchEnd::MaxPoints: return "max_points";
    case BranchEnd::Escape: return "escape";
  }
  return "unknown";
}

double TracedBranch::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

// ---------------------------------------------------------------------------

namespace {

struct Pt {
  Real x;
  Real y;
};

class SpatialIndex {
 public:
  explicit SpatialIndex(double cell) : cell_(cell) {}

  void insert(double x, double y) { cells_[key(cell_of(x), cell_of(y))].push_back({x, y}); }

  [[nodiscard]] bool near(double x, double y, double radius) const {
    const long cx = cell_of(x);
    const long cy = cell_of(y);
    const long reach = static_cast<long>(std::ceil(radius / cell_));
    for (long i = cx - reach; i <= cx + reach; ++i) {
      for (long j = cy - reach; j <= cy + reach; ++j) {
        auto it = cells_.find(key(i, j));
        if (it == cells_.end()) continue;
        for (const auto& [px, py] : it->second) {
          if (std::hypot(px - x, py - y) <= radius) return true;
        }
      }
    }
    return false;
  }

 private:
  [[nodiscard]] long cell_of(double v) const { return static_cast<long>(std::floor(v / cell_)); }
  static long long key(long i, long j) {
    return (static_cast<long long>(i) << 32) ^ static_cast<long long>(j & 0xffffffffL);
  }

  double cell_;
  std::unordered_map<long long, std::vector<std::pair<double, double>>> cells_;
};

/// Local geometry of F = 0: projection, tangents and singular points.
class CurveKernel {
 public:
  CurveKernel(const IntegerBivariatePoly& f, Precision prec)
      : prec_(prec),
        guard_(prec + static_cast<Precision>(coefficient_bits(f)) + 16),
        eval_(f, guard_),
        fx_(f.derivative(0), guard_),
        fy_(f.derivative(1), guard_) {}

  [[nodiscard]] Precision guard() const { return guard_; }

  [[nodiscard]] int sign_at(const Real& x, const Real& y) const {
    return eval_.value(x.with_precision(guard_), y.with_precision(guard_)).sign();
  }

  /// Min-norm Newton along the gradient. Rejects moves longer than max_move.
  bool correct(Pt& p, double max_move) const {
    const Real x0 = p.x;
    const Real y0 = p.y;
    const Real conv = two_pow(-static_cast<long>(prec_) + 8, 64);
    for (int it = 0; it < 40; ++it) {
      auto vg = eval_.value_and_gradient(p.x.with_precision(guard_), p.y.with_precision(guard_));
      if (vg.value.is_zero()) return true;
      Real g2 = vg.d1 * vg.d1 + vg.d2 * vg.d2;
      if (g2.is_zero()) return false;
      Real f = vg.value / g2;
      Real dx = f * vg.d1;
      Real dy = f * vg.d2;
      p.x = (p.x - dx).with_precision(prec_);
      p.y = (p.y - dy).with_precision(prec_);
      if (!p.x.is_finite() || !p.y.is_finite()) return false;
      if (hypot(p.x - x0, p.y - y0) > max_move) return false;
      if (abs(dx) + abs(dy) <= conv * (abs(p.x) + abs(p.y) + 1L)) return true;
    }
    return false;
  }

  /// |grad F| relative to the size of the terms summed to form it; zero at
  /// singular points.
  [[nodiscard]] double gradient_ratio(const Pt& p) const {
    Real gx = p.x.with_precision(guard_);
    Real gy = p.y.with_precision(guard_);
    auto vg = eval_.value_and_gradient(gx, gy);
    Real scale = hypot(fx_.abs_sum(abs(gx), abs(gy)), fy_.abs_sum(abs(gx), abs(gy)));
    if (scale.is_zero()) return 0.0;
    return (hypot(vg.d1, vg.d2) / scale).to_double();
  }

  [[nodiscard]] bool is_singular(const Pt& p) const {
    return gradient_ratio(p) <= std::ldexp(1.0, -static_cast<int>(prec_ / 2));
  }

  /// Unit tangent (-F_y, F_x), or nullopt at a numerically singular point.
  [[nodiscard]] std::optional<std::pair<double, double>> tangent(const Pt& p) const {
    if (is_singular(p)) return std::nullopt;
    auto vg = eval_.value_and_gradient(p.x.with_precision(guard_), p.y.with_precision(guard_));
    Real gn = hypot(vg.d1, vg.d2);
    return std::pair{-(vg.d2 / gn).to_double(), (vg.d1 / gn).to_double()};
  }

  /// Newton on grad F = 0 from p; returns a singular point of F = 0 within max_move.
  [[nodiscard]] std::optional<Pt> singular_point_near(const Pt& start, double max_move) const {
    Pt p = start;
    const Real conv = two_pow(-static_cast<long>(prec_) + 8, 64);
    for (int it = 0; it < 60; ++it) {
      Real gx = p.x.with_precision(guard_);
      Real gy = p.y.with_precision(guard_);
      auto hx = fx_.value_and_gradient(gx, gy);
      auto hy = fy_.value_and_gradient(gx, gy);
      Real det = hx.d1 * hy.d2 - hx.d2 * hy.d1;
      if (det.is_zero()) return std::nullopt;
      Real dx = (hx.value * hy.d2 - hy.value * hx.d2) / det;
      Real dy = (hy.value * hx.d1 - hx.value * hy.d1) / det;
      p.x = (p.x - dx).with_precision(prec_);
      p.y = (p.y - dy).with_precision(prec_);
      if (!p.x.is_finite() || !p.y.is_finite()) return std::nullopt;
      if (hypot(p.x - start.x, p.y - start.y) > max_move) return std::nullopt;
      if (abs(dx) + abs(dy) <= conv * (abs(p.x) + abs(p.y) + 1L)) break;
    }
    auto v = eval_.value(p.x.with_precision(guard_), p.y.with_precision(guard_));
    Real scale = eval_.abs_sum(abs(p.x.with_precision(guard_)), abs(p.y.with_precision(guard_)));
    if (abs(v) > scale * two_pow(-static_cast<long>(prec_) / 2, 64)) return std::nullopt;
    if (!is_singular(p)) return std::nullopt;
    return p;
  }

 private:
  Precision prec_;
  Precision guard_;
  BivariateEvaluator<Real> eval_;
  BivariateEvaluator<Real> fx_;
  BivariateEvaluator<Real> fy_;
};

class ZnTracer {
 public:
  ZnTracer(const RealCurveZN& curve, const TraceOptions& options)
      : curve_(curve),
        opt_(options),
        prec_(options.precision),
        kernel_(curve.equation, options.precision),
        membership_(zn_membership(curve.level, options.precision, options.modpoly)),
        index_(std::max(options.step, 1e-9)) {}

  std::vector<TracedBranch> run() {
    std::vector<TracedBranch> out;
    const int n = opt_.grid;
    const double hx = (opt_.bbox.xmax - opt_.bbox.xmin) / n;
    const double hy = (opt_.bbox.ymax - opt_.bbox.ymin) / n;
    const double radius = 0.75 * opt_.step + std::hypot(hx, hy);
    std::vector<std::vector<int>> sign = sign_grid(n);
    auto node = [&](int k, int l) {
      return std::pair{opt_.bbox.xmin + hx * k, opt_.bbox.ymin + hy * l};
    };
    auto try_seed = [&](std::optional<Pt> seed) {
      if (!seed) return;
      const double sx = seed->x.to_double();
      const double sy = seed->y.to_double();
      if (!opt_.bbox.contains(sx, sy) || index_.near(sx, sy, radius)) return;
      if (auto b = trace_from(*seed)) {
        for (const auto& p : b->points) index_.insert(p[0].to_double(), p[1].to_double());
        out.push_back(std::move(*b));
      }
    };
    for (int l = 0; l <= n; ++l) {
      for (int k = 0; k <= n; ++k) {
        auto [x, y] = node(k, l);
        if (sign[l][k] == 0) {
          if (index_.near(x, y, radius)) continue;
          try_seed(corrected(Pt{Real(x, prec_), Real(y, prec_)}));
          continue;
        }
        if (k < n && sign[l][k] * sign[l][k + 1] < 0) {
          auto [x2, y2] = node(k + 1, l);
          if (!index_.near(0.5 * (x + x2), y, radius)) try_seed(bisect(x, y, x2, y2, sign[l][k]));
        }
        if (l < n && sign[l][k] * sign[l + 1][k] < 0) {
          auto [x2, y2] = node(k, l + 1);
          if (!index_.near(x, 0.5 * (y + y2), radius)) try_seed(bisect(x, y, x2, y2, sign[l][k]));
        }
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<int>> sign_grid(int n) const {
    // Row-wise: collapse y first, then Horner in x.
    const Precision g = kernel_.guard();
    const int dx = std::max(curve_.equation.degree_in(0), 0);
    const int dy = std::max(curve_.equation.degree_in(1), 0);
    std::vector<std::vector<Real>> c(dx + 1, std::vector<Real>(dy + 1, Real(0L, g)));
    for (const auto& [e, v] : curve_.equation.terms()) c[e[0]][e[1]] = Real(v, g);
    std::vector<std::vector<int>> out(n + 1, std::vector<int>(n + 1, 0));
    const double hx = (opt_.bbox.xmax - opt_.bbox.xmin) / n;
    const double hy = (opt_.bbox.ymax - opt_.bbox.ymin) / n;
    std::vector<Real> row(dx + 1, Real(g));
    for (int l = 0; l <= n; ++l) {
      Real y(opt_.bbox.ymin + hy * l, g);
      for (int i = 0; i <= dx; ++i) {
        Real acc = c[i][dy];
        for (int j = dy - 1; j >= 0; --j) acc = acc * y + c[i][j];
        row[i] = acc;
      }
      for (int k = 0; k <= n; ++k) {
        Real x(opt_.bbox.xmin + hx * k, g);
        Real acc = row[dx];
        for (int i = dx - 1; i >= 0; --i) acc = acc * x + row[i];
        out[l][k] = acc.sign();
      }
    }
    return out;
  }

  std::optional<Pt> bisect(double x1, double y1, double x2, double y2, int s1) const {
    Real ax(x1, prec_), ay(y1, prec_), bx(x2, prec_), by(y2, prec_);
    for (int it = 0; it < 48; ++it) {
      Real mx = (ax + bx) / 2L;
      Real my = (ay + by) / 2L;
      int s = kernel_.sign_at(mx, my);
      if (s == 0) return corrected(Pt{mx, my});
      if (s == s1) {
        ax = mx;
        ay = my;
      } else {
        bx = mx;
        by = my;
      }
    }
    return corrected(Pt{(ax + bx) / 2L, (ay + by) / 2L});
  }

  std::optional<Pt> corrected(Pt p) const {
    return kernel_.correct(p, opt_.step) ? std::optional<Pt>(p) : std::nullopt;
  }

  double residual(const Pt& p) const {
    Complex t(p.x, p.y);
    return membership_->residual(t, t.conj());
  }

  struct HalfRun {
    std::vector<Pt> points;
    std::vector<double> residuals;
    BranchEnd end = BranchEnd::BoxExit;
    bool closed = false;
  };

  HalfRun walk(const Pt& seed, std::pair<double, double> t, std::size_t budget, bool detect_closure) const {
    HalfRun run;
    Pt p = seed;
    double h = opt_.step;
    const double h_min = opt_.step * std::ldexp(1.0, -24);
    double arclength = 0.0;
    double ratio_p = kernel_.gradient_ratio(p);
    const double sx = seed.x.to_double();
    const double sy = seed.y.to_double();
    while (true) {
      if (run.points.size() >= budget) {
        run.end = BranchEnd::MaxPoints;
        return run;
      }
      if (h < h_min) {
        run.end = BranchEnd::Stall;
        return run;
      }
      Pt q{p.x + Real(h * t.first, prec_), p.y + Real(h * t.second, prec_)};
      bool ok = kernel_.correct(q, 0.5 * h);
      std::optional<std::pair<double, double>> tq;
      double r = 0.0;
      if (ok) {
        double mx = (q.x - p.x).to_double();
        double my = (q.y - p.y).to_double();
        ok = mx * t.first + my * t.second > 0.0 && std::hypot(mx, my) <= 2.0 * h;
      }
      if (ok) {
        if (!opt_.bbox.contains(q.x.to_double(), q.y.to_double())) {
          run.end = BranchEnd::BoxExit;
          return run;
        }
        tq = kernel_.tangent(q);
        if (!tq) {
          if (residual(q) <= opt_.tol) {
            run.points.push_back(q);
            run.residuals.push_back(residual(q));
          }
          run.end = BranchEnd::Singular;
          return run;
        }
        if (tq->first * t.first + tq->second * t.second < 0) {
          tq->first = -tq->first;
          tq->second = -tq->second;
        }
        ok = tq->first * t.first + tq->second * t.second >= 0.9;
        if (ok) {
          r = residual(q);
          ok = r <= opt_.tol;
        }
      }
      if (!ok) {
        h *= 0.5;
        continue;
      }
      double step_len = std::hypot((q.x - p.x).to_double(), (q.y - p.y).to_double());
      arclength += step_len;
      run.points.push_back(q);
      run.residuals.push_back(r);
      // The gradient falls off linearly towards a node; look for one when
      // the extrapolated zero is within reach.
      double ratio_q = kernel_.gradient_ratio(q);
      if (ratio_q < ratio_p && ratio_q * step_len < 1.5 * opt_.step * (ratio_p - ratio_q)) {
        if (auto s = kernel_.singular_point_near(q, 2.0 * opt_.step)) {
          double rs = residual(*s);
          double ax = (s->x - q.x).to_double();
          double ay = (s->y - q.y).to_double();
          if (rs <= opt_.tol && ax * tq->first + ay * tq->second > 0.0 &&
              opt_.bbox.contains(s->x.to_double(), s->y.to_double())) {
            run.points.push_back(*s);
            run.residuals.push_back(rs);
            run.end = BranchEnd::Singular;
            return run;
          }
        }
      }
      ratio_p = ratio_q;
      p = q;
      t = *tq;
      h = std::min(opt_.step, 2.0 * h);
      if (detect_closure && arclength > 3.0 * opt_.step &&
          std::hypot(p.x.to_double() - sx, p.y.to_double() - sy) <= opt_.step) {
        run.end = BranchEnd::Closed;
        run.closed = true;
        return run;
      }
    }
  }

  std::optional<TracedBranch> trace_from(const Pt& seed) const {
    auto t = kernel_.tangent(seed);
    if (!t) return std::nullopt;
    double r0 = residual(seed);
    if (r0 > opt_.tol) return std::nullopt;
    HalfRun fwd = walk(seed, *t, opt_.max_points, true);
    HalfRun bwd;
    bwd.end = fwd.closed ? BranchEnd::Closed : BranchEnd::MaxPoints;
    if (!fwd.closed && fwd.points.size() + 1 < opt_.max_points) {
      bwd = walk(seed, {-t->first, -t->second}, opt_.max_points - fwd.points.size() - 1, false);
    }
    TracedBranch b;
    b.dimension = 2;
    b.step = opt_.step;
    b.closed = fwd.closed;
    b.start_end = fwd.closed ? BranchEnd::Closed : bwd.end;
    b.finish_end = fwd.end;
    auto push = [&](const Pt& p, double r) {
      b.points.push_back({p.x, p.y});
      b.residuals.push_back(r);
    };
    for (std::size_t k = bwd.points.size(); k-- > 0;) push(bwd.points[k], bwd.residuals[k]);
    push(seed, r0);
    for (std::size_t k = 0; k < fwd.points.size(); ++k) push(fwd.points[k], fwd.residuals[k]);
    b.well_conditioned_steps = b.points.size() - 1;
    return b;
  }

  const RealCurveZN& curve_;
  TraceOptions opt_;
  Precision prec_;
  CurveKernel kernel_;
  std::shared_ptr<const FiberResidual> membership_;
  SpatialIndex index_;
};

}  // namespace

std::vector<TracedBranch> trace_zn(const RealCurveZN& curve, const TraceOptions& options) {
  if (!options.bbox.nondegenerate()) throw PreconditionError("bounding box is degenerate");
  if (!(options.step > 0.0)) throw PreconditionError("step must be positive");
  if (!(options.tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (options.grid < 2) throw PreconditionError("grid must have at least two cells");
  if (curve.equation.is_zero()) throw PreconditionError("curve equation is zero");
  ZnTracer tracer(curve, options);
  return tracer.run();
}

std::optional<CurveProjection> project_to_branch(const RealCurveZN& curve, const TracedBranch& branch,
                                                 const Real& x, const Real& y) {
  if (branch.points.empty() || branch.dimension != 2) return std::nullopt;
  const Precision prec = branch.points.front()[0].precision();
  const double qx = x.to_double();
  const double qy = y.to_double();
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < branch.points.size(); ++k) {
    double d = std::hypot(branch.points[k][0].to_double() - qx, branch.points[k][1].to_double() - qy);
    if (d < best) {
      best = d;
      nearest = k;
    }
  }
  CurveKernel kernel(curve.equation, prec);
  Pt p{branch.points[nearest][0], branch.points[nearest][1]};
  const Real qxr = x.with_precision(prec);
  const Real qyr = y.with_precision(prec);
  const Real conv = two_pow(-static_cast<long>(prec) * 3 / 4, 64);
  const double reach = 4.0 * branch.step;
  if (best > reach) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    if (!kernel.correct(p, reach)) return std::nullopt;
    auto t = kernel.tangent(p);
    if (!t) break;
    Real slide = (qxr - p.x) * Real(t->first, prec) + (qyr - p.y) * Real(t->second, prec);
    if (abs(slide) <= conv * (abs(p.x) + abs(p.y) + 1L)) break;
    p.x = p.x + slide * Real(t->first, prec);
    p.y = p.y + slide * Real(t->second, prec);
  }
  if (std::hypot(p.x.to_double() - branch.points[nearest][0].to_double(),
                 p.y.to_double() - branch.points[nearest][1].to_double()) > reach) {
    return std::nullopt;
  }
  CurveProjection out;
  out.distance = hypot(p.x - qxr, p.y - qyr);
  out.foot = {p.x, p.y};
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<RationalMatrix2> short_words() {
  const RationalMatrix2 s(0, -1, 1, 0);
  const RationalMatrix2 t(1, 1, 0, 1);
  const RationalMatrix2 ti(1, -1, 0, 1);
  std::vector<RationalMatrix2> out{RationalMatrix2::identity()};
  std::vector<RationalMatrix2> frontier = out;
  for (int len = 0; len < 3; ++len) {
    std::vector<RationalMatrix2> next;
    for (const auto& w : frontier) {
      for (const auto* g : {&s, &t, &ti}) {
        RationalMatrix2 m = *g * w;
        RationalMatrix2 neg = m.scaled(mpq_class(-1));
        bool seen = false;
        for (const auto& o : out) seen = seen || o == m || o == neg;
        if (!seen) {
          out.push_back(m);
          next.push_back(m);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

GeodesicCertificate certify_special_geodesic_point(long level, const Real& x, const Real& y, double tol) {
  if (level < 1) throw PreconditionError("level must be positive");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const Precision prec = std::max<Precision>(kDefaultPrecision, std::min(x.precision(), y.precision()));
  const double on_curve = zn_residual(level, x, y, prec);
  if (!(on_curve <= tol)) throw PreconditionError("point is not on Z_N within tolerance");

  Complex t(x.with_precision(prec), y.with_precision(prec));
  UpperHalfPoint z = j_inverse(t);
  const Complex target = z.z().conj();
  FundamentalDomainReduction red_u = reduce_to_fundamental_domain(UpperHalfPoint(-target));
  const RationalMatrix2 gamma2_inv = red_u.gamma.inverse();
  const RationalMatrix2 flip(-1, 0, 0, 1);
  static const std::vector<RationalMatrix2> words = short_words();

  JWithDerivative jd = j_eval_with_derivative(z);
  const Real djn = jd.dj.abs();
  // Sensitivity of |A z - conj z| to the position error of z, which is the
  // relative error of t divided by |j'(z)|.
  auto conditioning = [&](const RationalMatrix2& a) {
    if (djn.is_zero()) return 1e300;
    Complex denom = z.z() * Real(a.c(), prec) + Real(a.d(), prec);
    Real dmobius = abs(Real(a.det(), prec)) / denom.norm();
    Real c = max(Real(1L, prec), t.abs()) * (dmobius + 1L) / djn;
    return std::max(1.0, std::min(1e300, c.to_double()));
  };

  // Among the matching candidates a trace-zero A wins, then the smaller residual.
  std::optional<GeodesicCertificate> best;
  for (const IsogenyTriple& tri : cyclic_isogeny_matrices(level)) {
    RationalMatrix2 iso(tri.a, tri.b, 0, tri.d);
    UpperHalfPoint w(mobius_apply(iso, z.z()));
    FundamentalDomainReduction red_w = reduce_to_fundamental_domain(w);
    for (const auto& g : words) {
      RationalMatrix2 gamma = gamma2_inv * g * red_w.gamma;
      RationalMatrix2 a = flip * gamma * iso;
      if (a.det() != -level || !a.is_integral()) continue;
      Complex az(prec);
      try {
        az = mobius_apply(a, z.z());
      } catch (const PoleError&) {
        continue;
      }
      Real res = distance(az, target);
      const double cond = conditioning(a);
      const double bound = std::min(1e300, tol * cond);
      if (!(res <= bound)) continue;
      const bool tz = a.trace() == 0;
      if (best && (best->trace_zero && !tz)) continue;
      if (best && best->trace_zero == tz && !(res < best->residual)) continue;
      GeodesicCertificate c;
      c.level = level;
      c.matrix = a;
      c.z = z;
      c.isogeny = tri;
      c.gamma = gamma;
      c.residual = res;
      c.conditioning = cond;
      c.bound = bound;
      c.trace_zero = tz;
      best = std::move(c);
    }
  }
  if (!best) throw CertificationFailed("no isogeny and SL2(Z) combination maps z to its conjugate");
  if (best->trace_zero) best->geodesic = GeodesicMatrix(best->matrix);
  return *best;
}

}  // namespace modgeo
