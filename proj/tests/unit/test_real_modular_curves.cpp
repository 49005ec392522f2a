#include <doctest.h>

#include "modgeo/errors.hpp"
#include "modgeo/geodesics.hpp"
#include "modgeo/real_modular_curves.hpp"

#include <cmath>

using namespace modgeo;

namespace {

constexpr Precision kPrec = 192;

// Phi(x + iy, x - iy) by direct substitution into Gaussian polynomials.
GaussianBivariatePoly substitute(const IntegerBivariatePoly& phi) {
  GaussianBivariatePoly t1, t2, one;
  t1.add_term({1, 0}, GaussianRational(1));
  t1.add_term({0, 1}, GaussianRational(0, 1));
  t2.add_term({1, 0}, GaussianRational(1));
  t2.add_term({0, 1}, GaussianRational(0, -1));
  one.add_term({0, 0}, GaussianRational(1));
  const int d1 = phi.degree_in(0), d2 = phi.degree_in(1);
  std::vector<GaussianBivariatePoly> p1{one}, p2{one};
  for (int k = 0; k < d1; ++k) p1.push_back(p1.back() * t1);
  for (int k = 0; k < d2; ++k) p2.push_back(p2.back() * t2);
  GaussianBivariatePoly out;
  for (const auto& [e, c] : phi.terms()) out = out + (p1[e[0]] * p2[e[1]]).scaled(GaussianRational(mpq_class(c)));
  return out;
}

IntegerBivariatePoly explicit_f2() {
  IntegerBivariatePoly f;
  f.add_term({0, 0}, mpz_class("-157464000000000"));
  f.add_term({0, 2}, mpz_class(41097375));
  f.add_term({0, 4}, mpz_class(-1));
  f.add_term({1, 0}, mpz_class(17496000000L));
  f.add_term({1, 2}, mpz_class(2970));
  f.add_term({2, 0}, mpz_class(40449375));
  f.add_term({2, 2}, mpz_class(-2));
  f.add_term({3, 0}, mpz_class(2978));
  f.add_term({4, 0}, mpz_class(-1));
  return f;
}

double relative_f(const IntegerBivariatePoly& f, const std::vector<Real>& p) {
  BivariateEvaluator<Real> ev(f, kPrec + 128);
  Real x = p[0].with_precision(kPrec + 128), y = p[1].with_precision(kPrec + 128);
  return (abs(ev.value(x, y)) / ev.abs_sum(abs(x), abs(y))).to_double();
}

}  // namespace

TEST_CASE("Z_1 is the x-axis") {
  RealCurveZN z = build_zn(1);
  IntegerBivariatePoly y;
  y.add_term({0, 1}, mpz_class(1));
  CHECK(z.equation == y);
}

TEST_CASE("conjugate substitution matches direct expansion") {
  for (long n = 2; n <= 5; ++n) {
    const auto& phi = modpoly(n)->poly;
    ConjugateExpansion e = expand_conjugate_substitution(phi);
    GaussianBivariatePoly direct = substitute(phi);
    CHECK(e.im.is_zero());
    for (const auto& [ex, c] : direct.terms()) {
      CHECK(c.im == 0);
      CHECK(mpq_class(e.re.coefficient(ex)) == c.re);
    }
    CHECK(e.re.size() == direct.size());
    CHECK(build_zn(n).equation == e.re);
  }
}

TEST_CASE("Z_2 equation") {
  RealCurveZN z = build_zn(2);
  const auto& f = z.equation;
  CHECK(f == explicit_f2());
  CHECK(f.evaluate<mpz_class>({mpz_class(8000), mpz_class(0)}) == 0);
  CHECK(f.evaluate<mpz_class>({mpz_class(1728), mpz_class(0)}) == 0);
  CHECK(f.evaluate<mpz_class>({mpz_class(-3375), mpz_class(0)}) == 0);
  CHECK(f.evaluate<mpz_class>({mpz_class(0), mpz_class(0)}) == modpoly(2)->poly.coefficient({0, 0}));
  CHECK(f.evaluate<mpz_class>({mpz_class(0), mpz_class(5000)}) != 0);
}

TEST_CASE("Z_N is symmetric under y -> -y") {
  for (long n = 2; n <= 6; ++n) {
    RealCurveZN z = build_zn(n);
    for (const auto& [e, c] : z.equation.terms()) CHECK(e[1] % 2 == 0);
  }
}

TEST_CASE("zn residual") {
  CHECK(zn_residual(2, Real(8000L, kPrec), Real(0L, kPrec)) <= 1e-40);
  CHECK(zn_residual(2, Real(0L, kPrec), Real(5000L, kPrec)) > 1e-3);
  CHECK(zn_residual(1, Real(3L, kPrec), Real(0L, kPrec)) == 0.0);
  CHECK(zn_residual(1, Real(3L, kPrec), Real(2L, kPrec)) > 0.1);
}

TEST_CASE("fiber residual is a root distance") {
  IntegerBivariatePoly p;  // T2^2 - T1
  p.add_term({0, 2}, mpz_class(1));
  p.add_term({1, 0}, mpz_class(-1));
  FiberResidual fr(p, kPrec);
  CHECK(fr.fiber_degree() == 2);
  auto roots = fr.fiber_roots(Complex(4.0, 0.0, kPrec));
  REQUIRE(roots.size() == 2);
  CHECK(fr.residual(Complex(4.0, 0.0, kPrec), Complex(2.0, 0.0, kPrec)) <= 1e-50);
  // nearest root of T2^2 = 4 to 2.5 is 2, distance 0.5, relative to 2.5
  CHECK(fr.residual(Complex(4.0, 0.0, kPrec), Complex(2.5, 0.0, kPrec)) == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("trace Z_1") {
  TraceOptions o;
  o.bbox = {-10, 10, -10, 10};
  o.step = 0.1;
  auto branches = trace_zn(build_zn(1), o);
  REQUIRE(branches.size() == 1);
  for (const auto& p : branches[0].points) CHECK(p[1].is_zero());
  CHECK(branches[0].size() > 150);
}

TEST_CASE("trace Z_2 passes through (8000, 0)") {
  TraceOptions o;
  o.bbox = {-2000, 10000, -5000, 5000};
  o.step = 40;
  RealCurveZN z = build_zn(2);
  auto branches = trace_zn(z, o);
  REQUIRE(!branches.empty());
  bool hit = false;
  for (const auto& b : branches) {
    CHECK(b.max_residual() <= o.tol);
    for (std::size_t k = 0; k < b.size(); ++k) {
      CHECK(relative_f(z.equation, b.points[k]) <= o.tol);
      if (k > 0) {
        double d = std::hypot((b.points[k][0] - b.points[k - 1][0]).to_double(),
                              (b.points[k][1] - b.points[k - 1][1]).to_double());
        CHECK(d <= 2 * o.step);
      }
    }
    auto proj = project_to_branch(z, b, Real(8000L, kPrec), Real(0L, kPrec));
    if (proj && proj->distance <= o.tol) hit = true;
  }
  CHECK(hit);
}

TEST_CASE("Z_2 loops stop at the node") {
  TraceOptions o;
  o.bbox = {-6000, 12000, -9000, 9000};
  o.step = 40;
  auto branches = trace_zn(build_zn(2), o);
  int singular = 0;
  for (const auto& b : branches) {
    if (b.start_end == BranchEnd::Singular || b.finish_end == BranchEnd::Singular) ++singular;
  }
  CHECK(singular >= 1);
}

TEST_CASE("trace options are validated") {
  TraceOptions o;
  o.bbox = {1, 1, 0, 1};
  CHECK_THROWS_AS(trace_zn(build_zn(1), o), PreconditionError);
  o.bbox = {-1, 1, -1, 1};
  o.step = 0;
  CHECK_THROWS_AS(trace_zn(build_zn(1), o), PreconditionError);
}

TEST_CASE("certify (8000, 0) on Z_2") {
  auto c = certify_special_geodesic_point(2, Real(8000L, kPrec), Real(0L, kPrec), 1e-10);
  CHECK(c.matrix.det() == -2);
  CHECK(c.matrix.is_integral());
  CHECK(c.trace_zero);
  REQUIRE(c.geodesic.has_value());
  CHECK(c.geodesic->canonical() == GeodesicMatrix(RationalMatrix2(0, 2, 1, 0)).canonical());
  UpperHalfPoint root2(Complex(Real(0L, kPrec), sqrt(Real(2L, kPrec))));
  CHECK(distance(c.z.z(), root2.z()) <= 1e-40);
  Complex az = mobius_apply(c.matrix, c.z.z());
  CHECK(distance(az, c.z.z().conj()) <= Real(c.bound, 64));
  CHECK(contains(GeodesicMatrix(RationalMatrix2(0, 2, 1, 0)), c.z, Real(1e-10, kPrec)));
}

TEST_CASE("certify (1728, 0) on Z_1") {
  auto c = certify_special_geodesic_point(1, Real(1728L, kPrec), Real(0L, kPrec), 1e-10);
  CHECK(c.matrix.det() == -1);
  CHECK(distance(c.z.z(), Complex(0.0, 1.0, kPrec)) <= 1e-40);
  CHECK(distance(mobius_apply(c.matrix, c.z.z()), c.z.z().conj()) <= Real(c.bound, 64));
}

TEST_CASE("certification refuses points off the curve") {
  CHECK_THROWS_AS(certify_special_geodesic_point(2, Real(0L, kPrec), Real(5000L, kPrec), 1e-10), PreconditionError);
}
