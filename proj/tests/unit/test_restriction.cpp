#include <doctest.h>

#include "modgeo/atypical.hpp"
#include "modgeo/errors.hpp"
#include "modgeo/modular_polynomials.hpp"
#include "modgeo/restriction.hpp"

#include <random>

using namespace modgeo;

namespace {

constexpr Precision kPrec = 192;

RealQuadruplePoly quad(std::initializer_list<std::pair<RealQuadruplePoly::Exponent, long>> terms) {
  RealQuadruplePoly p;
  for (const auto& [e, c] : terms) p.add_term(e, mpq_class(c));
  return p;
}

mpq_class q(long n, long d) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

ComplexPlaneCurve curve(const char* text) { return ComplexPlaneCurve(parse_curve_expression(text)); }

}  // namespace

TEST_CASE("expression parser") {
  GaussianBivariatePoly p = parse_curve_expression("T1*T2 - 10^6");
  CHECK(p.coefficient({1, 1}) == GaussianRational(1));
  CHECK(p.coefficient({0, 0}) == GaussianRational(-1000000));
  GaussianBivariatePoly q = parse_curve_expression("(1+2i)T1^2 - 3/4 Y + 0.5");
  CHECK(q.coefficient({2, 0}) == GaussianRational(1, 2));
  CHECK(q.coefficient({0, 1}) == GaussianRational(mpq_class(-3, 4)));
  CHECK(q.coefficient({0, 0}) == GaussianRational(mpq_class(1, 2)));
  GaussianBivariatePoly l = parse_curve_expression("T2 - pi*T1", 64);
  CHECK(l.coefficient({1, 0}).re.get_d() == doctest::Approx(-3.14159265358979));
  CHECK_THROWS_AS(parse_curve_expression("T1 + "), FormatError);
  CHECK_THROWS_AS(parse_curve_expression("T3"), FormatError);
  CHECK_THROWS_AS(parse_curve_expression("(T1"), FormatError);
}

TEST_CASE("curves") {
  CHECK_THROWS_AS(ComplexPlaneCurve(GaussianBivariatePoly{}), PreconditionError);
  CHECK(curve("T2 - 5").is_horizontal());
  CHECK(curve("T1^2 + 1").is_vertical());
  CHECK_FALSE(curve("T1 - T2").is_horizontal());
  CHECK_FALSE(curve("T1 - T2").is_vertical());
}

TEST_CASE("Weil restriction of linear and product curves") {
  WeilRestriction d = weil_restrict(curve("T1 - T2"));
  CHECK(d.re_part == quad({{{1, 0, 0, 0}, 1}, {{0, 0, 1, 0}, -1}}));
  CHECK(d.im_part == quad({{{0, 1, 0, 0}, 1}, {{0, 0, 0, 1}, -1}}));
  WeilRestriction p = weil_restrict(curve("T1*T2"));
  CHECK(p.re_part == quad({{{1, 0, 1, 0}, 1}, {{0, 1, 0, 1}, -1}}));
  CHECK(p.im_part == quad({{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, 1}}));
}

TEST_CASE("Weil restriction of Phi_2 at an isogenous pair") {
  WeilRestriction w = weil_restrict(ComplexPlaneCurve(modpoly(2)->poly));
  std::array<mpq_class, 4> u{1728, 0, 287496, 0};
  CHECK(w.re_part.evaluate<mpq_class>(u) == 0);
  CHECK(w.im_part.evaluate<mpq_class>(u) == 0);
}

TEST_CASE("reconstruction identity on random exact data") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> u(-9, 9), deg(0, 3);
  for (int k = 0; k < 5; ++k) {
    GaussianBivariatePoly p;
    for (int t = 0; t < 6; ++t) p.add_term({deg(rng), deg(rng)}, GaussianRational(q(u(rng), 1 + std::abs(u(rng))), u(rng)));
    if (p.is_zero()) continue;
    WeilRestriction w = weil_restrict(ComplexPlaneCurve(p));
    for (int s = 0; s < 100; ++s) {
      std::array<mpq_class, 4> x{q(u(rng), 1 + std::abs(u(rng))), q(u(rng), 3), u(rng), q(u(rng), 7)};
      GaussianRational v = p.evaluate<GaussianRational>({GaussianRational(x[0], x[1]), GaussianRational(x[2], x[3])});
      CHECK(w.re_part.evaluate<mpq_class>(x) == v.re);
      CHECK(w.im_part.evaluate<mpq_class>(x) == v.im);
    }
  }
}

TEST_CASE("f2 map") {
  auto t = f2_map(Real(1L, kPrec), Real(2L, kPrec), Real(3L, kPrec), Real(4L, kPrec));
  CHECK(t[0].re() == Real(1L, kPrec));
  CHECK(t[0].im() == Real(2L, kPrec));
  CHECK(t[1].im() == Real(-2L, kPrec));
  CHECK(t[2].re() == Real(3L, kPrec));
  CHECK(t[3].im() == Real(-4L, kPrec));
  auto r = f2_map(Real(5L, kPrec), Real(0L, kPrec), Real(7L, kPrec), Real(0L, kPrec));
  CHECK(distance(r[0], r[1]).is_zero());
  CHECK(distance(r[2], r[3]).is_zero());
}

TEST_CASE("surface equations") {
  auto [q1, q2] = surface_equations(curve("T1 - T2"));
  GaussianQuadruplePoly w1, w2;
  w1.add_term({1, 0, 0, 0}, GaussianRational(1));
  w1.add_term({0, 0, 1, 0}, GaussianRational(-1));
  w2.add_term({0, 1, 0, 0}, GaussianRational(1));
  w2.add_term({0, 0, 0, 1}, GaussianRational(-1));
  CHECK(q1 == w1);
  CHECK(q2 == w2);

  auto [c1, c2] = surface_equations(curve("(2+i)T1 - T2^2"));
  CHECK(c2.coefficient({0, 1, 0, 0}) == GaussianRational(2, -1));
  CHECK(c1.coefficient({1, 0, 0, 0}) == GaussianRational(2, 1));

  // real coefficients: Q2 is P(T2, T4)
  auto [r1, r2] = surface_equations(ComplexPlaneCurve(modpoly(2)->poly));
  for (const auto& [e, c] : modpoly(2)->poly.terms()) CHECK(r2.coefficient({0, e[0], 0, e[1]}) == GaussianRational(mpq_class(c)));
}

TEST_CASE("sampled real points of C~ for Phi_2 lie on both surface equations") {
  ComplexPlaneCurve c(modpoly(2)->poly);
  auto [q1, q2] = surface_equations(c);
  const Precision guard = kPrec + 64;
  Box4 box;
  box.lo = {-3000, -3000, -1e12, -1e12};
  box.hi = {3000, 3000, 1e12, 1e12};
  auto pts = sample_real_points(c, 20, box, guard);
  REQUIRE(pts.size() == 20);
  BivariateEvaluator<Complex> ev(modpoly(2)->poly, guard + 64);
  for (const auto& u : pts) {
    auto t = f2_map(u[0], u[1], u[2], u[3]);
    Real scale = ev.abs_sum(t[0].abs(), t[2].abs());
    CHECK(evaluate(q1, t).abs() / scale <= two_pow(-kPrec / 2, 64));
    CHECK(evaluate(q2, t).abs() / scale <= two_pow(-kPrec / 2, 64));
  }
}

TEST_CASE("special surface residuals") {
  auto cx = [](double v) { return Complex(v, 0.0, kPrec); };
  auto [a, b] = special_surface_residual(SpecialSurface(1, 1), {cx(5), cx(5), cx(7), cx(7)});
  CHECK(a.is_zero());
  CHECK(b.is_zero());
  auto [c, d] = special_surface_residual(SpecialSurface(2, 1), {cx(1728), cx(287496), cx(7), cx(7)});
  CHECK(c <= 1e-30);
  CHECK(d.is_zero());
  auto [e, f] = special_surface_residual(SpecialSurface(2, 2), {cx(0), cx(0), cx(0), cx(0)});
  CHECK(e == Real(mpq_class("157464000000000"), kPrec));
  CHECK(f == e);
  CHECK_THROWS_AS(SpecialSurface(0, 1), PreconditionError);
}

TEST_CASE("V is not contained in S_{1,1} for T1 + T2 - 1") {
  ComplexPlaneCurve c = curve("T1 + T2 - 1");
  auto pts = sample_real_points(c, 10, Box4{}, kPrec);
  REQUIRE(!pts.empty());
  bool off = false;
  for (const auto& u : pts) {
    auto [r1, r2] = special_surface_residual(SpecialSurface(1, 1), f2_map(u[0], u[1], u[2], u[3]));
    if (r1 > 1e-6 || r2 > 1e-6) off = true;
  }
  CHECK(off);
}
