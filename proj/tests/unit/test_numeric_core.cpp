#include <doctest.h>

#include "modgeo/errors.hpp"
#include "modgeo/modular_polynomials.hpp"
#include "modgeo/poly.hpp"
#include "modgeo/rational_matrix.hpp"
#include "modgeo/roots.hpp"
#include "modgeo/serialization.hpp"

#include <random>

using namespace modgeo;

namespace {

bool close(const Complex& a, const Complex& b, long log2_tol) {
  return distance(a, b) <= two_pow(log2_tol, 64);
}

IntegerBivariatePoly from_terms(std::initializer_list<std::tuple<int, int, long>> terms) {
  IntegerBivariatePoly p;
  for (auto [i, j, c] : terms) p.add_term({i, j}, mpz_class(c));
  return p;
}

}  // namespace

TEST_CASE("real arithmetic carries the smaller precision") {
  Real a(1.5, 256);
  Real b(2.0, 128);
  CHECK((a + b).precision() == 128);
  CHECK((a * b).precision() == 128);
  CHECK((a / b).precision() == 128);
  CHECK((a - a).is_zero());
  CHECK(Real("1/3", 128).to_double() == doctest::Approx(1.0 / 3.0));
  CHECK(Real("2.5", 64).to_rational() == mpq_class(5, 2));
  CHECK_THROWS_AS(Real("x1", 64), FormatError);
}

TEST_CASE("sqrt and pi at high precision") {
  Real two(2L, 400);
  Real s = sqrt(two);
  CHECK(abs(s * s - two) <= two_pow(-395, 64));
  Real p = pi(400);
  CHECK(abs(sin(p)) <= two_pow(-395, 64));
}

TEST_CASE("rational matrices are exact and in lowest terms") {
  RationalMatrix2 m(mpq_class(2, 4), 1, 3, mpq_class(6, 3));
  CHECK(m.a() == mpq_class(1, 2));
  CHECK(m.d() == 2);
  CHECK(m.det() == mpq_class(1) - 3);
  CHECK(m * m.inverse() == RationalMatrix2::identity());
  CHECK_THROWS_AS(static_cast<void>(RationalMatrix2(1, 2, 2, 4).inverse()), SingularMatrix);
  CHECK(RationalMatrix2(1, 2, 3, 4).is_integral());
  CHECK_FALSE(m.is_integral());
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> u(-9, 9);
  auto q = [&] { return mpq_class(u(rng), 1 + std::abs(u(rng))); };
  for (int k = 0; k < 200; ++k) {
    RationalMatrix2 m(q(), q(), q(), q());
    RationalMatrix2 n(q(), q(), q(), q());
    CHECK((m * n).det() == m.det() * n.det());
  }
}

TEST_CASE("mobius_apply examples") {
  const Precision prec = 192;
  Complex two_i(0.0, 2.0, prec);
  CHECK(close(mobius_apply(RationalMatrix2::identity(), two_i), two_i, -180));
  Complex i(0.0, 1.0, prec);
  CHECK(close(mobius_apply(RationalMatrix2(0, -1, 1, 0), i), i, -180));
  CHECK(close(mobius_apply(RationalMatrix2(1, 1, 0, 1), Complex(0.5, 1.0, prec)), Complex(1.5, 1.0, prec), -180));
  CHECK_THROWS_AS(mobius_apply(RationalMatrix2(1, 0, 1, 0), Complex(0.0, 0.0, prec)), PoleError);
}

TEST_CASE("mobius_apply respects composition") {
  const Precision prec = 192;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> u(-5, 5);
  std::uniform_real_distribution<double> re(-1, 1), im(0.5, 2);
  int checked = 0;
  while (checked < 100) {
    RationalMatrix2 m(u(rng), u(rng), u(rng), u(rng));
    RationalMatrix2 n(u(rng), u(rng), u(rng), u(rng));
    if (m.det() <= 0 || n.det() <= 0) continue;
    Complex z(re(rng), im(rng), prec);
    Complex lhs = mobius_apply(m * n, z);
    Complex rhs = mobius_apply(m, mobius_apply(n, z));
    CHECK(distance(lhs, rhs) <= two_pow(-prec + 8, 64) * max(Real(1L, 64), lhs.abs()));
    ++checked;
  }
}

TEST_CASE("sparse polynomials never store zero coefficients") {
  IntegerBivariatePoly p = from_terms({{1, 0, 3}, {0, 1, -2}});
  p.add_term({1, 0}, mpz_class(-3));
  CHECK(p.size() == 1);
  CHECK(p.coefficient({1, 0}) == 0);
  CHECK((p - p).is_zero());
  CHECK(p.depends_on(1));
  CHECK_FALSE(p.depends_on(0));
}

TEST_CASE("polynomial evaluation examples") {
  const Precision prec = 192;
  IntegerBivariatePoly diag = from_terms({{1, 0, 1}, {0, 1, -1}});
  CHECK(evaluate(diag, Complex(5.0, 0.0, prec), Complex(5.0, 0.0, prec)).is_zero());
  IntegerBivariatePoly prod = from_terms({{1, 1, 1}});
  CHECK(close(evaluate(prod, Complex(1.0, 1.0, prec), Complex(1.0, -1.0, prec)), Complex(2.0, 0.0, prec), -180));

  // 1728 and 287496 are 2-isogenous j-values.
  const auto& phi2 = modpoly(2)->poly;
  Complex v = evaluate(phi2, Complex(1728.0, 0.0, prec), Complex(287496.0, 0.0, prec));
  CHECK(v.abs() <= two_pow(-prec + 40, 64));
  CHECK(phi2.evaluate<mpz_class>({mpz_class(1728), mpz_class(287496)}) == 0);
}

TEST_CASE("real coefficients give conjugate values at conjugate arguments") {
  const Precision prec = 192;
  const auto& phi3 = modpoly(3)->poly;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 20; ++k) {
    Complex t1(u(rng), u(rng), prec), t2(u(rng), u(rng), prec);
    Complex a = evaluate(phi3, t1, t2);
    Complex b = evaluate(phi3, t1.conj(), t2.conj());
    CHECK(distance(a, b.conj()) <= two_pow(-prec + 8, 64) * max(Real(1L, 64), a.abs()));
  }
}

TEST_CASE("gaussian and quadruple evaluation agree with exact arithmetic") {
  GaussianBivariatePoly p;
  p.add_term({2, 1}, GaussianRational(mpq_class(1, 3), 2));
  p.add_term({0, 0}, GaussianRational(-1, 0));
  GaussianRational t1(mpq_class(1, 2), 1), t2(3, mpq_class(-1, 5));
  GaussianRational exact = p.evaluate<GaussianRational>({t1, t2});
  Complex approx = evaluate(p, Complex(t1, 192), Complex(t2, 192));
  CHECK(distance(approx, Complex(exact, 192)) <= two_pow(-180, 64));
}

TEST_CASE("polynomial roots") {
  const Precision prec = 192;
  // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
  std::vector<Complex> c{Complex(6.0, 0.0, prec), Complex(-7.0, 0.0, prec), Complex(0.0, 0.0, prec),
                         Complex(1.0, 0.0, prec)};
  auto roots = polynomial_roots(c, prec);
  REQUIRE(roots.size() == 3);
  CHECK(close(roots[0], Complex(-3.0, 0.0, prec), -170));
  CHECK(close(roots[1], Complex(1.0, 0.0, prec), -170));
  CHECK(close(roots[2], Complex(2.0, 0.0, prec), -170));

  // x^2 + 1 and a trailing zero leading coefficient
  auto r2 = polynomial_roots({Complex(1.0, 0.0, prec), Complex(0.0, 0.0, prec), Complex(1.0, 0.0, prec),
                              Complex(0.0, 0.0, prec)},
                             prec);
  REQUIRE(r2.size() == 2);
  for (const auto& r : r2) CHECK(horner_with_derivative({Complex(1.0, 0.0, prec), Complex(0.0, 0.0, prec),
                                                         Complex(1.0, 0.0, prec)},
                                                        r)
                                     .first.abs() <= two_pow(-170, 64));
}

TEST_CASE("exact rational parsing and printing") {
  CHECK(parse_exact_rational("123") == 123);
  CHECK(parse_exact_rational("-7/3") == mpq_class(-7, 3));
  CHECK(parse_exact_rational("3.25") == mpq_class(13, 4));
  CHECK(parse_exact_rational("1.5e-3") == mpq_class(3, 2000));
  CHECK_THROWS_AS(parse_exact_rational("abc"), FormatError);
  CHECK(rational_to_string(mpq_class(-7, 3)) == "-7/3");
  CHECK(rational_to_string(mpq_class(10)) == "10");
}

TEST_CASE("polynomial JSON round trips") {
  IntegerBivariatePoly p = from_terms({{3, 0, 1}, {0, 3, 1}, {1, 1, -162000}});
  Json j = to_json(p);
  CHECK(j["degree"] == 3);
  CHECK(integer_poly_from_json(j) == p);

  GaussianBivariatePoly g;
  g.add_term({1, 2}, GaussianRational(mpq_class(1, 2), -3));
  CHECK(gaussian_poly_from_json(to_json(g)) == g);
  CHECK(gaussian_poly_from_json(j) == to_gaussian(p));

  RealQuadruplePoly q;
  q.add_term({1, 0, 0, 2}, mpq_class(-5, 7));
  CHECK(real_quadruple_from_json(to_json(q)) == q);
  CHECK_THROWS_AS(integer_poly_from_json(Json::object()), FormatError);
}
