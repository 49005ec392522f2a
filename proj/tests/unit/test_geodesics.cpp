#include <doctest.h>

#include "modgeo/errors.hpp"
#include "modgeo/geodesics.hpp"

#include <random>

using namespace modgeo;

namespace {

constexpr Precision kPrec = 192;

GeodesicMatrix geo(long a, long b, long c) { return GeodesicMatrix(RationalMatrix2(a, b, c, -a)); }

mpq_class q(long n, long d) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("geodesic matrices need trace 0 and negative determinant") {
  CHECK_THROWS_AS(GeodesicMatrix(RationalMatrix2(1, 0, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(GeodesicMatrix(RationalMatrix2(0, -1, 1, 0)), PreconditionError);
  CHECK(geo(1, 0, 0).det() == -1);
}

TEST_CASE("locus examples") {
  GeodesicLocus v = locus(geo(1, 0, 0));
  CHECK(v.kind == GeodesicLocus::Kind::VerticalLine);
  CHECK(v.x0 == 0);

  GeodesicLocus u = locus(geo(0, 1, 1));
  CHECK(u.kind == GeodesicLocus::Kind::Semicircle);
  CHECK(u.center == 0);
  CHECK(u.radius_sq == 1);
  CHECK(u.has_rational_endpoints());

  GeodesicLocus s = locus(geo(0, 2, 1));
  CHECK(s.center == 0);
  CHECK(s.radius_sq == 2);
  CHECK_FALSE(s.has_rational_endpoints());
}

TEST_CASE("contains examples") {
  const Real tol(1e-40, kPrec);
  CHECK(contains(geo(1, 0, 0), UpperHalfPoint(Complex(0.0, 3.0, kPrec)), tol));
  UpperHalfPoint root2(Complex(Real(0L, kPrec), sqrt(Real(2L, kPrec))));
  CHECK(contains(geo(0, 2, 1), root2, tol));
  // 2 / (i sqrt 2) = -i sqrt 2 exactly
  Complex az = mobius_apply(geo(0, 2, 1).matrix(), root2.z());
  CHECK(distance(az, root2.z().conj()) <= two_pow(-kPrec + 4, 64));
  UpperHalfPoint off(Complex(1.0, 2.0, kPrec));
  CHECK(geodesic_residual(geo(0, 2, 1), off) > 0.1);
  CHECK_FALSE(contains(geo(0, 2, 1), off, Real(0.1, kPrec)));
}

TEST_CASE("conjugate_geodesic examples") {
  GeodesicMatrix a = geo(1, 0, 0);
  CHECK(conjugate_geodesic(RationalMatrix2::identity(), a) == a);
  GeodesicMatrix t = conjugate_geodesic(RationalMatrix2(1, 1, 0, 1), a);
  CHECK(t.matrix() == RationalMatrix2(1, -2, 0, -1));
  CHECK_THROWS_AS(conjugate_geodesic(RationalMatrix2(0, 1, 1, 0), a), PreconditionError);
}

TEST_CASE("geodesic_from_quadratic") {
  GeodesicMatrix a = geodesic_from_quadratic(0, 2);
  CHECK(a.matrix() == RationalMatrix2(0, 2, 1, 0));
  GeodesicLocus l = locus(geodesic_from_quadratic(1, 2));
  CHECK(l.center == 1);
  CHECK(l.radius_sq == 2);
  for (int p = -3; p <= 3; ++p) {
    for (int d : {2, 3, 5, 7}) {
      GeodesicMatrix g = geodesic_from_quadratic(q(p, 2), d);
      CHECK(g.matrix().trace() == 0);
      CHECK(g.det() == -d);
    }
  }
  CHECK(is_rational_square(mpq_class(9, 4)));
  CHECK_FALSE(is_rational_square(2));
}

TEST_CASE("scaling leaves the locus unchanged") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> u(-6, 6);
  for (int k = 0; k < 50; ++k) {
    RationalMatrix2 m(u(rng), u(rng), u(rng), 0);
    m = RationalMatrix2(m.a(), m.b(), m.c(), -m.a());
    if (m.det() >= 0) continue;
    GeodesicMatrix a(m);
    mpq_class lambda = q(1 + std::abs(u(rng)), 1 + std::abs(u(rng)));
    GeodesicMatrix b(m.scaled(lambda));
    CHECK(locus(a) == locus(b));
    CHECK(a.canonical() == b.canonical());
  }
}

TEST_CASE("endpoints are the roots of c t^2 - 2a t - b") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> u(-7, 7);
  int done = 0;
  while (done < 50) {
    mpq_class a = q(u(rng), 1 + std::abs(u(rng))), b(u(rng)), c = q(u(rng), 1 + std::abs(u(rng)));
    if (c == 0 || a * a + b * c <= 0) continue;
    GeodesicMatrix g(RationalMatrix2(a, b, c, -a));
    GeodesicLocus l = locus(g);
    // roots (a +- sqrt(a^2 + bc)) / c: center a/c, radius^2 (a^2 + bc)/c^2
    CHECK(l.center == a / c);
    CHECK(l.radius_sq == (a * a + b * c) / (c * c));
    CHECK(4 * (a * a + b * c) == -4 * g.det());
    ++done;
  }
}

TEST_CASE("conjugation moves the locus by B") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> u(-5, 5);
  int done = 0;
  while (done < 50) {
    RationalMatrix2 b(u(rng), u(rng), u(rng), u(rng));
    if (b.det() <= 0) continue;
    RationalMatrix2 m(u(rng), u(rng), u(rng), 0);
    m = RationalMatrix2(m.a(), m.b(), m.c(), -m.a());
    if (m.det() >= 0) continue;
    GeodesicMatrix a(m);
    GeodesicMatrix conj = conjugate_geodesic(b, a);
    CHECK(conj.det() == a.det());
    for (const auto& z : sample_locus(locus(a), 10, kPrec)) {
      CHECK(contains(a, z, Real(1e-40, kPrec)));
      Complex w = mobius_apply(b, z.z());
      CHECK(contains(conj, UpperHalfPoint(w), Real(1e-12, kPrec)));
    }
    ++done;
  }
}

TEST_CASE("sampling a vertical line stays in the requested height range") {
  auto pts = sample_locus(locus(geo(1, -3, 0)), 7, kPrec, 0.5, 2.0);
  REQUIRE(pts.size() == 7);
  for (const auto& z : pts) {
    CHECK(z.z().re().to_double() == doctest::Approx(1.5));
    CHECK(z.z().im() >= 0.5);
    CHECK(z.z().im() <= 2.0);
  }
}
