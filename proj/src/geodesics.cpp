#include "modgeo/geodesics.hpp"

#include "modgeo/errors.hpp"

namespace modgeo {

GeodesicMatrix::GeodesicMatrix(RationalMatrix2 a) : a_(std::move(a)) {
  if (a_.trace() != 0) throw PreconditionError("geodesic matrix must have trace zero");
  if (a_.det() >= 0) throw PreconditionError("geodesic matrix must have negative determinant");
}

GeodesicMatrix GeodesicMatrix::canonical() const {
  mpz_class den = 1;
  for (const mpq_class* e : {&a_.a(), &a_.b(), &a_.c()}) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e->get_den_mpz_t());
  }
  mpz_class a = mpz_class(a_.a() * den);
  mpz_class b = mpz_class(a_.b() * den);
  mpz_class c = mpz_class(a_.c() * den);
  mpz_class g = gcd(gcd(a, b), c);
  a /= g;
  b /= g;
  c /= g;
  const mpz_class& lead = c != 0 ? c : (a != 0 ? a : b);
  if (lead < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  return GeodesicMatrix(RationalMatrix2(mpq_class(a), mpq_class(b), mpq_class(c), mpq_class(-a)));
}

bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

bool GeodesicLocus::has_rational_endpoints() const {
  return kind == Kind::VerticalLine || is_rational_square(radius_sq);
}

bool operator==(const GeodesicLocus& u, const GeodesicLocus& v) {
  if (u.kind != v.kind) return false;
  if (u.kind == GeodesicLocus::Kind::VerticalLine) return u.x0 == v.x0;
  return u.center == v.center && u.radius_sq == v.radius_sq;
}

GeodesicLocus locus(const GeodesicMatrix& geodesic) {
  // A z = conj(z) with A = (a b; c -a) reads c (x^2 + y^2) - 2 a x - b = 0.
  const RationalMatrix2& m = geodesic.matrix();
  GeodesicLocus out;
  if (m.c() == 0) {
    out.kind = GeodesicLocus::Kind::VerticalLine;
    out.x0 = -m.b() / (2 * m.a());
  } else {
    out.kind = GeodesicLocus::Kind::Semicircle;
    out.center = m.a() / m.c();
    out.radius_sq = -geodesic.det() / (m.c() * m.c());
  }
  out.center.canonicalize();
  out.radius_sq.canonicalize();
  out.x0.canonicalize();
  return out;
}

Real geodesic_residual(const GeodesicMatrix& a, const UpperHalfPoint& z) {
  return distance(mobius_apply(a.matrix(), z.z()), z.z().conj());
}

bool contains(const GeodesicMatrix& a, const UpperHalfPoint& z, const Real& tol) {
  if (!(tol.sign() > 0)) throw PreconditionError("tolerance must be positive");
  return geodesic_residual(a, z) <= tol;
}

GeodesicMatrix conjugate_geodesic(const RationalMatrix2& b, const GeodesicMatrix& a) {
  const mpq_class det = b.det();
  if (det == 0) throw SingularMatrix("conjugating matrix is singular");
  if (det < 0) throw PreconditionError("conjugating matrix must have positive determinant");
  return GeodesicMatrix(b * a.matrix() * b.inverse());
}

GeodesicMatrix geodesic_from_quadratic(const mpq_class& p, const mpq_class& discriminant) {
  if (discriminant <= 0 || is_rational_square(discriminant)) {
    throw InvalidDiscriminant("endpoint discriminant must be a positive non-square");
  }
  return GeodesicMatrix(RationalMatrix2(p, discriminant - p * p, 1, -p));
}

std::vector<UpperHalfPoint> sample_locus(const GeodesicLocus& locus, int count, Precision prec, double y_min,
                                         double y_max) {
  std::vector<UpperHalfPoint> out;
  out.reserve(count);
  if (locus.kind == GeodesicLocus::Kind::VerticalLine) {
    Real x(locus.x0, prec);
    Real lo = log(Real(y_min, prec));
    Real hi = log(Real(y_max, prec));
    for (int k = 0; k < count; ++k) {
      Real t = lo + (hi - lo) * static_cast<long>(k + 1) / static_cast<long>(count + 1);
      out.emplace_back(Complex(x, exp(t)));
    }
    return out;
  }
  Real c(locus.center, prec);
  Real r = sqrt(Real(locus.radius_sq, prec));
  Real half_turn = pi(prec);
  for (int k = 0; k < count; ++k) {
    Real theta = half_turn * static_cast<long>(k + 1) / static_cast<long>(count + 1);
    out.emplace_back(Complex(c + r * cos(theta), r * sin(theta)));
  }
  return out;
}

}  // namespace modgeo
