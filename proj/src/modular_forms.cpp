#include "modgeo/modular_forms.hpp"

#include "modgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <vector>

namespace modgeo {

namespace {

constexpr Precision kGuardBits = 32;
constexpr std::size_t kMaxSeriesTerms = 5000;

struct DivisorSums {
  std::vector<std::uint64_t> sigma3;
  std::vector<std::uint64_t> sigma5;
};

const DivisorSums& divisor_sums() {
  static DivisorSums table;
  static std::once_flag once;
  std::call_once(once, [] {
    table.sigma3.assign(kMaxSeriesTerms + 1, 0);
    table.sigma5.assign(kMaxSeriesTerms + 1, 0);
    for (std::uint64_t d = 1; d <= kMaxSeriesTerms; ++d) {
      const std::uint64_t d3 = d * d * d;
      const std::uint64_t d5 = d3 * d * d;
      for (std::uint64_t n = d; n <= kMaxSeriesTerms; n += d) {
        table.sigma3[n] += d3;
        table.sigma5[n] += d5;
      }
    }
  });
  return table;
}

Complex one(Precision prec) { return {Real(1L, prec), Real(prec)}; }

// Terms needed so that n^5 |q|^n * 504 stays below 2^-(prec+8).
std::size_t series_terms(const Complex& q, Precision prec) {
  // exponent() is an upper bound for log2|q|
  const double log2q = std::min(static_cast<double>(q.abs().exponent()), -1.0);
  std::size_t n = 1;
  while (n < kMaxSeriesTerms) {
    const double bound = static_cast<double>(n) * log2q + 5.0 * std::log2(static_cast<double>(n)) + 9.0;
    if (bound < -static_cast<double>(prec) - 8.0) break;
    ++n;
  }
  if (n >= kMaxSeriesTerms) throw PrecisionExhausted("q-series needs too many terms");
  return n;
}

ModularFormValues forms_from_q(const Complex& q, Precision work) {
  const std::size_t terms = series_terms(q, work);
  const DivisorSums& sums = divisor_sums();
  std::vector<Complex> qpow;
  qpow.reserve(terms + 1);
  qpow.push_back(one(work));
  for (std::size_t n = 1; n <= terms; ++n) qpow.push_back(qpow.back() * q);

  Complex s3(work);
  Complex s5(work);
  for (std::size_t n = 1; n <= terms; ++n) {
    s3 += qpow[n] * Real(mpz_class(static_cast<unsigned long>(sums.sigma3[n])), work);
    s5 += qpow[n] * Real(mpz_class(static_cast<unsigned long>(sums.sigma5[n])), work);
  }
  Complex e4 = one(work) + s3 * 240L;
  Complex e6 = one(work) - s5 * 504L;

  // Euler: prod (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2) over generalized pentagonal numbers.
  Complex euler = one(work);
  for (long k = 1;; ++k) {
    const std::size_t g1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    const std::size_t g2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (g1 > terms) break;
    const Complex& a = qpow[g1];
    if (k % 2 == 1) {
      euler -= a;
    } else {
      euler += a;
    }
    if (g2 <= terms) {
      if (k % 2 == 1) {
        euler -= qpow[g2];
      } else {
        euler += qpow[g2];
      }
    }
  }
  Complex delta = q * pow(euler, 24);
  return {std::move(e4), std::move(e6), std::move(delta)};
}

Complex q_of(const Complex& z, Precision work) {
  Complex zw = z.with_precision(work);
  Real two_pi = pi(work) * 2L;
  // q = exp(2 pi i z) = exp(-2 pi y) (cos 2 pi x + i sin 2 pi x)
  return exp(Complex(-(two_pi * zw.im()), two_pi * zw.re()));
}

// j and dj/dz at a reduced point.
JWithDerivative j_reduced(const Complex& z, Precision work) {
  Complex q = q_of(z, work);
  Complex two_pi_i(Real(work), pi(work) * 2L);
  if (q.abs() < two_pow(-static_cast<long>(work) - 4, work)) {
    // cusp: j = 1/q + 744 + 196884 q + O(q^2)
    Complex inv_q = one(work) / q;
    Complex j = inv_q + 744L + q * 196884L;
    Complex dj = two_pi_i * (q * 196884L - inv_q);
    return {std::move(j), std::move(dj)};
  }
  ModularFormValues f = forms_from_q(q, work);
  Complex e4sq = f.e4 * f.e4;
  Complex j = e4sq * f.e4 / f.delta;
  // dj/dz = -2 pi i E4^2 E6 / Delta
  Complex dj = -(two_pi_i * e4sq * f.e6 / f.delta);
  return {std::move(j), std::move(dj)};
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(Complex z) : z_(std::move(z)) {
  if (!(z_.im().sign() > 0)) throw PreconditionError("point is not in the upper half-plane");
}

FundamentalDomainReduction reduce_to_fundamental_domain(const UpperHalfPoint& point) {
  const Precision prec = point.precision();
  const long max_steps = 10 * static_cast<long>(prec);
  const Real tol = two_pow(-static_cast<long>(prec) + 16, prec);
  const Real half(0.5, prec);
  const RationalMatrix2 inversion(0, -1, 1, 0);

  Complex z = point.z();
  RationalMatrix2 gamma;
  long steps = 0;
  auto translate = [&](const mpz_class& n) {
    if (n == 0) return;
    z = z - Real(n, prec);
    gamma = RationalMatrix2(1, mpq_class(-n), 0, 1) * gamma;
  };
  auto invert = [&] {
    z = Complex(Real(-1L, prec), Real(prec)) / z;
    gamma = inversion * gamma;
  };

  while (true) {
    if (++steps > max_steps) throw NonConvergence("fundamental-domain reduction did not terminate");
    translate(z.re().round_to_integer());
    if (z.norm() < Real(1L, prec) - tol) {
      invert();
      continue;
    }
    break;
  }
  // boundary tie-break: prefer re(z) <= 0
  if (abs(z.re() - half) <= tol) translate(mpz_class(1));
  if (abs(z.norm() - 1L) <= tol && z.re() > tol) invert();
  if (!(z.im().sign() > 0)) throw NonConvergence("reduction left the upper half-plane");
  return {UpperHalfPoint(std::move(z)), std::move(gamma)};
}

ModularFormValues modular_forms_at(const UpperHalfPoint& z) {
  const Precision prec = z.precision();
  const Precision work = prec + kGuardBits;
  ModularFormValues f = forms_from_q(q_of(z.z(), work), work);
  return {f.e4.with_precision(prec), f.e6.with_precision(prec), f.delta.with_precision(prec)};
}

Complex j_eval(const UpperHalfPoint& z) { return j_eval_with_derivative(z).j; }

JWithDerivative j_eval_with_derivative(const UpperHalfPoint& z) {
  const Precision prec = z.precision();
  const Precision work = prec + kGuardBits;
  FundamentalDomainReduction red = reduce_to_fundamental_domain(UpperHalfPoint(z.z().with_precision(work)));
  JWithDerivative r = j_reduced(red.point.z(), work);
  // j(z) = j(gamma z), so j'(z) = j'(gamma z) / (c z + d)^2
  Complex czd = z.z().with_precision(work) * Real(red.gamma.c(), work) + Real(red.gamma.d(), work);
  Complex dj = r.dj / (czd * czd);
  return {r.j.with_precision(prec), dj.with_precision(prec)};
}

namespace {

struct NewtonResult {
  Complex z;
  Real residual;
};

NewtonResult newton_j(const Complex& seed, const Complex& target, Precision prec) {
  Complex z = seed.with_precision(prec);
  const Real step_tol = two_pow(-static_cast<long>(prec) + 8, prec);
  Real best_res = (j_eval(UpperHalfPoint(z)) - target).abs();
  for (int iter = 0; iter < 120; ++iter) {
    JWithDerivative jd = j_eval_with_derivative(UpperHalfPoint(z));
    Complex f = jd.j - target;
    if (f.is_zero() || jd.dj.is_zero()) break;
    Complex step = f / jd.dj;
    // j' vanishes at i (double root of j - 1728) and rho (triple root of j);
    // trying multiplicities 1..3 keeps convergence quadratic there.
    bool improved = false;
    Complex best_z = z;
    Real best = best_res;
    for (long m = 1; m <= 3; ++m) {
      Complex cand = z - step * m;
      if (!(cand.im().sign() > 0)) continue;
      Real r = (j_eval(UpperHalfPoint(cand)) - target).abs();
      if (r < best) {
        best = r;
        best_z = cand;
        improved = true;
      }
    }
    if (!improved) break;
    Real moved = distance(best_z, z);
    z = reduce_to_fundamental_domain(UpperHalfPoint(best_z)).point.z();
    best_res = best;
    if (moved <= step_tol * max(Real(1L, prec), z.abs())) break;
  }
  return {std::move(z), std::move(best_res)};
}

}  // namespace

UpperHalfPoint j_inverse(const Complex& c) {
  const Precision prec = std::max(c.precision(), kMinPrecision);
  const Precision work = prec + kGuardBits;
  const Complex target = c.with_precision(work);
  const Real scale = max(Real(1L, work), target.abs());
  const Real accept = two_pow(-static_cast<long>(prec / 2), work) * scale;

  auto finish = [&](const Complex& z) {
    UpperHalfPoint reduced = reduce_to_fundamental_domain(UpperHalfPoint(z.with_precision(prec))).point;
    return reduced;
  };

  std::vector<Complex> seeds;
  if (target.abs() > 1.0e4) {
    // near the cusp j ~ 1/q + 744
    Complex q0 = Complex(Real(1L, work), Real(work)) / (target - 744L);
    Complex logq = log(q0);
    Real two_pi = pi(work) * 2L;
    Complex z0(logq.im() / two_pi, -(logq.re() / two_pi));
    if (z0.im().sign() > 0) seeds.push_back(reduce_to_fundamental_domain(UpperHalfPoint(z0)).point.z());
  }
  for (const Complex& s : seeds) {
    NewtonResult r = newton_j(s, target, work);
    if (r.residual <= accept) return finish(r.z);
  }

  // Grid seeding over the truncated fundamental domain, best seeds first.
  const Precision coarse = 64;
  const Complex coarse_target = target.with_precision(coarse);
  for (int grid : {16, 64}) {
    std::vector<std::pair<double, Complex>> ranked;
    for (int a = 0; a < grid; ++a) {
      double x = -0.5 + (a + 0.5) / grid;
      double ymin = std::sqrt(1.0 - x * x) + 1e-3;
      for (int b = 0; b < grid; ++b) {
        double y = ymin + (3.0 - ymin) * (b + 0.5) / grid;
        Complex s(x, y, coarse);
        double r = (j_eval(UpperHalfPoint(s)) - coarse_target).abs().to_double();
        ranked.emplace_back(r, std::move(s));
      }
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& u, const auto& v) { return u.first < v.first; });
    const std::size_t tries = std::min<std::size_t>(ranked.size(), grid == 16 ? 4 : 16);
    for (std::size_t k = 0; k < tries; ++k) {
      NewtonResult r = newton_j(ranked[k].second, target, work);
      if (r.residual <= accept) return finish(r.z);
    }
  }
  throw NonConvergence("j_inverse: no seed converged");
}

UpperHalfPoint cm_point(long discriminant, Precision prec) {
  if (discriminant >= 0 || ((discriminant % 4) + 4) % 4 > 1) {
    throw InvalidDiscriminant("discriminant must be negative and congruent to 0 or 1 mod 4");
  }
  Real re = Real(discriminant, prec) / 2L;
  Real im = sqrt(Real(-discriminant, prec)) / 2L;
  return UpperHalfPoint(Complex(std::move(re), std::move(im)));
}

Complex heegner_j(long discriminant, Precision prec) { return j_eval(cm_point(discriminant, prec)); }

}  // namespace modgeo
