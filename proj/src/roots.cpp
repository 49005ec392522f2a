#include "modgeo/roots.hpp"

#include "modgeo/errors.hpp"

#include <algorithm>
#include <cmath>

namespace modgeo {

std::pair<Complex, Complex> horner_with_derivative(const std::vector<Complex>& coeffs, const Complex& x) {
  Precision prec = x.precision();
  Complex p(prec);
  Complex dp(prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {std::move(p), std::move(dp)};
}

namespace {

// One Aberth sweep; returns the largest relative correction.
double aberth_sweep(const std::vector<Complex>& coeffs, std::vector<Complex>& z) {
  double worst = 0.0;
  const std::size_t n = z.size();
  for (std::size_t k = 0; k < n; ++k) {
    auto [p, dp] = horner_with_derivative(coeffs, z[k]);
    if (p.is_zero()) continue;
    Complex sum(z[k].precision());
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      Complex diff = z[k] - z[j];
      if (diff.is_zero()) continue;
      sum += Complex(Real(1L, diff.precision()), Real(diff.precision())) / diff;
    }
    Complex ratio = dp.is_zero() ? Complex(Real(1L, p.precision()), Real(p.precision())) : p / dp;
    Complex denom = Complex(Real(1L, ratio.precision()), Real(ratio.precision())) - ratio * sum;
    Complex w = denom.is_zero() ? ratio : ratio / denom;
    z[k] -= w;
    double scale = std::max(1.0, z[k].abs().to_double());
    worst = std::max(worst, w.abs().to_double() / scale);
  }
  return worst;
}

std::vector<Complex> run_aberth(const std::vector<Complex>& coeffs, std::vector<Complex> z, double target, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    double worst = aberth_sweep(coeffs, z);
    if (!std::isfinite(worst)) break;
    if (worst <= target) break;
  }
  return z;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in, Precision prec) {
  std::vector<Complex> coeffs;
  coeffs.reserve(coeffs_in.size());
  for (const auto& c : coeffs_in) coeffs.push_back(c.with_precision(prec));
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  const std::size_t n = coeffs.size() - 1;

  // Roots at zero are split off exactly.
  std::size_t zeros = 0;
  while (zeros < n && coeffs[zeros].is_zero()) ++zeros;
  std::vector<Complex> reduced(coeffs.begin() + static_cast<long>(zeros), coeffs.end());
  const std::size_t m = reduced.size() - 1;

  std::vector<Complex> roots;
  if (m > 0) {
    // Initial guesses on a circle of radius (|c0|/|cm|)^(1/m), rotated to
    // avoid symmetric stalls.
    const Precision low = std::min<Precision>(prec, 96);
    std::vector<Complex> low_coeffs;
    for (const auto& c : reduced) low_coeffs.push_back(c.with_precision(low));
    Real ratio = low_coeffs.front().abs() / low_coeffs.back().abs();
    Real radius = exp(log(ratio) / static_cast<long>(m));
    std::vector<Complex> z;
    const Real two_pi = pi(low) * 2L;
    for (std::size_t k = 0; k < m; ++k) {
      Real angle = two_pi * static_cast<long>(k) / static_cast<long>(m) + Real(0.4, low);
      z.emplace_back(radius * cos(angle), radius * sin(angle));
    }
    z = run_aberth(low_coeffs, std::move(z), std::ldexp(1.0, -static_cast<int>(low) + 16), 2000);
    for (auto& r : z) r = r.with_precision(prec);
    double target = std::ldexp(1.0, -std::min<int>(static_cast<int>(prec) - 16, 1000));
    roots = run_aberth(reduced, std::move(z), target, 200);
  }
  for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(prec);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
  });
  for (const auto& r : roots) {
    if (!r.is_finite()) throw NonConvergence("root finder produced a non-finite root");
  }
  return roots;
}

}  // namespace modgeo
