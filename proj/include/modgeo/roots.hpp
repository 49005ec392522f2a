#pragma once

#include "modgeo/complex.hpp"

#include <vector>

namespace modgeo {

/// All complex roots of sum_k coeffs[k] x^k, with multiplicity, by
/// simultaneous Aberth-Ehrlich iteration. Leading zero coefficients are
/// dropped, so a polynomial of effective degree d yields d roots.
/// Roots are sorted by (re, im) for reproducibility.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs, Precision prec);

/// p(x) and p'(x) for ascending coefficients.
std::pair<Complex, Complex> horner_with_derivative(const std::vector<Complex>& coeffs, const Complex& x);

}  // namespace modgeo
