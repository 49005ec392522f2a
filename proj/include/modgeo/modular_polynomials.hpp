#pragma once

#include "modgeo/poly.hpp"
#include "modgeo/serialization.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <vector>

namespace modgeo {

/// Upper-triangular (a b; 0 d) with ad = N, 0 <= b < d, gcd(a, b, d) = 1.
struct IsogenyTriple {
  long a;
  long b;
  long d;
  friend bool operator==(const IsogenyTriple&, const IsogenyTriple&) = default;
};

/// All cyclic N-isogeny representatives; there are psi(N) of them.
std::vector<IsogenyTriple> cyclic_isogeny_matrices(long level);

/// Dedekind psi: N prod_{p | N} (1 + 1/p).
long dedekind_psi(long level);

/// The classical modular polynomial Phi_N(T1, T2), monic in T2 for N > 1.
/// Phi_1 is fixed to T1 - T2.
struct ModularPolynomial {
  long level = 1;
  long psi = 1;
  IntegerBivariatePoly poly;
  /// Largest distance of an interpolated coefficient from its integer.
  double max_rounding_residual = 0.0;
  Precision precision_used = 0;
};

struct ModpolyOptions {
  Precision precision = kDefaultPrecision;
  long max_level = 10;
  Precision max_precision = 1 << 15;
};

/// Evaluation-interpolation over the j-line: Phi_N(j(z), Y) = prod (Y - j((az+b)/d))
/// at psi(N)+1 sample points, Newton interpolation of each coefficient in j(z),
/// rounding to integers. Precision is doubled until every rounding residual
/// is below 1/4 and the result passes an independent vanishing check.
ModularPolynomial compute_modular_polynomial(long level, const ModpolyOptions& options = {});

bool is_symmetric(const IntegerBivariatePoly& p);
/// Phi_p == (X^p - Y)(X - Y^p) coefficientwise mod p.
bool kronecker_congruence_holds(const IntegerBivariatePoly& p, long prime);

Json to_json(const ModularPolynomial& m);
ModularPolynomial modular_polynomial_from_json(const Json& j);

/// Thread-safe store of computed modular polynomials, optionally backed by
/// `modpoly_N.json` files in a directory. Files written by a different code
/// version are ignored and replaced.
class ModularPolynomialCache {
 public:
  static constexpr const char* kVersion = "modgeo-modpoly-1";

  explicit ModularPolynomialCache(std::optional<std::filesystem::path> directory = std::nullopt);

  std::shared_ptr<const ModularPolynomial> get(long level, const ModpolyOptions& options = {});

  /// Process-wide cache; the directory comes from $MODGEO_CACHE_DIR when set.
  static ModularPolynomialCache& global();

  [[nodiscard]] static std::filesystem::path file_name(long level);

 private:
  std::optional<std::filesystem::path> directory_;
  std::shared_mutex mutex_;
  std::map<long, std::shared_ptr<const ModularPolynomial>> entries_;
};

/// Shorthand for ModularPolynomialCache::global().get(level, options).
std::shared_ptr<const ModularPolynomial> modpoly(long level, const ModpolyOptions& options = {});

/// N <= max_level with P = lambda Phi_N for a nonzero rational lambda.
std::optional<long> is_strongly_special_equation(const IntegerBivariatePoly& p, long max_level);
/// Same with a Gaussian-rational scalar.
std::optional<long> is_strongly_special_equation(const GaussianBivariatePoly& p, long max_level);

/// True when p is a nonzero Gaussian-rational multiple of q.
bool is_scalar_multiple(const GaussianBivariatePoly& p, const IntegerBivariatePoly& q);

}  // namespace modgeo
