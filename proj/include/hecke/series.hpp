#pragma once

// Truncated q-expansions of the level-1 normalized Hecke eigenforms of
// weights 12, 16, 18, 20, 22, 26, reduced modulo a prime power (or exact, for
// small lengths).

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hecke/modring.hpp"

namespace hecke {

/// Coefficients a(0..X) modulo q, each canonical in [0, q).
class SeriesModQ {
 public:
  SeriesModQ(const PrimePower& modulus, std::vector<u64> coeffs);
  static SeriesModQ zero(const PrimePower& modulus, u64 X);

  const PrimePower& modulus() const { return modulus_; }
  /// Truncation index X; the series holds X + 1 coefficients.
  u64 X() const { return coeffs_.size() - 1; }
  u64 operator[](std::size_t n) const { return coeffs_[n]; }
  std::span<const u64> coeffs() const { return coeffs_; }

  friend bool operator==(const SeriesModQ&, const SeriesModQ&) = default;

 private:
  PrimePower modulus_;
  std::vector<u64> coeffs_;
};

/// Exact big-integer q-expansion a(0..X).
struct ExactSeries {
  std::vector<BigInt> coeffs;
  u64 X() const { return coeffs.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coeffs[n]; }
};

struct SparseTerm {
  u64 exponent;
  i64 coefficient;
  friend bool operator==(const SparseTerm&, const SparseTerm&) = default;
};
using SparseSeries = std::vector<SparseTerm>;

/// prod_{n>=1} (1 - q^n)^3 through q^X: (-1)^k (2k+1) at k(k+1)/2.
SparseSeries eta_cubed_exponents(u64 X);

/// Truncated Cauchy product via multi-prime NTT; throws DomainError on a
/// modulus or length mismatch.
SeriesModQ series_mul(const SeriesModQ& a, const SeriesModQ& b);
/// O(X^2) reference product.
SeriesModQ series_mul_naive(const SeriesModQ& a, const SeriesModQ& b);

/// E_4 = 1 + 240 sum sigma_3(n) q^n or E_6 = 1 - 504 sum sigma_5(n) q^n mod q.
SeriesModQ eisenstein(unsigned weight, u64 X, const PrimePower& modulus);

inline constexpr u64 kMaxExactX = 10'000;

ExactSeries eisenstein_exact(unsigned weight, u64 X);
ExactSeries series_mul_exact(const ExactSeries& a, const ExactSeries& b);
/// Delta = q prod (1 - q^n)^24, exactly.
ExactSeries delta_exact(u64 X);

/// The eigenform of a given weight as Delta * E4^a * E6^b.
class EigenformSpec {
 public:
  explicit EigenformSpec(unsigned weight);

  unsigned weight() const { return weight_; }
  unsigned e4_power() const { return e4_; }
  unsigned e6_power() const { return e6_; }
  /// e.g. "Delta*E4^2*E6".
  std::string recipe() const;

  static bool supported(unsigned weight);
  static constexpr std::array<unsigned, 6> kWeights{12, 16, 18, 20, 22, 26};

 private:
  unsigned weight_;
  unsigned e4_;
  unsigned e6_;
};

/// Where eigenform expansions are cached; `dir` empty disables caching.
struct CachePolicy {
  std::optional<std::filesystem::path> dir;

  /// HECKE_CACHE_DIR or ./cache.
  static CachePolicy from_env();
  static CachePolicy disabled() { return {}; }
};

/// Normalized eigenform a(0..X) mod q. Deterministic; consults and fills the
/// cache when one is configured. Throws DomainError for unsupported weights.
SeriesModQ eigenform_coeffs(const EigenformSpec& spec, u64 X, const PrimePower& modulus,
                            const CachePolicy& cache = CachePolicy::disabled());

/// Exact expansion, X <= 10^4.
ExactSeries eigenform_exact(const EigenformSpec& spec, u64 X);

namespace cache_format {

std::string header(unsigned weight, const PrimePower& modulus, u64 X);
std::filesystem::path file_name(unsigned weight, const PrimePower& modulus, u64 X);
/// Writes header and residues through a temp file renamed into place.
void write(const std::filesystem::path& path, unsigned weight, const SeriesModQ& series);
/// Empty optional when the file is missing, malformed or keyed differently.
std::optional<SeriesModQ> read(const std::filesystem::path& path, unsigned weight,
                               const PrimePower& modulus, u64 X);

}  // namespace cache_format

}  // namespace hecke
