#pragma once

// Empirical Chebotarev scans over actual eigenform coefficients.

#include <cstdint>
#include <vector>

#include "hecke/density.hpp"
#include "hecke/modring.hpp"
#include "hecke/series.hpp"

namespace hecke {

inline constexpr u64 kMaxScanX = 100'000'000;
inline constexpr u64 kMaxTableModulus = 10'000;

/// Deviations within this many binomial sigmas count as consistent.
inline constexpr double kConsistentSigmas = 4.0;
/// Deviations at or beyond this are reported as congruence candidates.
inline constexpr double kCongruenceSigmas = 10.0;

enum class Verdict { consistent, deviation, congruence_candidate };
const char* verdict_name(Verdict v);
Verdict classify(double max_abs_sigmas);

/// lambda_F(p) = prod_{i=1}^{n/2} (a_f(p) + p^{k-i} + p^{k-n-1+i}) mod q.
u64 lambda_F_mod(u64 a_p, u64 p, const LiftParams& params, const PrimePower& modulus);
BigInt lambda_F_exact(const BigInt& a_p, u64 p, const LiftParams& params);

/// l^{4m} sqrt(x) log(l^m x); a reference scale only, never a pass/fail bound.
double grh_error_scale(const PrimePower& modulus, u64 x);

/// (obs - delta N) / sqrt(delta (1 - delta) N); +inf when delta is 0 or 1 and
/// obs disagrees.
double binomial_sigmas(u64 observed, double delta, u64 trials);

struct ScanOptions {
  unsigned threads = 1;
  CachePolicy cache = CachePolicy::disabled();
};

/// Full (u, v) table of pi_f(x, u, v; l^m) for a level-1 eigenform.
class PiFTable {
 public:
  PiFTable(unsigned weight, const PrimePower& modulus, u64 x);

  unsigned weight() const { return weight_; }
  const PrimePower& modulus() const { return modulus_; }
  u64 x() const { return x_; }

  /// Number of scanned primes: pi(x) minus one when l <= x.
  u64 pi_x() const { return pi_x_; }
  u64 count(u64 u, u64 v) const { return counts_[index(u, v)]; }
  /// Sum over all cells; equals pi_x().
  u64 total() const;

  void add(u64 u, u64 v, u64 n = 1) { counts_[index(u, v)] += static_cast<std::uint32_t>(n); }
  void set_pi_x(u64 n) { pi_x_ = n; }

  /// Units in increasing order.
  std::vector<u64> units() const;

 private:
  std::size_t index(u64 u, u64 v) const;

  unsigned weight_;
  PrimePower modulus_;
  u64 x_;
  u64 pi_x_ = 0;
  std::vector<std::uint32_t> counts_;
};

struct CellStat {
  u64 u;
  u64 v;
  u64 count;
  ExactRational expected;  // delta_{u,v}(l^m)
  double sigmas;

  friend bool operator==(const CellStat&, const CellStat&) = default;
};

struct TableAnalysis {
  std::vector<CellStat> cells;  // every (unit u, v), u-major
  double max_abs_sigmas;
  CellStat worst;
  Verdict verdict;
  double grh_scale;
};

PiFTable scan_pi_f(unsigned weight, const PrimePower& modulus, u64 x, const ScanOptions& options = {});
/// Same counts from already-computed coefficients a(0..X), X >= x.
PiFTable scan_pi_f(const SeriesModQ& coeffs, unsigned weight, u64 x, unsigned threads = 1);

TableAnalysis analyze_table(const PiFTable& table);

struct IkedaScan {
  LiftParams params;
  PrimePower modulus;
  u64 x;
  u64 pi_x;
  u64 direct_count;    // #{p <= x, p != l : lambda_F(p) = 0 mod l^m}
  u64 root_set_count;  // sum over u and roots w of g_u of pi_f(x, u, w)
  ExactRational empirical;
  DensityReport expected;
  double sigmas;
  Verdict verdict;
  double grh_scale;
};

IkedaScan scan_pi_F(const LiftParams& params, const PrimePower& modulus, u64 x,
                    const ScanOptions& options = {});
IkedaScan scan_pi_F(const SeriesModQ& coeffs, const LiftParams& params, u64 x, unsigned threads = 1);

}  // namespace hecke
