#pragma once

// Exact generic densities of primes with prescribed (p, a_f(p)) mod l^m and
// of primes dividing Ikeda-lift eigenvalues, with their asymptotic envelopes.

#include <optional>
#include <string>
#include <vector>

#include "hecke/modring.hpp"

namespace hecke {

/// Siegel weight k and degree n of an Ikeda lift; the source form has weight
/// 2k - n, which must index a one-dimensional level-1 cusp space.
class LiftParams {
 public:
  LiftParams(unsigned k, unsigned n);

  unsigned k() const { return k_; }
  unsigned n() const { return n_; }
  unsigned source_weight() const { return 2 * k_ - n_; }

  /// All (k, n) with the given n whose source weight is supported, k ascending.
  static std::vector<LiftParams> all_with_degree(unsigned n);

 private:
  unsigned k_;
  unsigned n_;
};

/// gamma_i = -u^{k-i} - u^{k-n-1+i} mod q, i = 1..n/2 (Siegel weight k).
struct GammaRoots {
  PrimePower modulus;
  u64 u;
  LiftParams params;
  std::vector<u64> gamma;
};

GammaRoots gamma_roots(u64 u, const LiftParams& params, const PrimePower& modulus);

inline constexpr u64 kMaxRootScanModulus = 1'000'000;

struct RootSet {
  std::vector<u64> roots;  // ascending
  u64 count() const { return roots.size(); }
};

/// All w mod q with prod_i (w - gamma_i) = 0 mod q, by scanning every w.
RootSet g_u_root_count(u64 u, const LiftParams& params, const PrimePower& modulus);

struct NguSummary {
  u64 total;               // sum_{u=1}^{l-1} N_{g_u}(l)
  u64 main_term;           // (n/2) l
  u64 small_order_count;   // #{u : ord_l(u) <= n}
  u64 small_order_bound;   // n^2
  bool per_u_bound_holds;  // N_{g_u}(l) <= n/2, with equality when ord_l(u) > n
};

NguSummary sum_Ngu(const LiftParams& params, u64 ell);

/// Upper envelope C / l^e on a density, e rational; checked exactly.
struct DecayEnvelope {
  ExactRational coefficient;
  u64 ell;
  ExactRational exponent;
  std::string formula;

  /// value <= C / l^e, in exact arithmetic.
  bool holds(const ExactRational& value) const;
  double approx() const;

  friend bool operator==(const DecayEnvelope&, const DecayEnvelope&) = default;
};

enum class DensityKind { uv, ikeda };

struct DensityReport {
  DensityKind kind;
  unsigned det_weight;  // w: determinant character p -> p^{w-1}
  unsigned k = 0;       // Siegel weight (ikeda only)
  unsigned n = 0;       // Siegel degree (ikeda only)
  u64 ell;
  unsigned m;
  u64 u = 0;  // uv only
  u64 v = 0;  // uv only

  ExactRational delta_exact;
  ExactRational main_term;
  /// |delta / main_term - 1| <= this; present for m = 1.
  std::optional<ExactRational> relative_error_bound;
  std::optional<DecayEnvelope> decay_bound;
  std::vector<std::string> caveats;

  /// Every present envelope holds for delta_exact.
  bool within_envelopes() const;

  friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

/// delta_{u,v}(l^m) = #E_{l^m, v, u^{w-1}} / (|SL_2(Z/l^m)| phi(l^m)).
DensityReport delta_uv_generic(unsigned det_weight, const PrimePower& modulus, u64 u, u64 v);

inline constexpr u64 kMaxIkedaModulus = 20'000;

/// delta_F(l^m) = sum over units u and roots w of g_u of delta_{u,w}(l^m).
/// The determinant weight defaults to the source weight 2k - n.
DensityReport delta_F_generic(const LiftParams& params, const PrimePower& modulus,
                              std::optional<unsigned> det_weight = std::nullopt,
                              unsigned threads = 1);

struct PartitionStat {
  unsigned n;
  unsigned m;
  std::vector<std::vector<unsigned>> partitions;   // P_{n/2}(m), lexicographically descending
  unsigned min_value;                              // min s1 + floor((s2 + 1) / 2)
  std::vector<std::vector<unsigned>> minimizers;
  std::vector<unsigned> closed_form;               // (q+1)^i q^(n/2-i), m = (n/2) q + i
  std::vector<unsigned> argmin;                    // closed_form when it attains the minimum
  bool closed_form_attains_min;
  bool min_at_least_3m_over_n;                     // n * min >= 3m
};

PartitionStat partitions_stat(unsigned n, unsigned m);

}  // namespace hecke
