#pragma once

// Exact counts of E_{l^m,t,d} = {A in GL_2(Z/l^m) : tr A = t, det A = d},
// by the valuation-class decomposition of x^2 - t x + d and by brute force.

#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/modring.hpp"

namespace hecke {

/// Histogram z[j] = #{a in [0, q) : nu_l(a^2 - a t + d) = j} for j < m, and
/// z[m] = #{a : l^m | a^2 - a t + d}.
struct ZProfile {
  PrimePower modulus;
  u64 t;
  u64 d;
  std::vector<u64> z;
};

enum class CountMethod { formula, brute };

struct TraceDetCount {
  PrimePower modulus;
  u64 t;
  u64 d;
  u64 count;
  CountMethod method;
};

inline constexpr u64 kMaxProfileModulus = 100'000'000;
inline constexpr u64 kMaxBruteMatrices = 100'000'000;

/// O(q) direct evaluation. Throws DomainError when d is not a unit.
ZProfile z_profile(const PrimePower& modulus, u64 t, u64 d);

/// sum_{j<m} (j+1) z[j] phi(q) + z[m] (m phi(q) + q).
u64 count_from_profile(const ZProfile& profile);

TraceDetCount count_trace_det(const PrimePower& modulus, u64 t, u64 d);

/// Enumerates all q^4 matrices; requires q^4 <= 10^8.
TraceDetCount count_trace_det_brute(const PrimePower& modulus, u64 t, u64 d);

/// One q^4 enumeration tallying every invertible matrix by (trace, det):
/// entry [t * q + d]. Requires q^4 <= 10^8.
std::vector<u64> brute_trace_det_table(const PrimePower& modulus);

/// z[j]^2 <= 256 * l^(2m - j) for every j.
bool z_bound_check(const PrimePower& modulus, u64 t, u64 d);
bool z_bound_check(const ZProfile& profile);

/// Memoized #E_{q,t,d} for sweeping many (t, d) pairs. The profile of
/// a^2 - t a + d only depends on a translation class of the polynomial, so
/// at most q distinct profiles are ever evaluated.
class TraceDetCounter {
 public:
  explicit TraceDetCounter(const PrimePower& modulus);
  u64 count(u64 t, u64 d);
  const PrimePower& modulus() const { return modulus_; }

 private:
  u64 profile_count_for(u64 c);  // profile of a^2 - c

  PrimePower modulus_;
  u64 inv4_ = 0;
  std::unordered_map<u64, u64> by_class_;
};

std::string profile_csv(const ZProfile& profile);

}  // namespace hecke
