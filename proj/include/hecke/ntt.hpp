#pragma once

// Number-theoretic transforms over word-size primes p = c * 2^32 + 1 < 2^62,
// recombined by Garner's algorithm to convolve residues modulo any q <= 2^62.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hecke/modring.hpp"

namespace hecke::ntt {

/// Montgomery multiplication modulo an odd p < 2^62, R = 2^64.
class Montgomery {
 public:
  explicit Montgomery(u64 p);

  u64 modulus() const { return p_; }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to_mont(u64 a) const { return mul(a % p_, r2_); }
  u64 from_mont(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }

 private:
  u64 reduce(u128 t) const {
    u64 m = static_cast<u64>(t) * neg_inv_;
    u128 s = t + static_cast<u128>(m) * p_;
    u64 r = static_cast<u64>(s >> 64);
    return r >= p_ ? r - p_ : r;
  }

  u64 p_;
  u64 neg_inv_;  // -p^-1 mod 2^64
  u64 r2_;       // 2^128 mod p
};

struct NttPrime {
  u64 p;
  u64 generator;
};

/// Primes of the form c * 2^32 + 1 just below 2^62 with a primitive root.
inline constexpr std::array<NttPrime, 5> kPrimes{{
    {4611685941117976577ULL, 3},
    {4611685692009873409ULL, 19},
    {4611685606110527489ULL, 3},
    {4611685318347718657ULL, 5},
    {4611685232448372737ULL, 3},
}};

inline constexpr unsigned kMaxLog2Size = 32;

/// In-place forward transform of a (length a power of two) modulo `prime`.
/// Values are plain residues in and out.
void forward(std::vector<u64>& a, const NttPrime& prime);

/// Cyclic-free product of a and b modulo `prime`, first out_len coefficients.
std::vector<u64> convolve_prime(std::span<const u64> a, std::span<const u64> b,
                                std::size_t out_len, const NttPrime& prime);

/// Number of auxiliary primes needed so their product exceeds
/// min(len_a, len_b) * (q - 1)^2.
std::size_t primes_needed(std::size_t len_a, std::size_t len_b, u64 q);

/// Truncated product (first out_len terms) of residue sequences mod q.
std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 q,
                              std::size_t out_len);

}  // namespace hecke::ntt
