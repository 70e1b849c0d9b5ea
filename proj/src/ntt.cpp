#include "hecke/ntt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace hecke::ntt {

Montgomery::Montgomery(u64 p) : p_(p) {
  if (p % 2 == 0 || p >= (u64{1} << 62)) throw DomainError("Montgomery modulus must be odd < 2^62");
  u64 inv = p;  // Newton iteration: correct to 2^(3*2^k) bits.
  for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
  neg_inv_ = ~inv + 1;
  u128 r = (static_cast<u128>(1) << 64) % p;
  r2_ = static_cast<u64>(r * r % p);
}

namespace {

void bit_reverse(std::vector<u64>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

}  // namespace

void forward(std::vector<u64>& a, const NttPrime& prime) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(kMaxLog2Size)) {
    throw DomainError("NTT length must be a power of two <= 2^32");
  }
  const Montgomery mont(prime.p);
  const u64 w = pow_mod(prime.generator, (prime.p - 1) / n, prime.p);

  // Twiddles w^i, i < n/2, in Montgomery form so mont.mul(x, tw) = x * w^i.
  std::vector<u64> tw(n / 2);
  tw[0] = mont.to_mont(1);
  const u64 w_m = mont.to_mont(w);
  for (std::size_t i = 1; i < tw.size(); ++i) tw[i] = mont.mul(tw[i - 1], w_m);

  bit_reverse(a);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      u64* lo = a.data() + i;
      u64* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = lo[j];
        const u64 v = mont.mul(hi[j], tw[j * step]);
        lo[j] = mont.add(u, v);
        hi[j] = mont.sub(u, v);
      }
    }
  }
}

std::vector<u64> convolve_prime(std::span<const u64> a, std::span<const u64> b,
                                std::size_t out_len, const NttPrime& prime) {
  const u64 p = prime.p;
  const Montgomery mont(p);
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t need = std::min(full, out_len);
  const std::size_t n = std::bit_ceil(full);

  const bool square = a.data() == b.data() && a.size() == b.size();
  std::vector<u64> fa(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % p;
  forward(fa, prime);
  if (square) {
    for (auto& x : fa) x = mont.mul(x, x);
  } else {
    std::vector<u64> fb(n, 0);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % p;
    forward(fb, prime);
    for (std::size_t i = 0; i < n; ++i) fa[i] = mont.mul(fa[i], fb[i]);
  }
  // Pointwise products carry a stray R^-1; the final scale is n^-1 * R.
  forward(fa, prime);
  std::reverse(fa.begin() + 1, fa.end());
  const u64 r_mod_p = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  const u64 scale = mul_mod(pow_mod(n % p, p - 2, p), r_mod_p, p);
  const u64 scale_m = mont.to_mont(scale);

  std::vector<u64> out(need);
  for (std::size_t i = 0; i < need; ++i) out[i] = mont.mul(fa[i], scale_m);
  return out;
}

std::size_t primes_needed(std::size_t len_a, std::size_t len_b, u64 q) {
  const double bits = std::log2(static_cast<double>(std::max<std::size_t>(1, std::min(len_a, len_b)))) +
                      2.0 * std::log2(static_cast<double>(std::max<u64>(q - 1, 1)));
  // Each auxiliary prime exceeds 2^61.99; keep a bit of slack for rounding.
  const auto count = static_cast<std::size_t>(std::floor((bits + 1.0) / 61.9)) + 1;
  if (count > kPrimes.size()) throw GuardError("convolution exceeds auxiliary prime capacity");
  return count;
}

std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 q,
                              std::size_t out_len) {
  if (a.empty() || b.empty() || out_len == 0) return std::vector<u64>(out_len, 0);
  const std::size_t need = std::min(out_len, a.size() + b.size() - 1);
  // Only the first `need` input terms can reach the output.
  a = a.first(std::min(a.size(), need));
  b = b.first(std::min(b.size(), need));
  const std::size_t t = primes_needed(a.size(), b.size(), q);

  std::vector<std::vector<u64>> residues;
  residues.reserve(t);
  for (std::size_t i = 0; i < t; ++i) residues.push_back(convolve_prime(a, b, need, kPrimes[i]));

  std::vector<u64> out(out_len, 0);
  if (t == 1) {
    for (std::size_t i = 0; i < need; ++i) out[i] = residues[0][i] % q;
    return out;
  }

  // Garner: value = c0 + c1*p0 + c2*p0*p1 + ..., each ci in [0, pi).
  std::vector<Montgomery> monts;
  for (std::size_t i = 0; i < t; ++i) monts.emplace_back(kPrimes[i].p);
  std::vector<std::vector<u64>> inv_m(t, std::vector<u64>(t, 0));  // (pj^-1 mod pi) in Montgomery form
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const u64 pi = kPrimes[i].p;
      inv_m[i][j] = monts[i].to_mont(pow_mod(kPrimes[j].p % pi, pi - 2, pi));
    }
  }
  std::vector<u64> prefix_mod_q(t);  // prod_{j<i} pj mod q
  prefix_mod_q[0] = 1 % q;
  for (std::size_t i = 1; i < t; ++i) prefix_mod_q[i] = mul_mod(prefix_mod_q[i - 1], kPrimes[i - 1].p % q, q);

  std::vector<u64> c(t);
  for (std::size_t k = 0; k < need; ++k) {
    for (std::size_t i = 0; i < t; ++i) {
      const u64 pi = kPrimes[i].p;
      u64 x = residues[i][k];
      for (std::size_t j = 0; j < i; ++j) {
        x = monts[i].mul(monts[i].sub(x, c[j] % pi), inv_m[i][j]);
      }
      c[i] = x;
    }
    u64 acc = 0;
    for (std::size_t i = 0; i < t; ++i) acc = add_mod(acc, mul_mod(c[i] % q, prefix_mod_q[i], q), q);
    out[k] = acc;
  }
  return out;
}

}  // namespace hecke::ntt
