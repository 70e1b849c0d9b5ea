#pragma once

// Exact arithmetic primitives: prime-power residue rings, capped l-adic
// valuations, multiplicative orders, and exact rationals.

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hecke/errors.hpp"

namespace hecke {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

using BigInt = mpz_class;

/// Largest modulus accepted by PrimePower; keeps every residue product inside
/// a 128-bit intermediate.
inline constexpr u64 kMaxModulus = u64{1} << 62;

inline u64 mul_mod(u64 a, u64 b, u64 q) {
  return static_cast<u64>(static_cast<u128>(a) * b % q);
}
inline u64 add_mod(u64 a, u64 b, u64 q) {
  u64 s = a + b;
  return (s >= q || s < a) ? s - q : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + (q - b); }

/// Canonical representative of a signed integer modulo q.
inline u64 reduce_signed(i64 x, u64 q) {
  i64 r = static_cast<i64>(static_cast<i128>(x) % static_cast<i128>(q));
  return r < 0 ? static_cast<u64>(r + static_cast<i64>(q)) : static_cast<u64>(r);
}

u64 pow_mod(u64 base, u64 exp, u64 q);
u64 gcd(u64 a, u64 b);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// A modulus q = ell^m with ell prime and q <= 2^62.
class PrimePower {
 public:
  PrimePower(u64 ell, unsigned m);

  u64 ell() const { return ell_; }
  unsigned m() const { return m_; }
  u64 q() const { return q_; }
  /// ell^j for 0 <= j <= m.
  u64 power(unsigned j) const;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;

 private:
  u64 ell_;
  unsigned m_;
  u64 q_;
};

std::ostream& operator<<(std::ostream& os, const PrimePower& pp);

u64 euler_phi(const PrimePower& pp);

/// An element of Z/qZ held in canonical form 0 <= value < q.
class Residue {
 public:
  Residue(i64 value, const PrimePower& modulus);
  static Residue from_unsigned(u64 value, const PrimePower& modulus);

  u64 value() const { return value_; }
  const PrimePower& modulus() const { return modulus_; }
  bool is_unit() const { return value_ % modulus_.ell() != 0; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue pow(u64 e) const;
  /// Multiplicative inverse; throws DomainError on a non-unit.
  Residue inverse() const;

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  Residue(u64 value, const PrimePower& modulus, std::nullptr_t)
      : value_(value), modulus_(modulus) {}
  void check_same(const Residue& o) const;

  u64 value_;
  PrimePower modulus_;
};

/// min(nu_ell(x), cap); x = 0 returns cap.
unsigned val_ell(i64 x, u64 ell, unsigned cap);
unsigned val_ell(u64 x, u64 ell, unsigned cap);

/// Smallest r >= 1 with u^r = 1 mod q. Throws DomainError when ell | u.
u64 mult_order(const Residue& u);

/// Exact rational in lowest terms with positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const BigInt& num, const BigInt& den);
  explicit ExactRational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p/q" or "p".
  static ExactRational parse(const std::string& text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }
  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }
  /// 15 significant digits, scientific when small.
  std::string decimal() const;
  const mpq_class& raw() const { return v_; }

  ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { v_ *= o.v_; return *this; }
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
  ExactRational operator-() const { return ExactRational(mpq_class(-v_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const ExactRational& r);

BigInt big_pow(u64 base, unsigned exp);

}  // namespace hecke
