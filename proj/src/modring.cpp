#include "hecke/modring.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace hecke {

u64 pow_mod(u64 base, u64 exp, u64 q) {
  if (q == 1) return 0;
  u64 result = 1;
  base %= q;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      factor_into(n / p, out);
      return;
    }
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<u64> flat;
  factor_into(n, flat);
  std::sort(flat.begin(), flat.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : flat) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

PrimePower::PrimePower(u64 ell, unsigned m) : ell_(ell), m_(m), q_(1) {
  if (m == 0) throw DomainError("exponent m must be positive");
  if (!is_prime(ell)) throw DomainError("ell = " + std::to_string(ell) + " is not prime");
  for (unsigned i = 0; i < m; ++i) {
    if (q_ > kMaxModulus / ell) {
      throw GuardError("modulus " + std::to_string(ell) + "^" + std::to_string(m) +
                       " exceeds 2^62");
    }
    q_ *= ell;
  }
}

u64 PrimePower::power(unsigned j) const {
  u64 r = 1;
  for (unsigned i = 0; i < j && i < m_; ++i) r *= ell_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const PrimePower& pp) {
  return os << pp.ell() << '^' << pp.m();
}

u64 euler_phi(const PrimePower& pp) { return pp.q() / pp.ell() * (pp.ell() - 1); }

Residue::Residue(i64 value, const PrimePower& modulus)
    : value_(reduce_signed(value, modulus.q())), modulus_(modulus) {}

Residue Residue::from_unsigned(u64 value, const PrimePower& modulus) {
  return Residue(value % modulus.q(), modulus, nullptr);
}

void Residue::check_same(const Residue& o) const {
  if (!(modulus_ == o.modulus_)) throw DomainError("residue modulus mismatch");
}

Residue Residue::operator+(const Residue& o) const {
  check_same(o);
  return Residue(add_mod(value_, o.value_, modulus_.q()), modulus_, nullptr);
}
Residue Residue::operator-(const Residue& o) const {
  check_same(o);
  return Residue(sub_mod(value_, o.value_, modulus_.q()), modulus_, nullptr);
}
Residue Residue::operator*(const Residue& o) const {
  check_same(o);
  return Residue(mul_mod(value_, o.value_, modulus_.q()), modulus_, nullptr);
}
Residue Residue::operator-() const {
  return Residue(sub_mod(0, value_, modulus_.q()), modulus_, nullptr);
}
Residue Residue::pow(u64 e) const {
  return Residue(pow_mod(value_, e, modulus_.q()), modulus_, nullptr);
}
Residue Residue::inverse() const {
  if (!is_unit()) throw DomainError("residue " + std::to_string(value_) + " is not a unit");
  // u^(phi(q) - 1) = u^-1 for units.
  return pow(euler_phi(modulus_) - 1);
}

unsigned val_ell(u64 x, u64 ell, unsigned cap) {
  unsigned v = 0;
  while (v < cap) {
    if (x == 0) return cap;
    if (x % ell != 0) return v;
    x /= ell;
    ++v;
  }
  return cap;
}

unsigned val_ell(i64 x, u64 ell, unsigned cap) {
  u64 mag = x < 0 ? static_cast<u64>(-(x + 1)) + 1 : static_cast<u64>(x);
  return val_ell(mag, ell, cap);
}

u64 mult_order(const Residue& u) {
  if (!u.is_unit()) throw DomainError("mult_order of a non-unit");
  const u64 q = u.modulus().q();
  u64 order = euler_phi(u.modulus());
  for (auto [p, e] : factorize(order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow_mod(u.value(), order / p, q) == 1) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

ExactRational::ExactRational(const BigInt& num, const BigInt& den) : v_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  v_.canonicalize();
}

ExactRational ExactRational::parse(const std::string& text) {
  mpq_class v;
  if (v.set_str(text, 10) != 0) throw DomainError("cannot parse rational '" + text + "'");
  if (v.get_den() == 0) throw DomainError("zero denominator");
  return ExactRational(v);
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.v_ == 0) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string ExactRational::decimal() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", to_double());
  return buf;
}

std::ostream& operator<<(std::ostream& os, const ExactRational& r) { return os << r.str(); }

BigInt big_pow(u64 base, unsigned exp) {
  BigInt b;
  mpz_ui_pow_ui(b.get_mpz_t(), base, exp);
  return b;
}

}  // namespace hecke
