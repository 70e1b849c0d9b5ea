#include "hecke/matcount.hpp"

#include <sstream>

namespace hecke {

namespace {

void require_unit(const PrimePower& modulus, u64 d) {
  if (d % modulus.ell() == 0) {
    throw DomainError("determinant " + std::to_string(d) + " is not a unit mod " +
                      std::to_string(modulus.q()));
  }
}

void require_profile_size(const PrimePower& modulus) {
  if (modulus.q() > kMaxProfileModulus) {
    throw GuardError("modulus " + std::to_string(modulus.q()) + " exceeds the 10^8 profile guard");
  }
}

void require_brute_size(const PrimePower& modulus) {
  const u64 q = modulus.q();
  if (q > 100 || q * q * q * q > kMaxBruteMatrices) {
    throw GuardError("brute-force enumeration needs q^4 <= 10^8, q = " + std::to_string(q));
  }
}

// Histogram of nu_l(a^2 - t a + d) over a in [0, q), capped at m.
std::vector<u64> valuation_histogram(const PrimePower& modulus, u64 t, u64 d) {
  const u64 q = modulus.q();
  std::vector<u64> z(modulus.m() + 1, 0);
  for (u64 a = 0; a < q; ++a) {
    const u64 value = add_mod(sub_mod(mul_mod(a, a, q), mul_mod(a, t, q), q), d, q);
    ++z[val_ell(value, modulus.ell(), modulus.m())];
  }
  return z;
}

u64 weighted_count(const PrimePower& modulus, const std::vector<u64>& z) {
  const u64 phi = euler_phi(modulus);
  const unsigned m = modulus.m();
  u64 total = 0;
  for (unsigned j = 0; j < m; ++j) total += (j + 1) * z[j] * phi;
  total += z[m] * (m * phi + modulus.q());
  return total;
}

}  // namespace

ZProfile z_profile(const PrimePower& modulus, u64 t, u64 d) {
  require_profile_size(modulus);
  t %= modulus.q();
  d %= modulus.q();
  require_unit(modulus, d);
  return ZProfile{modulus, t, d, valuation_histogram(modulus, t, d)};
}

u64 count_from_profile(const ZProfile& profile) { return weighted_count(profile.modulus, profile.z); }

TraceDetCount count_trace_det(const PrimePower& modulus, u64 t, u64 d) {
  const ZProfile p = z_profile(modulus, t, d);
  return {modulus, p.t, p.d, count_from_profile(p), CountMethod::formula};
}

TraceDetCount count_trace_det_brute(const PrimePower& modulus, u64 t, u64 d) {
  require_brute_size(modulus);
  const u64 q = modulus.q();
  t %= q;
  d %= q;
  require_unit(modulus, d);
  u64 count = 0;
  for (u64 x = 0; x < q; ++x) {
    for (u64 w = 0; w < q; ++w) {
      if ((x + w) % q != t) continue;
      for (u64 y = 0; y < q; ++y) {
        for (u64 z = 0; z < q; ++z) {
          const u64 det = (x * w + q * q - y * z % q) % q;
          if (det == d && det % modulus.ell() != 0) ++count;
        }
      }
    }
  }
  return {modulus, t, d, count, CountMethod::brute};
}

std::vector<u64> brute_trace_det_table(const PrimePower& modulus) {
  require_brute_size(modulus);
  const u64 q = modulus.q();
  std::vector<u64> table(q * q, 0);
  for (u64 x = 0; x < q; ++x) {
    for (u64 w = 0; w < q; ++w) {
      const u64 tr = (x + w) % q;
      const u64 xw = x * w % q;
      for (u64 y = 0; y < q; ++y) {
        for (u64 z = 0; z < q; ++z) {
          const u64 det = (xw + q - y * z % q) % q;
          if (det % modulus.ell() != 0) ++table[tr * q + det];
        }
      }
    }
  }
  return table;
}

bool z_bound_check(const ZProfile& profile) {
  const PrimePower& mod = profile.modulus;
  const unsigned m = mod.m();
  for (unsigned j = 0; j <= m; ++j) {
    // z^2 <= 256 * l^(2m - j), evaluated exactly.
    const BigInt lhs = BigInt(profile.z[j]) * profile.z[j];
    const BigInt rhs = 256 * big_pow(mod.ell(), 2 * m - j);
    if (lhs > rhs) return false;
  }
  return true;
}

bool z_bound_check(const PrimePower& modulus, u64 t, u64 d) {
  return z_bound_check(z_profile(modulus, t, d));
}

TraceDetCounter::TraceDetCounter(const PrimePower& modulus) : modulus_(modulus) {
  require_profile_size(modulus);
  if (modulus.ell() != 2) inv4_ = Residue(4, modulus).inverse().value();
}

u64 TraceDetCounter::profile_count_for(u64 c) {
  auto it = by_class_.find(c);
  if (it != by_class_.end()) return it->second;
  const u64 q = modulus_.q();
  const u64 count = weighted_count(modulus_, valuation_histogram(modulus_, 0, sub_mod(0, c, q)));
  by_class_.emplace(c, count);
  return count;
}

u64 TraceDetCounter::count(u64 t, u64 d) {
  const u64 q = modulus_.q();
  t %= q;
  d %= q;
  require_unit(modulus_, d);
  if (modulus_.ell() == 2) {
    // Odd trace: a(a - t) is always even, so a^2 - t a + d is odd.
    if (t % 2 == 1) return q * euler_phi(modulus_);
    const u64 h = t / 2;
    return profile_count_for(sub_mod(mul_mod(h, h, q), d, q));
  }
  // a^2 - t a + d = (a - t/2)^2 - (t^2/4 - d).
  return profile_count_for(sub_mod(mul_mod(mul_mod(t, t, q), inv4_, q), d, q));
}

std::string profile_csv(const ZProfile& profile) {
  std::ostringstream os;
  for (std::size_t j = 0; j < profile.z.size(); ++j) os << (j ? "," : "") << profile.z[j];
  return os.str();
}

}  // namespace hecke
