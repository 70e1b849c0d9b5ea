#include "hecke/density.hpp"

#include <cmath>
#include <functional>

#include "hecke/galois_tower.hpp"
#include "hecke/matcount.hpp"
#include "hecke/parallel.hpp"
#include "hecke/series.hpp"

namespace hecke {

namespace {

constexpr const char* kGenericCaveat =
    "generic image assumed: valid only when ell is non-exceptional for the form";
constexpr const char* kAtildeCaveat = "[A~:A] taken as 1 (only [A~:A] <= r <= k-1 is proven)";
constexpr const char* kFittedCaveat = "envelope constants are fitted on a desk-scale grid, not proven";

ExactRational rational_pow(const ExactRational& x, unsigned e) {
  ExactRational r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

ExactRational inverse_power(u64 ell, unsigned e) { return ExactRational(BigInt(1), big_pow(ell, e)); }

}  // namespace

LiftParams::LiftParams(unsigned k, unsigned n) : k_(k), n_(n) {
  if (k == 0 || n == 0 || k % 2 != 0 || n % 2 != 0) {
    throw DomainError("k and n must be even positive integers");
  }
  if (k <= n + 1) throw DomainError("need k > n + 1");
  if (!EigenformSpec::supported(2 * k - n)) {
    throw DomainError("source weight 2k - n = " + std::to_string(2 * k - n) +
                      " is not one of 12, 16, 18, 20, 22, 26");
  }
}

std::vector<LiftParams> LiftParams::all_with_degree(unsigned n) {
  std::vector<LiftParams> out;
  for (unsigned w : EigenformSpec::kWeights) {
    if ((w + n) % 2 != 0) continue;
    const unsigned k = (w + n) / 2;
    if (k % 2 == 0 && k > n + 1) out.emplace_back(k, n);
  }
  return out;
}

GammaRoots gamma_roots(u64 u, const LiftParams& params, const PrimePower& modulus) {
  const u64 q = modulus.q();
  u %= q;
  if (u % modulus.ell() == 0) throw DomainError("u must be a unit");
  const unsigned k = params.k();
  const unsigned n = params.n();
  GammaRoots out{modulus, u, params, {}};
  for (unsigned i = 1; i <= n / 2; ++i) {
    const u64 s = add_mod(pow_mod(u, k - i, q), pow_mod(u, k - n - 1 + i, q), q);
    out.gamma.push_back(sub_mod(0, s, q));
  }
  return out;
}

RootSet g_u_root_count(u64 u, const LiftParams& params, const PrimePower& modulus) {
  if (modulus.q() > kMaxRootScanModulus) throw GuardError("root scan needs l^m <= 10^6");
  const GammaRoots g = gamma_roots(u, params, modulus);
  const u64 q = modulus.q();
  const unsigned m = modulus.m();
  RootSet out;
  for (u64 w = 0; w < q; ++w) {
    unsigned total = 0;
    for (u64 gamma : g.gamma) {
      total += val_ell(sub_mod(w, gamma, q), modulus.ell(), m);
      if (total >= m) break;
    }
    if (total >= m) out.roots.push_back(w);
  }
  return out;
}

NguSummary sum_Ngu(const LiftParams& params, u64 ell) {
  const PrimePower mod(ell, 1);
  const unsigned n = params.n();
  NguSummary s{0, static_cast<u64>(n / 2) * ell, 0, static_cast<u64>(n) * n, true};
  for (u64 u = 1; u < ell; ++u) {
    const u64 N = g_u_root_count(u, params, mod).count();
    const u64 ord = mult_order(Residue(static_cast<i64>(u), mod));
    s.total += N;
    if (ord <= n) ++s.small_order_count;
    if (N > n / 2 || (ord > n && N != n / 2)) s.per_u_bound_holds = false;
  }
  return s;
}

bool DecayEnvelope::holds(const ExactRational& value) const {
  if (value <= ExactRational(0)) return true;
  // value <= C * l^(-a/b)  <=>  value^b * l^a <= C^b.
  const BigInt a = exponent.numerator();
  const BigInt b = exponent.denominator();
  if (!a.fits_uint_p() || !b.fits_uint_p()) throw DomainError("envelope exponent too large");
  const unsigned ua = static_cast<unsigned>(a.get_ui());
  const unsigned ub = static_cast<unsigned>(b.get_ui());
  const ExactRational lhs = rational_pow(value, ub) * ExactRational(big_pow(ell, ua), BigInt(1));
  return lhs <= rational_pow(coefficient, ub);
}

double DecayEnvelope::approx() const {
  return coefficient.to_double() / std::pow(static_cast<double>(ell), exponent.to_double());
}

bool DensityReport::within_envelopes() const {
  if (decay_bound && !decay_bound->holds(delta_exact)) return false;
  if (relative_error_bound) {
    ExactRational rel = delta_exact / main_term - ExactRational(1);
    if (rel < ExactRational(0)) rel = -rel;
    if (rel > *relative_error_bound) return false;
  }
  return true;
}

DensityReport delta_uv_generic(unsigned det_weight, const PrimePower& modulus, u64 u, u64 v) {
  if (det_weight < 2) throw DomainError("weight must be >= 2");
  const u64 q = modulus.q();
  u %= q;
  v %= q;
  if (u % modulus.ell() == 0) throw DomainError("u must be a unit");
  const u64 d = pow_mod(u, det_weight - 1, q);
  const u64 count = count_trace_det(modulus, v, d).count;

  DensityReport rep{DensityKind::uv, det_weight, 0, 0, modulus.ell(), modulus.m(), u, v,
                    ExactRational(BigInt(count), generic_L_degree(det_weight, modulus.ell(), modulus.m())),
                    inverse_power(modulus.ell(), 2 * modulus.m()), std::nullopt, std::nullopt,
                    {kGenericCaveat, kAtildeCaveat}};
  if (modulus.m() == 1) {
    const ExactRational rel(BigInt(5), BigInt(modulus.ell()));
    rep.relative_error_bound = rel;
    rep.decay_bound = DecayEnvelope{ExactRational(1) + rel, modulus.ell(), ExactRational(2),
                                    "(1 + 5/l) / l^2"};
    rep.caveats.emplace_back(kFittedCaveat);
  }
  return rep;
}

DensityReport delta_F_generic(const LiftParams& params, const PrimePower& modulus,
                              std::optional<unsigned> det_weight, unsigned threads) {
  if (modulus.q() > kMaxIkedaModulus) throw GuardError("delta_F needs l^m <= 20000");
  const unsigned w = det_weight.value_or(params.source_weight());
  if (w < 2) throw DomainError("weight must be >= 2");
  const u64 q = modulus.q();
  const u64 ell = modulus.ell();
  const unsigned m = modulus.m();
  const unsigned n = params.n();

  // Parallel over u; each chunk sums integer counts, so the total is exact
  // and independent of scheduling.
  std::vector<BigInt> partial(std::max(1u, threads), 0);
  std::vector<BigInt> partial_roots(partial.size(), 0);
  parallel_chunks(q, threads, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    TraceDetCounter counter(modulus);
    BigInt sum = 0;
    BigInt roots = 0;
    for (u64 u = lo; u < hi; ++u) {
      if (u % ell == 0) continue;
      const u64 d = pow_mod(u, w - 1, q);
      for (u64 root : g_u_root_count(u, params, modulus).roots) {
        sum += counter.count(root, d);
        roots += 1;
      }
    }
    partial[c] = sum;
    partial_roots[c] = roots;
  });
  BigInt total = 0;
  BigInt root_total = 0;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    total += partial[i];
    root_total += partial_roots[i];
  }

  DensityReport rep{DensityKind::ikeda, w, params.k(), n, ell, m, 0, 0,
                    ExactRational(total, generic_L_degree(w, ell, m)), ExactRational(0),
                    std::nullopt, std::nullopt,
                    {kGenericCaveat, kAtildeCaveat, kFittedCaveat}};
  if (m == 1) {
    rep.main_term = ExactRational(BigInt(n / 2), BigInt(ell));
    rep.relative_error_bound = ExactRational(BigInt(10 * n * n), BigInt(ell));
  } else {
    // Root-count heuristic: each (u, root) pair carries about 1/l^{2m}.
    rep.main_term = ExactRational(root_total, big_pow(ell, 2 * m));
  }
  if (n == 2) {
    rep.decay_bound = DecayEnvelope{ExactRational(4), ell, ExactRational(static_cast<long>(m)), "4 / l^m"};
  } else {
    rep.decay_bound = DecayEnvelope{ExactRational(static_cast<long>(8 * m * m)), ell,
                                    ExactRational(BigInt(3 * m), BigInt(n)), "8 m^2 / l^(3m/n)"};
  }
  return rep;
}

PartitionStat partitions_stat(unsigned n, unsigned m) {
  if (n < 2 || n % 2 != 0) throw DomainError("n must be even and >= 2");
  if (m < 1) throw DomainError("m must be >= 1");
  const unsigned parts = n / 2;
  PartitionStat st{n, m, {}, 0, {}, {}, {}, false, false};

  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned cap) {
    if (cur.size() == parts) {
      if (remaining == 0) st.partitions.push_back(cur);
      return;
    }
    const unsigned slots = parts - static_cast<unsigned>(cur.size());
    for (unsigned s = std::min(cap, remaining) + 1; s-- > 0;) {
      if (static_cast<unsigned long>(s) * slots < remaining) break;
      cur.push_back(s);
      rec(remaining - s, s);
      cur.pop_back();
    }
  };
  rec(m, m);

  auto value = [parts](const std::vector<unsigned>& s) {
    return s[0] + (parts > 1 ? (s[1] + 1) / 2 : 0);
  };
  st.min_value = value(st.partitions.front());
  for (const auto& s : st.partitions) st.min_value = std::min(st.min_value, value(s));
  for (const auto& s : st.partitions) {
    if (value(s) == st.min_value) st.minimizers.push_back(s);
  }

  const unsigned qq = m / parts;
  const unsigned i = m % parts;
  st.closed_form.assign(parts, qq);
  for (unsigned j = 0; j < i; ++j) st.closed_form[j] = qq + 1;
  st.closed_form_attains_min = value(st.closed_form) == st.min_value;
  st.argmin = st.closed_form_attains_min ? st.closed_form : st.minimizers.front();
  st.min_at_least_3m_over_n = static_cast<unsigned long>(n) * st.min_value >= 3ul * m;
  return st;
}

}  // namespace hecke
