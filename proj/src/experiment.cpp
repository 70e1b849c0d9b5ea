#include "hecke/experiment.hpp"

#include <cmath>
#include <limits>

#include "hecke/galois_tower.hpp"
#include "hecke/matcount.hpp"
#include "hecke/parallel.hpp"
#include "hecke/primes.hpp"

namespace hecke {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::deviation: return "deviation";
    case Verdict::congruence_candidate: return "exceptional/congruence candidate";
  }
  return "?";
}

Verdict classify(double max_abs_sigmas) {
  if (max_abs_sigmas <= kConsistentSigmas) return Verdict::consistent;
  if (max_abs_sigmas >= kCongruenceSigmas) return Verdict::congruence_candidate;
  return Verdict::deviation;
}

u64 lambda_F_mod(u64 a_p, u64 p, const LiftParams& params, const PrimePower& modulus) {
  const u64 q = modulus.q();
  const unsigned k = params.k();
  const unsigned n = params.n();
  a_p %= q;
  p %= q;
  u64 prod = 1 % q;
  for (unsigned i = 1; i <= n / 2; ++i) {
    const u64 factor = add_mod(a_p, add_mod(pow_mod(p, k - i, q), pow_mod(p, k - n - 1 + i, q), q), q);
    prod = mul_mod(prod, factor, q);
  }
  return prod;
}

BigInt lambda_F_exact(const BigInt& a_p, u64 p, const LiftParams& params) {
  const unsigned k = params.k();
  const unsigned n = params.n();
  BigInt prod = 1;
  for (unsigned i = 1; i <= n / 2; ++i) prod *= a_p + big_pow(p, k - i) + big_pow(p, k - n - 1 + i);
  return prod;
}

double grh_error_scale(const PrimePower& modulus, u64 x) {
  if (x < 2) throw DomainError("grh_error_scale needs x >= 2");
  const double l = static_cast<double>(modulus.ell());
  const double lm = static_cast<double>(modulus.q());
  return std::pow(l, 4.0 * modulus.m()) * std::sqrt(static_cast<double>(x)) *
         std::log(lm * static_cast<double>(x));
}

double binomial_sigmas(u64 observed, double delta, u64 trials) {
  const double expected = delta * static_cast<double>(trials);
  const double var = delta * (1.0 - delta) * static_cast<double>(trials);
  const double diff = static_cast<double>(observed) - expected;
  if (var <= 0.0) {
    return std::abs(diff) < 0.5 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return diff / std::sqrt(var);
}

PiFTable::PiFTable(unsigned weight, const PrimePower& modulus, u64 x)
    : weight_(weight), modulus_(modulus), x_(x) {
  if (modulus.q() > kMaxTableModulus) throw GuardError("pi_f tables need l^m <= 10^4");
  counts_.assign(euler_phi(modulus) * modulus.q(), 0);
}

std::size_t PiFTable::index(u64 u, u64 v) const {
  const u64 q = modulus_.q();
  const u64 ell = modulus_.ell();
  u %= q;
  v %= q;
  if (u % ell == 0) throw DomainError("table row u must be a unit");
  const u64 unit_index = u - (u + ell - 1) / ell;
  return unit_index * q + v;
}

u64 PiFTable::total() const {
  u64 s = 0;
  for (auto c : counts_) s += c;
  return s;
}

std::vector<u64> PiFTable::units() const {
  std::vector<u64> out;
  for (u64 u = 1; u < modulus_.q(); ++u) {
    if (u % modulus_.ell() != 0) out.push_back(u);
  }
  return out;
}

namespace {

void check_scan(u64 x) {
  if (x < 100) throw DomainError("scan limit x must be >= 100");
  if (x > kMaxScanX) throw GuardError("scan limit x exceeds 10^8");
}

// Calls visit(p) for every prime p <= x with p != ell, in increasing order
// within each chunk. Chunk results are merged by the caller.
template <class PerChunk>
void for_prime_chunks(u64 x, unsigned threads, PerChunk&& per_chunk) {
  const auto base = small_primes(static_cast<u64>(std::sqrt(static_cast<double>(x))) + 1);
  const u64 segments = (x + kDefaultSegmentSize - 1) / kDefaultSegmentSize;
  parallel_chunks(segments, threads, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const u64 seg_lo = s * kDefaultSegmentSize;
      const u64 seg_hi = std::min(x, seg_lo + kDefaultSegmentSize - 1);
      per_chunk(c, sieve_segment(std::max<u64>(seg_lo, 2), seg_hi, base));
    }
  });
}

}  // namespace

PiFTable scan_pi_f(const SeriesModQ& coeffs, unsigned weight, u64 x, unsigned threads) {
  check_scan(x);
  if (coeffs.X() < x) throw GuardError("coefficient series shorter than the scan limit");
  const PrimePower& mod = coeffs.modulus();
  const u64 q = mod.q();
  PiFTable table(weight, mod, x);

  // Each chunk records (u, v) per prime; merging by addition is order-free.
  std::vector<std::vector<std::pair<u64, u64>>> hits(std::max(1u, threads));
  for_prime_chunks(x, threads, [&](std::size_t c, const std::vector<u64>& primes) {
    for (u64 p : primes) {
      if (p == mod.ell()) continue;
      hits[c].emplace_back(p % q, coeffs[p]);
    }
  });
  u64 n = 0;
  for (const auto& h : hits) {
    for (auto [u, v] : h) table.add(u, v);
    n += h.size();
  }
  table.set_pi_x(n);
  return table;
}

PiFTable scan_pi_f(unsigned weight, const PrimePower& modulus, u64 x, const ScanOptions& options) {
  check_scan(x);
  if (modulus.q() > kMaxTableModulus) throw GuardError("pi_f tables need l^m <= 10^4");
  const SeriesModQ f = eigenform_coeffs(EigenformSpec(weight), x, modulus, options.cache);
  return scan_pi_f(f, weight, x, options.threads);
}

TableAnalysis analyze_table(const PiFTable& table) {
  const PrimePower& mod = table.modulus();
  const u64 q = mod.q();
  const BigInt L = generic_L_degree(table.weight(), mod.ell(), mod.m());
  const double L_d = L.get_d();
  TraceDetCounter counter(mod);

  TableAnalysis out{{}, 0.0, {0, 0, 0, ExactRational(0), 0.0}, Verdict::consistent,
                    grh_error_scale(mod, table.x())};
  out.cells.reserve(euler_phi(mod) * q);
  for (u64 u : table.units()) {
    const u64 d = pow_mod(u, table.weight() - 1, q);
    for (u64 v = 0; v < q; ++v) {
      const u64 e = counter.count(v, d);
      const double delta = static_cast<double>(e) / L_d;
      const u64 obs = table.count(u, v);
      CellStat cell{u, v, obs, ExactRational(BigInt(e), L), binomial_sigmas(obs, delta, table.pi_x())};
      if (std::abs(cell.sigmas) > out.max_abs_sigmas || out.cells.empty()) {
        out.max_abs_sigmas = std::max(out.max_abs_sigmas, std::abs(cell.sigmas));
        out.worst = cell;
      }
      out.cells.push_back(std::move(cell));
    }
  }
  out.verdict = classify(out.max_abs_sigmas);
  return out;
}

IkedaScan scan_pi_F(const SeriesModQ& coeffs, const LiftParams& params, u64 x, unsigned threads) {
  check_scan(x);
  const PrimePower& mod = coeffs.modulus();
  const u64 q = mod.q();
  if (q > kMaxTableModulus) throw GuardError("pi_F scans need l^m <= 10^4");

  std::vector<u64> direct(std::max(1u, threads), 0);
  for_prime_chunks(x, threads, [&](std::size_t c, const std::vector<u64>& primes) {
    for (u64 p : primes) {
      if (p == mod.ell()) continue;
      if (lambda_F_mod(coeffs[p], p, params, mod) == 0) ++direct[c];
    }
  });

  // Reduction through the (u, w) table and the root sets of g_u.
  const PiFTable table = scan_pi_f(coeffs, params.source_weight(), x, threads);
  u64 via_roots = 0;
  for (u64 u : table.units()) {
    for (u64 w : g_u_root_count(u, params, mod).roots) via_roots += table.count(u, w);
  }

  u64 direct_total = 0;
  for (u64 d : direct) direct_total += d;
  DensityReport expected = delta_F_generic(params, mod, std::nullopt, threads);
  const double delta = expected.delta_exact.to_double();
  const double sig = binomial_sigmas(direct_total, delta, table.pi_x());
  return IkedaScan{params,
                   mod,
                   x,
                   table.pi_x(),
                   direct_total,
                   via_roots,
                   ExactRational(BigInt(direct_total), BigInt(std::max<u64>(table.pi_x(), 1))),
                   std::move(expected),
                   sig,
                   classify(std::abs(sig)),
                   grh_error_scale(mod, x)};
}

IkedaScan scan_pi_F(const LiftParams& params, const PrimePower& modulus, u64 x, const ScanOptions& options) {
  check_scan(x);
  if (modulus.q() > kMaxTableModulus) throw GuardError("pi_F scans need l^m <= 10^4");
  const SeriesModQ f = eigenform_coeffs(EigenformSpec(params.source_weight()), x, modulus, options.cache);
  return scan_pi_F(f, params, x, options.threads);
}

}  // namespace hecke
