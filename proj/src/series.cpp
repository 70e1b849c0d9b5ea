#include "hecke/series.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "hecke/ntt.hpp"

namespace hecke {

SeriesModQ::SeriesModQ(const PrimePower& modulus, std::vector<u64> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("series must hold at least a(0)");
  for (auto& c : coeffs_) c %= modulus_.q();
}

SeriesModQ SeriesModQ::zero(const PrimePower& modulus, u64 X) {
  return SeriesModQ(modulus, std::vector<u64>(X + 1, 0));
}

SparseSeries eta_cubed_exponents(u64 X) {
  SparseSeries out;
  for (u64 k = 0;; ++k) {
    const u64 e = k * (k + 1) / 2;
    if (e > X) break;
    const i64 c = static_cast<i64>(2 * k + 1);
    out.push_back({e, (k % 2 == 0) ? c : -c});
  }
  return out;
}

namespace {

void check_compatible(const SeriesModQ& a, const SeriesModQ& b) {
  if (!(a.modulus() == b.modulus())) throw DomainError("series modulus mismatch");
  if (a.X() != b.X()) throw DomainError("series length mismatch");
}

// dense * sparse, truncated to the dense length.
std::vector<BigInt> mul_sparse_exact(const std::vector<BigInt>& dense, const SparseSeries& sparse) {
  std::vector<BigInt> out(dense.size(), 0);
  for (const auto& term : sparse) {
    if (term.exponent >= dense.size()) break;
    const long c = static_cast<long>(term.coefficient);
    for (std::size_t i = 0; i + term.exponent < dense.size(); ++i) {
      if (dense[i] == 0) continue;
      out[i + term.exponent] += dense[i] * c;
    }
  }
  return out;
}

}  // namespace

SeriesModQ series_mul(const SeriesModQ& a, const SeriesModQ& b) {
  check_compatible(a, b);
  const std::size_t len = a.X() + 1;
  // Same object: squaring saves one transform per prime.
  auto ca = a.coeffs();
  auto cb = (&a == &b) ? ca : b.coeffs();
  return SeriesModQ(a.modulus(), ntt::convolve_mod(ca, cb, a.modulus().q(), len));
}

SeriesModQ series_mul_naive(const SeriesModQ& a, const SeriesModQ& b) {
  check_compatible(a, b);
  const u64 q = a.modulus().q();
  const std::size_t len = a.X() + 1;
  std::vector<u64> out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) {
      out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], q), q);
    }
  }
  return SeriesModQ(a.modulus(), std::move(out));
}

namespace {

unsigned sigma_power(unsigned weight) {
  if (weight == 4) return 3;
  if (weight == 6) return 5;
  throw DomainError("Eisenstein weight must be 4 or 6, got " + std::to_string(weight));
}

}  // namespace

SeriesModQ eisenstein(unsigned weight, u64 X, const PrimePower& modulus) {
  const unsigned r = sigma_power(weight);
  const u64 q = modulus.q();
  std::vector<u64> sigma(X + 1, 0);
  for (u64 d = 1; d <= X; ++d) {
    const u64 dr = pow_mod(d, r, q);
    for (u64 n = d; n <= X; n += d) sigma[n] = add_mod(sigma[n], dr, q);
  }
  const u64 scale = weight == 4 ? 240 % q : reduce_signed(-504, q);
  std::vector<u64> out(X + 1);
  out[0] = 1 % q;
  for (u64 n = 1; n <= X; ++n) out[n] = mul_mod(sigma[n], scale, q);
  return SeriesModQ(modulus, std::move(out));
}

ExactSeries eisenstein_exact(unsigned weight, u64 X) {
  const unsigned r = sigma_power(weight);
  if (X > kMaxExactX) throw GuardError("exact mode is limited to X <= 10^4");
  std::vector<BigInt> sigma(X + 1, 0);
  for (u64 d = 1; d <= X; ++d) {
    const BigInt dr = big_pow(d, r);
    for (u64 n = d; n <= X; n += d) sigma[n] += dr;
  }
  const long scale = weight == 4 ? 240 : -504;
  ExactSeries out{std::vector<BigInt>(X + 1)};
  out.coeffs[0] = 1;
  for (u64 n = 1; n <= X; ++n) out.coeffs[n] = sigma[n] * scale;
  return out;
}

ExactSeries series_mul_exact(const ExactSeries& a, const ExactSeries& b) {
  if (a.X() != b.X()) throw DomainError("series length mismatch");
  const std::size_t len = a.coeffs.size();
  ExactSeries out{std::vector<BigInt>(len, 0)};
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) out.coeffs[i + j] += a[i] * b[j];
  }
  return out;
}

ExactSeries delta_exact(u64 X) {
  if (X > kMaxExactX) throw GuardError("exact mode is limited to X <= 10^4");
  // prod (1 - q^n)^24 through q^(X-1), then shift by one.
  const auto eta3 = eta_cubed_exponents(X);
  std::vector<BigInt> acc(X, 0);
  if (X > 0) acc[0] = 1;
  for (int i = 0; i < 8; ++i) acc = mul_sparse_exact(acc, eta3);
  ExactSeries out{std::vector<BigInt>(X + 1, 0)};
  for (u64 n = 1; n <= X; ++n) out.coeffs[n] = acc[n - 1];
  return out;
}

namespace {

SeriesModQ delta_mod(u64 X, const PrimePower& modulus) {
  const u64 q = modulus.q();
  if (X == 0) return SeriesModQ::zero(modulus, 0);
  const auto eta3 = eta_cubed_exponents(X - 1);
  // eta^6 from the sparse square, O(#terms^2).
  std::vector<u64> eta6(X, 0);
  for (const auto& s : eta3) {
    const u64 cs = reduce_signed(s.coefficient, q);
    for (const auto& t : eta3) {
      if (s.exponent + t.exponent >= X) break;
      u64& slot = eta6[s.exponent + t.exponent];
      slot = add_mod(slot, mul_mod(cs, reduce_signed(t.coefficient, q), q), q);
    }
  }
  SeriesModQ e6(modulus, std::move(eta6));
  SeriesModQ e12 = series_mul(e6, e6);
  SeriesModQ e24 = series_mul(e12, e12);
  std::vector<u64> out(X + 1, 0);
  for (u64 n = 1; n <= X; ++n) out[n] = e24[n - 1];
  return SeriesModQ(modulus, std::move(out));
}

}  // namespace

EigenformSpec::EigenformSpec(unsigned weight) : weight_(weight), e4_(0), e6_(0) {
  switch (weight) {
    case 12: break;
    case 16: e4_ = 1; break;
    case 18: e6_ = 1; break;
    case 20: e4_ = 2; break;
    case 22: e4_ = 1; e6_ = 1; break;
    case 26: e4_ = 2; e6_ = 1; break;
    default:
      throw DomainError("unsupported weight " + std::to_string(weight) +
                        " (supported: 12, 16, 18, 20, 22, 26)");
  }
}

bool EigenformSpec::supported(unsigned weight) {
  for (unsigned w : kWeights) {
    if (w == weight) return true;
  }
  return false;
}

std::string EigenformSpec::recipe() const {
  std::string s = "Delta";
  if (e4_ == 1) s += "*E4";
  if (e4_ > 1) s += "*E4^" + std::to_string(e4_);
  if (e6_ == 1) s += "*E6";
  return s;
}

CachePolicy CachePolicy::from_env() {
  const char* env = std::getenv("HECKE_CACHE_DIR");
  return CachePolicy{std::filesystem::path(env && *env ? env : "./cache")};
}

namespace cache_format {

std::string header(unsigned weight, const PrimePower& modulus, u64 X) {
  return "HDF1 weight=" + std::to_string(weight) + " ell=" + std::to_string(modulus.ell()) +
         " m=" + std::to_string(modulus.m()) + " X=" + std::to_string(X);
}

std::filesystem::path file_name(unsigned weight, const PrimePower& modulus, u64 X) {
  return "hdf1_w" + std::to_string(weight) + "_l" + std::to_string(modulus.ell()) + "_m" +
         std::to_string(modulus.m()) + "_X" + std::to_string(X) + ".txt";
}

void write(const std::filesystem::path& path, unsigned weight, const SeriesModQ& series) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << header(weight, series.modulus(), series.X()) << '\n';
    std::string buf;
    for (u64 c : series.coeffs()) {
      buf += std::to_string(c);
      buf += '\n';
    }
    out << buf;
    if (!out) throw Error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<SeriesModQ> read(const std::filesystem::path& path, unsigned weight,
                               const PrimePower& modulus, u64 X) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != header(weight, modulus, X)) return std::nullopt;
  std::vector<u64> coeffs;
  coeffs.reserve(X + 1);
  while (std::getline(in, line)) {
    if (line.empty()) return std::nullopt;
    u64 v = 0;
    for (char ch : line) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + static_cast<u64>(ch - '0');
    }
    if (v >= modulus.q()) return std::nullopt;
    coeffs.push_back(v);
  }
  if (coeffs.size() != X + 1) return std::nullopt;
  return SeriesModQ(modulus, std::move(coeffs));
}

}  // namespace cache_format

SeriesModQ eigenform_coeffs(const EigenformSpec& spec, u64 X, const PrimePower& modulus,
                            const CachePolicy& cache) {
  if (X < 2) throw DomainError("eigenform expansion needs X >= 2");
  std::optional<std::filesystem::path> path;
  if (cache.dir) {
    path = *cache.dir / cache_format::file_name(spec.weight(), modulus, X);
    if (auto hit = cache_format::read(*path, spec.weight(), modulus, X)) return *hit;
  }
  SeriesModQ f = delta_mod(X, modulus);
  if (spec.e4_power() > 0) {
    const SeriesModQ e4 = eisenstein(4, X, modulus);
    for (unsigned i = 0; i < spec.e4_power(); ++i) f = series_mul(f, e4);
  }
  if (spec.e6_power() > 0) {
    const SeriesModQ e6 = eisenstein(6, X, modulus);
    for (unsigned i = 0; i < spec.e6_power(); ++i) f = series_mul(f, e6);
  }
  if (path) cache_format::write(*path, spec.weight(), f);
  return f;
}

ExactSeries eigenform_exact(const EigenformSpec& spec, u64 X) {
  if (X > kMaxExactX) throw GuardError("exact mode is limited to X <= 10^4");
  ExactSeries f = delta_exact(X);
  if (spec.e4_power() > 0) {
    const ExactSeries e4 = eisenstein_exact(4, X);
    for (unsigned i = 0; i < spec.e4_power(); ++i) f = series_mul_exact(f, e4);
  }
  if (spec.e6_power() > 0) {
    const ExactSeries e6 = eisenstein_exact(6, X);
    for (unsigned i = 0; i < spec.e6_power(); ++i) f = series_mul_exact(f, e6);
  }
  return f;
}

}  // namespace hecke
