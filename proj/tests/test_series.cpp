#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hecke/primes.hpp"
#include "hecke/series.hpp"

using namespace hecke;

namespace {

SeriesModQ random_series(std::mt19937_64& rng, const PrimePower& mod, u64 X) {
  std::vector<u64> c(X + 1);
  for (auto& v : c) v = rng() % mod.q();
  return SeriesModQ(mod, std::move(c));
}

u64 reduce(const BigInt& v, u64 q) {
  BigInt r = v % BigInt(std::to_string(q));
  if (r < 0) r += BigInt(std::to_string(q));
  return std::stoull(r.get_str());
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("hecke_series_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("eta cubed is sparse") {
  const auto s = eta_cubed_exponents(10);
  REQUIRE(s.size() == 5);
  const u64 exps[] = {0, 1, 3, 6, 10};
  const i64 coeffs[] = {1, -3, 5, -7, 9};
  for (int i = 0; i < 5; ++i) {
    CHECK(s[i].exponent == exps[i]);
    CHECK(s[i].coefficient == coeffs[i]);
  }
  for (const auto& t : s) CHECK(t.exponent != 2);
  // Terms k = 0..1413: the largest k with k(k+1)/2 <= 10^6 is 1413.
  const auto big = eta_cubed_exponents(1'000'000);
  CHECK(big.size() == 1414);
  CHECK(big.back().exponent == 1413ULL * 1414 / 2);
  CHECK(big.back().coefficient == -(2 * 1413 + 1));
}

TEST_CASE("series_mul small example") {
  const PrimePower p5(5, 1);
  const SeriesModQ a(p5, {1, 1, 0, 0}), b(p5, {1, 4, 0, 0});
  const SeriesModQ expect(p5, {1, 0, 4, 0});
  CHECK(series_mul(a, b) == expect);
  CHECK(series_mul_naive(a, b) == expect);
  CHECK_THROWS_AS(series_mul(a, SeriesModQ(PrimePower(7, 1), {1, 1, 0, 0})), DomainError);
  CHECK_THROWS_AS(series_mul(a, SeriesModQ(p5, {1, 1, 0})), DomainError);
}

TEST_CASE("fast multiplication matches the naive oracle") {
  std::mt19937_64 rng(2024);
  SUBCASE("X = 2000") {
    for (const PrimePower& mod : {PrimePower(3, 7), PrimePower(1000003, 1), PrimePower(2, 1)}) {
      const auto a = random_series(rng, mod, 2000), b = random_series(rng, mod, 2000);
      CHECK(series_mul(a, b) == series_mul_naive(a, b));
      CHECK(series_mul(a, a) == series_mul_naive(a, a));
    }
  }
  SUBCASE("random lengths up to 10^4, ell = 2 included") {
    const PrimePower mods[] = {PrimePower(2, 1),  PrimePower(2, 10), PrimePower(2, 62), PrimePower(3, 39),
                               PrimePower(691, 1), PrimePower(23, 2), PrimePower(4611686018427387847ULL, 1)};
    for (const auto& mod : mods) {
      const u64 X = 1 + rng() % 10'000;
      const auto a = random_series(rng, mod, X), b = random_series(rng, mod, X);
      CHECK(series_mul(a, b) == series_mul_naive(a, b));
    }
  }
}

TEST_CASE("Eisenstein series") {
  const auto e4 = eisenstein_exact(4, 10);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e4[2] == 2160);
  const PrimePower mod(1000003, 1);
  CHECK(eisenstein(6, 10, mod)[1] == mod.q() - 504);
  CHECK_THROWS_AS(eisenstein(8, 10, mod), DomainError);

  // E4^3 - E6^2 = 1728 Delta, modularly and exactly.
  const u64 X = 50, q = mod.q();
  const auto E4 = eisenstein(4, X, mod), E6 = eisenstein(6, X, mod);
  const auto lhs4 = series_mul(series_mul(E4, E4), E4), lhs6 = series_mul(E6, E6);
  const auto delta = eigenform_coeffs(EigenformSpec(12), X, mod);
  for (u64 n = 0; n <= X; ++n) {
    CHECK(sub_mod(lhs4[n], lhs6[n], q) == mul_mod(1728, delta[n], q));
  }
  const auto x4 = eisenstein_exact(4, X), x6 = eisenstein_exact(6, X);
  const auto l4 = series_mul_exact(series_mul_exact(x4, x4), x4), l6 = series_mul_exact(x6, x6);
  const auto dx = delta_exact(X);
  for (u64 n = 0; n <= X; ++n) CHECK(l4[n] - l6[n] == 1728 * dx[n]);
}

TEST_CASE("eigenform coefficients") {
  const auto d = eigenform_exact(EigenformSpec(12), 8);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  CHECK(d[5] == 4830);
  CHECK(d[6] == -6048);
  CHECK(d[6] == d[2] * d[3]);
  CHECK(eigenform_exact(EigenformSpec(18), 4)[2] == -528);

  // Naive oracle: q * prod (1 - q^n)^24 by repeated multiplication.
  std::vector<BigInt> prod(9, 0);
  prod[0] = 1;
  for (u64 n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (u64 i = 8; i >= n; --i) prod[i] -= prod[i - n];
    }
  }
  for (u64 i = 1; i <= 8; ++i) CHECK(d[i] == prod[i - 1]);

  const PrimePower mod(23, 1);
  const auto f = eigenform_coeffs(EigenformSpec(12), 8, mod);
  CHECK(f[2] == reduce(BigInt(-24), 23));
  CHECK(f[5] == 4830 % 23);

  CHECK_THROWS_AS(EigenformSpec(14), DomainError);
  CHECK_THROWS_AS(eigenform_coeffs(EigenformSpec(12), 1, mod), DomainError);
  CHECK_THROWS_AS(eigenform_exact(EigenformSpec(12), kMaxExactX + 1), GuardError);
}

TEST_CASE("modular mode agrees with exact mode for every weight") {
  const u64 X = 300;
  for (unsigned w : EigenformSpec::kWeights) {
    const auto ex = eigenform_exact(EigenformSpec(w), X);
    for (const PrimePower& mod : {PrimePower(2, 20), PrimePower(691, 2), PrimePower(1000003, 1)}) {
      const auto f = eigenform_coeffs(EigenformSpec(w), X, mod);
      CHECK(f[0] == 0);
      CHECK(f[1] == 1);
      for (u64 n = 0; n <= X; ++n) REQUIRE(f[n] == reduce(ex[n], mod.q()));
    }
  }
}

TEST_CASE("Hecke relations for every weight up to 10^4") {
  const u64 X = 10'000;
  const PrimePower mod(1000003, 1);
  const u64 q = mod.q();
  for (unsigned w : EigenformSpec::kWeights) {
    const auto f = eigenform_coeffs(EigenformSpec(w), X, mod);
    u64 bad = 0;
    for (u64 r = 2; r <= X; ++r) {
      for (u64 s = r + 1; r * s <= X; ++s) {
        if (gcd(r, s) == 1 && f[r * s] != mul_mod(f[r], f[s], q)) ++bad;
      }
    }
    for (u64 p : small_primes(100)) {
      if (f[p * p] != sub_mod(mul_mod(f[p], f[p], q), pow_mod(p, w - 1, q), q)) ++bad;
    }
    CHECK_MESSAGE(bad == 0, "weight ", w);
  }
}

TEST_CASE("Ramanujan congruence mod 691") {
  const u64 X = 20'000;
  const auto f = eigenform_coeffs(EigenformSpec(12), X, PrimePower(691, 1));
  for (u64 p : small_primes(X)) REQUIRE(f[p] == add_mod(1, pow_mod(p, 11, 691), 691));
}

TEST_CASE("disk cache round trip and format") {
  TempDir tmp;
  const PrimePower mod(5, 2);
  const CachePolicy cache{tmp.path};
  const auto f = eigenform_coeffs(EigenformSpec(16), 20, mod, cache);
  const auto file = tmp.path / cache_format::file_name(16, mod, 20);
  REQUIRE(std::filesystem::exists(file));

  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  CHECK(line == "HDF1 weight=16 ell=5 m=2 X=20");
  CHECK(cache_format::header(16, mod, 20) == line);
  std::vector<u64> values;
  while (std::getline(in, line)) values.push_back(std::stoull(line));
  CHECK(values == std::vector<u64>(f.coeffs().begin(), f.coeffs().end()));

  // Second call is served from disk and identical.
  CHECK(eigenform_coeffs(EigenformSpec(16), 20, mod, cache) == f);
  // Key mismatch is a miss, never a wrong hit.
  CHECK_FALSE(cache_format::read(file, 18, mod, 20).has_value());
  CHECK_FALSE(cache_format::read(file, 16, PrimePower(5, 1), 20).has_value());
  CHECK_FALSE(cache_format::read(file, 16, mod, 21).has_value());
  CHECK_FALSE(cache_format::read(tmp.path / "absent.txt", 16, mod, 20).has_value());

  // A truncated file is ignored and regenerated.
  { std::ofstream out(file, std::ios::trunc); out << "HDF1 weight=16 ell=5 m=2 X=20\n0\n1\n"; }
  CHECK(eigenform_coeffs(EigenformSpec(16), 20, mod, cache) == f);
}
