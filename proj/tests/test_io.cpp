#include <doctest.h>

#include <cmath>
#include <limits>

#include "hecke/io.hpp"

using namespace hecke;

TEST_CASE("density JSON round trip") {
  for (const DensityReport& r : {delta_uv_generic(12, PrimePower(5, 1), 1, 0), delta_uv_generic(16, PrimePower(3, 3), 2, 7),
                                 delta_F_generic(LiftParams(10, 2), PrimePower(7, 1)),
                                 delta_F_generic(LiftParams(8, 4), PrimePower(5, 3))}) {
    const auto j = io::density_json(r);
    CHECK(j.begin().key() == "num");
    CHECK(std::next(j.begin()).key() == "den");
    CHECK(io::density_from_json(io::Json::parse(j.dump())) == r);
  }
  const auto j = io::density_json(delta_F_generic(LiftParams(10, 2), PrimePower(7, 1)), "2026-01-01T00:00:00Z");
  CHECK(j.dump().rfind(R"({"num":"47","den":"288",)", 0) == 0);
  CHECK(j["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK_THROWS(io::density_from_json(io::Json::parse(R"({"kind":"other"})")));
}

TEST_CASE("table CSV round trip") {
  const auto table = scan_pi_f(12, PrimePower(5, 1), 2000);
  const auto a = analyze_table(table);
  const auto csv = io::table_csv(a);
  CHECK(csv.rfind("u,v,count,expected_num,expected_den,sigmas\n", 0) == 0);
  CHECK(io::parse_table_csv(csv) == a.cells);
  CHECK_THROWS(io::parse_table_csv("u,v\n1,2\n"));

  const auto j = io::table_summary_json(table, a);
  CHECK(j["grh_scale"].get<double>() == doctest::Approx(a.grh_scale));
  CHECK(j["pi_x"] == table.pi_x());
}

TEST_CASE("doubles survive text") {
  for (double x : {0.0, -1.5, 1.0 / 3.0, 6.02e23, std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()}) {
    CHECK(io::parse_double(io::format_double(x)) == x);
  }
  CHECK(std::isnan(io::parse_double(io::format_double(std::nan("")))));
  CHECK_THROWS(io::parse_double("1.5x"));
}

TEST_CASE("count CSV") {
  const PrimePower mod(5, 1);
  const auto f = count_trace_det(mod, 0, 1);
  const auto b = count_trace_det_brute(mod, 0, 1);
  CHECK(io::count_csv(f, &b, z_profile(mod, 0, 1)) == "formula,30\nbrute,30\nz_profile,3,2\n");
  CHECK(io::count_csv(f, nullptr, z_profile(mod, 0, 1)) == "formula,30\nz_profile,3,2\n");
}

TEST_CASE("config parsing") {
  const auto kv = io::parse_config("# comment\n threads = 4 \n\ncache_dir=/tmp/x # trailing\n");
  CHECK(kv.size() == 2);
  CHECK(kv.at("threads") == "4");
  CHECK(kv.at("cache_dir") == "/tmp/x");
  CHECK_THROWS_AS(io::parse_config("novalue\n"), DomainError);
}

TEST_CASE("timestamp shape") {
  const auto ts = io::utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
}
