#include "hecke/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hecke/density.hpp"
#include "hecke/experiment.hpp"
#include "hecke/galois_tower.hpp"
#include "hecke/io.hpp"
#include "hecke/matcount.hpp"
#include "hecke/verify.hpp"

namespace hecke::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "plain") return OutputFormat::plain;
  throw UsageError("unknown format '" + s + "' (csv, json, plain)");
}

unsigned parse_threads(const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos == s.size() && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw UsageError("threads must be an integer in [1, 1024], got '" + s + "'");
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw UsageError("expected a boolean, got '" + s + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GlobalFlags {
  std::string format;
  std::string cache_dir;
  std::string threads;
  std::string config;
  bool no_timestamp = false;
};

RunConfig resolve(const GlobalFlags& flags, const std::string& subcommand) {
  // Each setting takes its raw text from the highest-precedence source that
  // has it (flags, then config file, then environment) and is parsed once.
  std::map<std::string, std::string> raw;
  if (const char* env = std::getenv("HECKE_CACHE_DIR"); env && *env) raw["cache_dir"] = env;
  if (const char* env = std::getenv("HECKE_THREADS"); env && *env) raw["threads"] = env;

  if (!flags.config.empty()) {
    std::map<std::string, std::string> kv;
    try {
      kv = io::parse_config(read_file(flags.config));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    for (const auto& [key, value] : kv) {
      if (key != "cache_dir" && key != "threads" && key != "format" && key != "timestamp") {
        throw UsageError("unknown config key '" + key + "'");
      }
      raw[key] = value;
    }
  }

  if (!flags.cache_dir.empty()) raw["cache_dir"] = flags.cache_dir;
  if (!flags.threads.empty()) raw["threads"] = flags.threads;
  if (!flags.format.empty()) raw["format"] = flags.format;
  if (flags.no_timestamp) raw["timestamp"] = "false";

  RunConfig cfg;
  cfg.subcommand = subcommand;
  if (auto it = raw.find("cache_dir"); it != raw.end()) cfg.cache_dir = it->second;
  if (auto it = raw.find("threads"); it != raw.end()) cfg.threads = parse_threads(it->second);
  if (auto it = raw.find("format"); it != raw.end()) {
    cfg.format = parse_format(it->second);
    cfg.format_set = true;
  }
  if (auto it = raw.find("timestamp"); it != raw.end()) cfg.timestamp = parse_bool(it->second);
  return cfg;
}

OutputFormat format_or(const RunConfig& cfg, OutputFormat fallback) {
  return cfg.format_set ? cfg.format : fallback;
}

std::string stamp(const RunConfig& cfg) { return cfg.timestamp ? io::utc_timestamp() : ""; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hecke eigenvalue divisibility densities: exact generic values and empirical scans", "hecke"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--format", g.format, "Output format: csv, json or plain");
  app.add_option("--cache-dir", g.cache_dir, "Eigenform cache directory");
  app.add_option("--threads", g.threads, "Thread budget");
  app.add_option("--config", g.config, "key=value config file");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit timestamps from JSON output");

  // tower
  unsigned tower_k = 0, tower_max_m = 0;
  u64 tower_ell = 0;
  auto* tower = app.add_subcommand("tower", "Degree table of the cyclotomic tower and generic images");
  tower->add_option("--k", tower_k, "Weight of f")->required();
  tower->add_option("--ell", tower_ell, "Prime ell")->required();
  tower->add_option("--max-m", tower_max_m, "Largest exponent m")->required();

  // count
  u64 count_ell = 0, count_t = 0, count_d = 0;
  unsigned count_m = 0;
  bool count_brute = false;
  auto* count = app.add_subcommand("count", "Count 2x2 matrices mod ell^m with given trace and determinant");
  count->add_option("--ell", count_ell)->required();
  count->add_option("--m", count_m)->required();
  count->add_option("--t", count_t, "Trace")->required();
  count->add_option("--d", count_d, "Determinant (a unit)")->required();
  count->add_flag("--brute", count_brute, "Also run the exhaustive enumeration");

  // density
  auto* density = app.add_subcommand("density", "Exact generic densities");
  density->require_subcommand(1);
  density->fallthrough();
  unsigned uv_k = 0, uv_m = 0;
  u64 uv_ell = 0, uv_u = 0, uv_v = 0;
  auto* duv = density->add_subcommand("uv", "delta_{u,v}(ell^m) for a form of weight k");
  duv->add_option("--k", uv_k, "Weight of f")->required();
  duv->add_option("--ell", uv_ell)->required();
  duv->add_option("--m", uv_m)->required();
  duv->add_option("--u", uv_u)->required();
  duv->add_option("--v", uv_v)->required();
  unsigned ik_k = 0, ik_n = 0, ik_m = 0;
  u64 ik_ell = 0;
  std::optional<unsigned> ik_det;
  auto* dik = density->add_subcommand("ikeda", "delta_F(ell^m) for the Ikeda lift of degree n, weight k");
  dik->add_option("--k", ik_k, "Siegel weight")->required();
  dik->add_option("--n", ik_n, "Siegel degree")->required();
  dik->add_option("--ell", ik_ell)->required();
  dik->add_option("--m", ik_m)->required();
  dik->add_option("--det-weight", ik_det, "Determinant weight (default 2k-n, the weight of f)");

  // scan
  auto* scan = app.add_subcommand("scan", "Empirical scans over eigenform coefficients");
  scan->require_subcommand(1);
  scan->fallthrough();
  unsigned sc_weight = 0, sc_m = 0;
  u64 sc_ell = 0, sc_x = 0, sc_u = 0, sc_v = 0;
  std::string sc_csv;
  auto* pif = scan->add_subcommand("pif", "Full (u, v) table of pi_f(x, u, v; ell^m)");
  pif->add_option("--weight", sc_weight)->required();
  pif->add_option("--ell", sc_ell)->required();
  pif->add_option("--m", sc_m)->required();
  pif->add_option("--x", sc_x)->required();
  pif->add_option("--csv", sc_csv, "Write the table CSV here");
  auto* cell = scan->add_subcommand("pif-cell", "One cell of the pi_f table");
  cell->add_option("--weight", sc_weight)->required();
  cell->add_option("--ell", sc_ell)->required();
  cell->add_option("--m", sc_m)->required();
  cell->add_option("--x", sc_x)->required();
  cell->add_option("--u", sc_u)->required();
  cell->add_option("--v", sc_v)->required();
  unsigned si_k = 0, si_n = 0, si_m = 0;
  u64 si_ell = 0, si_x = 0;
  auto* sik = scan->add_subcommand("ikeda", "pi_F(x, ell^m) for an Ikeda lift");
  sik->add_option("--k", si_k)->required();
  sik->add_option("--n", si_n)->required();
  sik->add_option("--ell", si_ell)->required();
  sik->add_option("--m", si_m)->required();
  sik->add_option("--x", si_x)->required();

  // verify
  std::string level = "quick";
  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify", "Run the self-verification suite");
  verify->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--inject-fault", inject_fault, "Corrupt formula counts by one (oracle demo)")
      ->group("");

  std::vector<const char*> argv{"hecke"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    const RunConfig cfg = resolve(g, sub);

    if (*tower) {
      const auto rep = tower_report(tower_k, tower_ell, tower_max_m);
      if (format_or(cfg, OutputFormat::csv) == OutputFormat::json) {
        io::Json j;
        j["k"] = rep.k;
        j["ell"] = rep.ell;
        j["levels"] = io::Json::array();
        for (const auto& lv : rep.levels) {
          j["levels"].push_back({{"m", lv.m}, {"r", lv.r}, {"deg_A", lv.deg_A}, {"index", lv.index},
                                 {"image_size", lv.image_size.get_str()}, {"L_degree", lv.L_degree.get_str()}});
        }
        j["caveat"] = rep.caveat;
        if (cfg.timestamp) j["timestamp"] = stamp(cfg);
        out << j.dump() << "\n";
      } else {
        out << tower_csv(rep);
      }
      return kExitOk;
    }

    if (*count) {
      const PrimePower mod(count_ell, count_m);
      const auto profile = z_profile(mod, count_t, count_d);
      const TraceDetCount formula = count_trace_det(mod, count_t, count_d);
      std::optional<TraceDetCount> brute;
      if (count_brute) brute = count_trace_det_brute(mod, count_t, count_d);
      if (format_or(cfg, OutputFormat::csv) == OutputFormat::json) {
        io::Json j;
        j["ell"] = count_ell;
        j["m"] = count_m;
        j["t"] = formula.t;
        j["d"] = formula.d;
        j["formula"] = formula.count;
        if (brute) j["brute"] = brute->count;
        j["z_profile"] = profile.z;
        if (cfg.timestamp) j["timestamp"] = stamp(cfg);
        out << j.dump() << "\n";
      } else {
        out << io::count_csv(formula, brute ? &*brute : nullptr, profile);
      }
      if (brute && brute->count != formula.count) {
        err << "error: formula and brute-force counts disagree\n";
        return kExitVerifyFailed;
      }
      return kExitOk;
    }

    if (*density) {
      DensityReport rep = *duv ? delta_uv_generic(uv_k, PrimePower(uv_ell, uv_m), uv_u, uv_v)
                               : delta_F_generic(LiftParams(ik_k, ik_n), PrimePower(ik_ell, ik_m), ik_det,
                                                 cfg.threads);
      switch (format_or(cfg, OutputFormat::plain)) {
        case OutputFormat::json: out << io::density_json(rep, stamp(cfg)).dump() << "\n"; break;
        case OutputFormat::csv:
          out << "num,den,decimal\n"
              << rep.delta_exact.num_str() << ',' << rep.delta_exact.den_str() << ','
              << rep.delta_exact.decimal() << "\n";
          break;
        case OutputFormat::plain: out << io::density_plain(rep); break;
      }
      return kExitOk;
    }

    if (*scan) {
      ScanOptions opts{cfg.threads, CachePolicy{cfg.cache_dir}};
      if (*pif || *cell) {
        const PiFTable table = scan_pi_f(sc_weight, PrimePower(sc_ell, sc_m), sc_x, opts);
        const TableAnalysis a = analyze_table(table);
        if (*cell) {
          const DensityReport d = delta_uv_generic(sc_weight, table.modulus(), sc_u, sc_v);
          const u64 obs = table.count(sc_u, sc_v);
          const double sig = binomial_sigmas(obs, d.delta_exact.to_double(), table.pi_x());
          io::Json j;
          j["mode"] = "pi_f_cell";
          j["weight"] = sc_weight;
          j["ell"] = sc_ell;
          j["m"] = sc_m;
          j["x"] = sc_x;
          j["u"] = d.u;
          j["v"] = d.v;
          j["count"] = obs;
          j["pi_x"] = table.pi_x();
          j["expected"] = io::rational_json(d.delta_exact);
          j["sigmas"] = io::format_double(sig);
          j["verdict"] = verdict_name(classify(std::abs(sig)));
          j["grh_scale"] = a.grh_scale;
          if (cfg.timestamp) j["timestamp"] = stamp(cfg);
          if (format_or(cfg, OutputFormat::json) == OutputFormat::csv) {
            out << "u,v,count,expected_num,expected_den,sigmas\n"
                << d.u << ',' << d.v << ',' << obs << ',' << d.delta_exact.num_str() << ','
                << d.delta_exact.den_str() << ',' << io::format_double(sig) << "\n";
          } else {
            out << j.dump() << "\n";
          }
          return kExitOk;
        }
        if (!sc_csv.empty()) {
          std::ofstream f(sc_csv, std::ios::binary | std::ios::trunc);
          if (!f) throw Error("cannot write " + sc_csv);
          f << io::table_csv(a);
        }
        if (format_or(cfg, OutputFormat::json) == OutputFormat::csv) {
          out << io::table_csv(a);
        } else {
          out << io::table_summary_json(table, a, stamp(cfg)).dump() << "\n";
        }
        return kExitOk;
      }
      const IkedaScan s = scan_pi_F(LiftParams(si_k, si_n), PrimePower(si_ell, si_m), si_x, opts);
      out << io::ikeda_scan_json(s, stamp(cfg)).dump() << "\n";
      if (s.direct_count != s.root_set_count) {
        err << "error: direct count and root-set reduction disagree\n";
        return kExitVerifyFailed;
      }
      return kExitOk;
    }

    if (*verify) {
      const auto results = run_verification(
          {level == "full" ? VerifyLevel::full : VerifyLevel::quick, cfg.threads, inject_fault});
      bool ok = true;
      for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n";
        ok = ok && r.pass;
      }
      out << (ok ? "all checks passed" : "verification FAILED") << "\n";
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuard;
  }
  return kExitUsage;
}

}  // namespace hecke::cli
