#include "hecke/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>

namespace hecke::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

u64 to_u64(const std::string& s) {
  std::size_t pos = 0;
  const u64 v = std::stoull(s, &pos);
  if (pos != s.size()) throw DomainError("bad integer '" + s + "'");
  return v;
}

Json envelope_json(const DecayEnvelope& e) {
  Json j;
  j["coefficient"] = rational_json(e.coefficient);
  j["ell"] = e.ell;
  j["exponent"] = rational_json(e.exponent);
  j["formula"] = e.formula;
  j["approx"] = e.approx();
  return j;
}

DecayEnvelope envelope_from_json(const Json& j) {
  return DecayEnvelope{rational_from_json(j.at("coefficient")), j.at("ell").get<u64>(),
                       rational_from_json(j.at("exponent")), j.at("formula").get<std::string>()};
}

}  // namespace

Json rational_json(const ExactRational& r) {
  Json j;
  j["num"] = r.num_str();
  j["den"] = r.den_str();
  j["decimal"] = r.decimal();
  return j;
}

ExactRational rational_from_json(const Json& j) {
  return ExactRational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

Json density_json(const DensityReport& r, const std::string& timestamp) {
  Json j;
  j["num"] = r.delta_exact.num_str();
  j["den"] = r.delta_exact.den_str();
  j["decimal"] = r.delta_exact.decimal();
  j["kind"] = r.kind == DensityKind::uv ? "uv" : "ikeda";
  j["det_weight"] = r.det_weight;
  if (r.kind == DensityKind::ikeda) {
    j["k"] = r.k;
    j["n"] = r.n;
  }
  j["ell"] = r.ell;
  j["m"] = r.m;
  if (r.kind == DensityKind::uv) {
    j["u"] = r.u;
    j["v"] = r.v;
  }
  j["main_term"] = rational_json(r.main_term);
  j["relative_error_bound"] = r.relative_error_bound ? rational_json(*r.relative_error_bound) : Json(nullptr);
  j["decay_bound"] = r.decay_bound ? envelope_json(*r.decay_bound) : Json(nullptr);
  j["within_envelopes"] = r.within_envelopes();
  j["caveats"] = r.caveats;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j;
}

DensityReport density_from_json(const Json& j) {
  DensityReport r{};
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "uv" && kind != "ikeda") throw DomainError("unknown density kind '" + kind + "'");
  r.kind = kind == "uv" ? DensityKind::uv : DensityKind::ikeda;
  r.det_weight = j.at("det_weight").get<unsigned>();
  if (r.kind == DensityKind::ikeda) {
    r.k = j.at("k").get<unsigned>();
    r.n = j.at("n").get<unsigned>();
  } else {
    r.u = j.at("u").get<u64>();
    r.v = j.at("v").get<u64>();
  }
  r.ell = j.at("ell").get<u64>();
  r.m = j.at("m").get<unsigned>();
  r.delta_exact = rational_from_json(j);
  r.main_term = rational_from_json(j.at("main_term"));
  if (!j.at("relative_error_bound").is_null()) r.relative_error_bound = rational_from_json(j.at("relative_error_bound"));
  if (!j.at("decay_bound").is_null()) r.decay_bound = envelope_from_json(j.at("decay_bound"));
  r.caveats = j.at("caveats").get<std::vector<std::string>>();
  return r;
}

std::string density_plain(const DensityReport& r) {
  std::ostringstream os;
  if (r.kind == DensityKind::uv) {
    os << "delta_{u,v}(" << r.ell << "^" << r.m << ") with u=" << r.u << " v=" << r.v
       << " det weight " << r.det_weight << "\n";
  } else {
    os << "delta_F(" << r.ell << "^" << r.m << ") for k=" << r.k << " n=" << r.n << " (det weight "
       << r.det_weight << ")\n";
  }
  os << "  exact      " << r.delta_exact << "  (" << r.delta_exact.decimal() << ")\n";
  os << "  main term  " << r.main_term << "  (" << r.main_term.decimal() << ")\n";
  if (r.relative_error_bound) {
    os << "  |delta/main - 1| <= " << *r.relative_error_bound << "\n";
  }
  if (r.decay_bound) {
    os << "  envelope   " << r.decay_bound->formula << " = " << r.decay_bound->approx() << "\n";
  }
  os << "  within envelopes: " << (r.within_envelopes() ? "yes" : "no") << "\n";
  for (const auto& c : r.caveats) os << "  note: " << c << "\n";
  return os.str();
}

std::vector<TowerLevel> parse_tower_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "m,r,deg_A,index,image_size,L_degree") {
    throw DomainError("bad tower CSV header");
  }
  std::vector<TowerLevel> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 6) throw DomainError("bad tower CSV row '" + line + "'");
    out.push_back({static_cast<unsigned>(to_u64(f[0])), to_u64(f[1]), to_u64(f[2]), to_u64(f[3]),
                   BigInt(f[4]), BigInt(f[5])});
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw DomainError("bad number '" + s + "'");
  return v;
}

std::string table_csv(const TableAnalysis& analysis) {
  std::string out = "u,v,count,expected_num,expected_den,sigmas\n";
  for (const auto& c : analysis.cells) {
    out += std::to_string(c.u) + ',' + std::to_string(c.v) + ',' + std::to_string(c.count) + ',' +
           c.expected.num_str() + ',' + c.expected.den_str() + ',' + format_double(c.sigmas) + '\n';
  }
  return out;
}

std::vector<CellStat> parse_table_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "u,v,count,expected_num,expected_den,sigmas") {
    throw DomainError("bad table CSV header");
  }
  std::vector<CellStat> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 6) throw DomainError("bad table CSV row '" + line + "'");
    out.push_back({to_u64(f[0]), to_u64(f[1]), to_u64(f[2]), ExactRational(BigInt(f[3]), BigInt(f[4])),
                   parse_double(f[5])});
  }
  return out;
}

Json table_summary_json(const PiFTable& table, const TableAnalysis& a, const std::string& timestamp) {
  Json j;
  j["mode"] = "pi_f_table";
  j["weight"] = table.weight();
  j["ell"] = table.modulus().ell();
  j["m"] = table.modulus().m();
  j["x"] = table.x();
  j["pi_x"] = table.pi_x();
  j["cells"] = a.cells.size();
  j["max_abs_sigmas"] = format_double(a.max_abs_sigmas);
  j["worst_cell"] = {{"u", a.worst.u}, {"v", a.worst.v}, {"count", a.worst.count},
                     {"expected", rational_json(a.worst.expected)}, {"sigmas", format_double(a.worst.sigmas)}};
  j["verdict"] = verdict_name(a.verdict);
  j["grh_scale"] = a.grh_scale;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j;
}

Json ikeda_scan_json(const IkedaScan& s, const std::string& timestamp) {
  Json j;
  j["mode"] = "pi_F";
  j["k"] = s.params.k();
  j["n"] = s.params.n();
  j["source_weight"] = s.params.source_weight();
  j["ell"] = s.modulus.ell();
  j["m"] = s.modulus.m();
  j["x"] = s.x;
  j["pi_x"] = s.pi_x;
  j["count"] = s.direct_count;
  j["root_set_count"] = s.root_set_count;
  j["empirical"] = rational_json(s.empirical);
  j["expected"] = density_json(s.expected);
  j["sigmas"] = format_double(s.sigmas);
  j["verdict"] = verdict_name(s.verdict);
  j["grh_scale"] = s.grh_scale;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j;
}

std::string count_csv(const TraceDetCount& formula, const TraceDetCount* brute, const ZProfile& profile) {
  std::string out = "formula," + std::to_string(formula.count) + "\n";
  if (brute) out += "brute," + std::to_string(brute->count) + "\n";
  out += "z_profile," + profile_csv(profile) + "\n";
  return out;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hecke::io
