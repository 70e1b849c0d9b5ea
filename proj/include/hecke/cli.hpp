#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hecke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitVerifyFailed = 3;

enum class OutputFormat { csv, json, plain };

/// Resolved run settings. Precedence: flags > --config file > environment
/// (HECKE_CACHE_DIR, HECKE_THREADS) > defaults.
struct RunConfig {
  std::string subcommand;
  std::filesystem::path cache_dir = "./cache";
  bool format_set = false;
  OutputFormat format = OutputFormat::plain;
  unsigned threads = 1;
  bool timestamp = true;
};

/// Entry point behind the `hecke` binary; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hecke::cli
