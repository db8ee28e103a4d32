#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "permrf/gf_core.hpp"

namespace permrf::cli {

/// Parsed command line. Fields that a subcommand does not use keep their defaults.
struct RunConfig {
  std::string command;  // field | check | classify | factor | points | weil | verify
  std::string field;    // "p^m:n"
  std::optional<std::uint64_t> b;
  std::optional<std::uint64_t> c;
  std::vector<std::uint64_t> L;  // empty: L(x) = x
  std::string method = "pairwise";
  bool all_b = false;
  std::string which = "f2";
  std::optional<unsigned> degree;
  std::optional<std::uint64_t> weil_q;
  std::string suite;
  std::vector<std::uint64_t> qs;
  std::vector<unsigned> ns;
  std::optional<std::string> mode;
  std::optional<unsigned> samples;

  std::uint64_t seed = 0;
  std::uint64_t size_budget = kDefaultSizeBudget;
  unsigned workers = 1;
  std::vector<std::uint32_t> modulus_g;
  std::vector<std::uint32_t> modulus_h;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
  bool pretty = false;
  bool timing = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Parses argv without the program name. Returns nullopt after printing help
/// to `out`; malformed input throws Error(Errc::usage).
std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out);

/// Executes a parsed config, writing the JSON report to `out`. Returns the exit code.
int execute(const RunConfig& cfg, std::ostream& out);

/// 0 on success or pass, 1 when an assertive suite fails, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace permrf::cli
