#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace flipbench::cli {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

enum class Exit : int { ok = 0, usage = 1, disagreement = 2 };

struct RunConfig {
  std::string command;
  std::optional<std::string> field;  // field spec, e.g. `Fq:9`, `Q`, `Q(sqrt:-1)`
  std::optional<std::uint32_t> q;
  std::optional<std::uint32_t> max_q;
  std::optional<std::string> sigma;
  std::optional<std::string> delta;
  std::string group = "both";  // sl2, psl2 or both
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::string quat = "-1,-1";
  std::optional<std::string> moufang_set;  // `M(Fq:7)`
  bool verify_all = false;
  std::optional<std::string> matrix;
  std::uint64_t max_group_order = 30000;
  bool timing = false;
};

/// The inputs that determine a report, in a fixed key order. Output paths and
/// the cache directory are excluded so they never perturb the report.
Json config_json(const RunConfig& cfg);

/// FNV-1a over the canonical config dump and the schema version, as 16 hex digits.
std::string config_key(const RunConfig& cfg);

/// Runs one subcommand. The report carries "summary.exit_code".
/// Throws flipbench::Error for invalid configurations.
Json run(const RunConfig& cfg);

/// Human-oriented lines for stdout; not part of the machine contract.
std::string text_summary(const Json& report);

}  // namespace flipbench::cli
