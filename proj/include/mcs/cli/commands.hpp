#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcs/config.hpp"
#include "mcs/simulator.hpp"

namespace mcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kCsvSchemaVersion = 1;

// Fixed metrics.csv header, in column order.
std::span<const std::string_view> csv_columns();

// One configuration run against a set of strategies. A non-empty variant
// tags its rows as "strategy[variant]" in the CSV.
struct Campaign {
  std::string variant;
  ScenarioConfig config;
  std::vector<Strategy> strategies;
  CampaignResult result;
};

std::string strategy_label(Strategy s, std::string_view variant);

void write_metrics_csv(std::ostream& out, std::span<const Campaign> campaigns);

nlohmann::json summarize(std::string_view command, std::span<const Campaign> campaigns);

// Runs every campaign in place.
void execute(std::span<Campaign> campaigns, int threads);

// Writes <dir>/metrics.csv and <dir>/summary.json, creating dir.
void write_outputs(const std::filesystem::path& dir, std::string_view command,
                   std::span<const Campaign> campaigns);

// Seed precedence: explicit flag, then the MCS_SEED environment variable,
// then the configured seed. Throws ConfigError on a malformed MCS_SEED.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::uint64_t configured);

// Parses a comma-separated strategy list; throws ConfigError on unknown
// names. An empty list selects every strategy.
std::vector<Strategy> parse_strategies(std::string_view list);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<int> rounds;
  int threads = 0;
};

struct RunOptions {
  std::filesystem::path config;
  std::string strategies;
  std::filesystem::path out = "results";
  Overrides overrides;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

struct Preset {
  std::string figure;
  std::string description;
  std::vector<Campaign> campaigns;  // not yet executed
};

std::vector<std::string> preset_ids();
std::optional<Preset> figure_preset(std::string_view figure);

struct ScenarioOptions {
  std::string figure;
  std::filesystem::path out = "results";
  Overrides overrides;
};

int cmd_scenarios(const ScenarioOptions& options, std::ostream& out, std::ostream& err);

int cmd_verify(bool small, std::ostream& out);

// Text table of window means per campaign and strategy over the second half
// of the horizon, plus the expected optimum.
void print_headline(std::ostream& out, std::span<const Campaign> campaigns);

}  // namespace mcs::cli
