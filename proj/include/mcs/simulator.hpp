#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcs/config.hpp"
#include "mcs/matching.hpp"
#include "mcs/metrics.hpp"
#include "mcs/model.hpp"

namespace mcs {

enum class Strategy {
  kCaMabSfs,
  kEpsGreedy,
  kMcspStrategic,
  kOfflineDeferredAcceptance,
  kOfflineWelfareMax,
};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);
std::vector<Strategy> all_strategies();
bool is_learning(Strategy s);

// Per-round metric series of one run (index t-1 holds round t).
struct MetricsSeries {
  std::vector<double> social_welfare;
  std::vector<double> avg_completion_time;
  std::vector<double> energy_efficiency;
  std::vector<double> blocked_mus;
  std::vector<double> blocking_pairs;
  std::vector<double> mean_regret;
  std::vector<double> mean_cumulative_regret;
  std::vector<double> free_offers;
  std::vector<double> free_offers_cumulative;
  std::vector<double> acceptance_rate;
  std::vector<double> mu_utility;
  std::vector<double> mcsp_utility;
  std::vector<double> assigned;

  std::size_t rounds() const { return social_welfare.size(); }
  bool operator==(const MetricsSeries&) const = default;
};

using SeriesField = std::vector<double> MetricsSeries::*;
std::span<const SeriesField> series_fields();

// Everything fixed for one replication: the drawn market and its
// complete-information reference solutions.
struct MarketSetup {
  std::uint64_t seed = 0;
  Scenario scenario;
  ExpectationTable truth;
  PreferenceProfile prefs;
  std::vector<int> capacities;
  TypeMatching stable;                 // MU-optimal stable matching
  std::vector<double> stable_utility;  // expected MU utility under `stable`
  WelfareMatching optimum;             // expected-welfare maximizer
};

std::uint64_t replication_seed(std::uint64_t master_seed, int replication);
MarketSetup prepare_market(const ScenarioConfig& config, std::uint64_t seed);

using RoundObserver = std::function<void(const RoundRecord&)>;

// Runs config.rounds rounds of one strategy on a prepared market.
// Environment draws (task sizes, per-MU effort) come from streams that do
// not depend on the strategy, so strategies see paired randomness.
MetricsSeries simulate(const ScenarioConfig& config, const MarketSetup& market, Strategy strategy,
                       const RoundObserver& observer = {});

MetricsSeries run(const ScenarioConfig& config, Strategy strategy, std::uint64_t seed);

struct StrategyAggregate {
  Strategy strategy = Strategy::kCaMabSfs;
  MetricsSeries mean;
  MetricsSeries stddev;
  std::vector<MetricsSeries> runs;  // one per replication
};

struct CampaignResult {
  std::vector<StrategyAggregate> strategies;
  std::vector<double> optimum_welfare;  // expected optimum per replication
  std::vector<double> stable_welfare;   // expected welfare of the stable matching
  std::vector<BoundParams> bounds;      // per replication

  const StrategyAggregate& at(Strategy s) const;
};

// Replication r uses replication_seed(config.seed, r). Replications run on
// up to `threads` workers (0 = hardware concurrency); results do not depend
// on the thread count.
CampaignResult run_campaign(const ScenarioConfig& config, std::span<const Strategy> strategies,
                            int replications, int threads = 0);

// Element-wise mean and sample standard deviation; NaN entries are skipped.
MetricsSeries mean_series(std::span<const MetricsSeries> runs);
MetricsSeries stddev_series(std::span<const MetricsSeries> runs);

}  // namespace mcs
