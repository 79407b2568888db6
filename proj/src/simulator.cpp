#include "mcs/simulator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "mcs/agents.hpp"
#include "mcs/platform.hpp"

namespace mcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<SeriesField, 13> kFields = {
    &MetricsSeries::social_welfare,   &MetricsSeries::avg_completion_time,
    &MetricsSeries::energy_efficiency, &MetricsSeries::blocked_mus,
    &MetricsSeries::blocking_pairs,   &MetricsSeries::mean_regret,
    &MetricsSeries::mean_cumulative_regret, &MetricsSeries::free_offers,
    &MetricsSeries::free_offers_cumulative, &MetricsSeries::acceptance_rate,
    &MetricsSeries::mu_utility,       &MetricsSeries::mcsp_utility,
    &MetricsSeries::assigned,
};

std::vector<std::unique_ptr<Agent>> make_agents(const ScenarioConfig& config,
                                                const MarketSetup& market, Strategy strategy) {
  std::vector<std::unique_ptr<Agent>> agents;
  for (const MuProfile& mu : market.scenario.mus) {
    CostModel cost{mu.cost_time, mu.cost_energy, market.scenario.payment_factor};
    const std::uint64_t seed =
        mix_seed(market.seed, {static_cast<std::uint64_t>(StreamRole::kAgent),
                               static_cast<std::uint64_t>(mu.id)});
    const int z_count = market.scenario.num_types();
    switch (strategy) {
      case Strategy::kCaMabSfs:
        agents.push_back(std::make_unique<CaMabSfsAgent>(mu.id, z_count, cost, config.agent, seed));
        break;
      case Strategy::kEpsGreedy:
        agents.push_back(std::make_unique<EpsGreedyAgent>(mu.id, z_count, cost, config.agent, seed));
        break;
      case Strategy::kMcspStrategic:
        agents.push_back(std::make_unique<McspStrategicAgent>(mu.id, z_count, cost, seed));
        break;
      default:
        throw std::logic_error("offline strategies have no agents");
    }
  }
  return agents;
}

// Offline strategies replay a fixed MU -> type map every round.
std::vector<SensingOffer> oracle_offers(const MarketSetup& market, const TypeMatching& matching) {
  std::vector<SensingOffer> offers;
  for (std::size_t k = 0; k < matching.size(); ++k) {
    const int z = matching[k];
    if (z == kUnassigned) continue;
    const double expected_payment =
        market.scenario.payment_factor * market.truth.mean_cost(k, static_cast<std::size_t>(z));
    offers.push_back(SensingOffer{static_cast<int>(k), z, expected_payment, false});
  }
  return offers;
}

void append_nan_aware(std::vector<double>& mean, std::vector<double>& sd,
                      std::span<const MetricsSeries> runs, SeriesField field) {
  const std::size_t len = (runs.front().*field).size();
  mean.assign(len, kNaN);
  sd.assign(len, kNaN);
  for (std::size_t i = 0; i < len; ++i) {
    double total = 0.0;
    int n = 0;
    for (const auto& r : runs) {
      const double x = (r.*field)[i];
      if (std::isnan(x)) continue;
      total += x;
      ++n;
    }
    if (n == 0) continue;
    const double m = total / n;
    double ss = 0.0;
    for (const auto& r : runs) {
      const double x = (r.*field)[i];
      if (!std::isnan(x)) ss += (x - m) * (x - m);
    }
    mean[i] = m;
    sd[i] = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  }
}

}  // namespace

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kCaMabSfs: return "ca-mab-sfs";
    case Strategy::kEpsGreedy: return "eps-greedy";
    case Strategy::kMcspStrategic: return "mcsp-strategic";
    case Strategy::kOfflineDeferredAcceptance: return "o-daa";
    case Strategy::kOfflineWelfareMax: return "o-swm";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : all_strategies()) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Strategy> all_strategies() {
  return {Strategy::kCaMabSfs, Strategy::kEpsGreedy, Strategy::kMcspStrategic,
          Strategy::kOfflineDeferredAcceptance, Strategy::kOfflineWelfareMax};
}

bool is_learning(Strategy s) {
  return s == Strategy::kCaMabSfs || s == Strategy::kEpsGreedy || s == Strategy::kMcspStrategic;
}

std::span<const SeriesField> series_fields() { return kFields; }

std::uint64_t replication_seed(std::uint64_t master_seed, int replication) {
  return mix_seed(master_seed, {static_cast<std::uint64_t>(replication)});
}

MarketSetup prepare_market(const ScenarioConfig& config, std::uint64_t seed) {
  MarketSetup m;
  m.seed = seed;
  m.scenario = build_scenario(
      config, mix_seed(seed, {static_cast<std::uint64_t>(StreamRole::kScenario)}));
  m.truth = ground_truth_expectations(
      m.scenario, config.truth_samples,
      mix_seed(seed, {static_cast<std::uint64_t>(StreamRole::kGroundTruth)}));
  m.prefs = PreferenceProfile::from_expectations(m.truth);
  m.capacities = m.scenario.capacities();
  m.stable = deferred_acceptance(m.prefs, m.capacities);
  m.stable_utility = stable_utilities(m.stable, m.truth.mu_utility);
  m.optimum = max_social_welfare(m.truth, m.capacities);
  return m;
}

MetricsSeries simulate(const ScenarioConfig& config, const MarketSetup& market, Strategy strategy,
                       const RoundObserver& observer) {
  const Scenario& sc = market.scenario;
  const int k_count = sc.num_mus();
  const auto ku = static_cast<std::size_t>(k_count);

  std::vector<double> earnings;
  for (const TaskType& t : sc.types) earnings.push_back(t.earning);

  RandomStream environment(
      mix_seed(market.seed, {static_cast<std::uint64_t>(StreamRole::kEnvironment)}));
  std::vector<RandomStream> effort_streams;
  for (int k = 0; k < k_count; ++k) {
    effort_streams.emplace_back(mix_seed(
        market.seed,
        {static_cast<std::uint64_t>(StreamRole::kMuEffort), static_cast<std::uint64_t>(k)}));
  }

  std::vector<std::unique_ptr<Agent>> agents;
  std::vector<SensingOffer> fixed_offers;
  if (is_learning(strategy)) {
    agents = make_agents(config, market, strategy);
  } else {
    fixed_offers = oracle_offers(market, strategy == Strategy::kOfflineDeferredAcceptance
                                             ? market.stable
                                             : market.optimum.matching);
  }

  MetricsSeries series;
  for (SeriesField f : kFields) (series.*f).reserve(static_cast<std::size_t>(config.rounds));

  std::optional<Assignment> previous;
  double free_total = 0.0;
  double regret_total = 0.0;
  std::vector<std::uint64_t> round_seed(ku);

  for (int t = 1; t <= config.rounds; ++t) {
    const PublishedBoard board =
        publish(sc.types, previous ? &*previous : nullptr, t, sc.noise, environment);

    std::vector<SensingOffer> offers;
    if (is_learning(strategy)) {
      offers.reserve(ku);
      for (auto& agent : agents) offers.push_back(agent->offer(board, t));
    } else {
      offers = fixed_offers;
    }

    AllocationResult alloc = allocate(board, offers, earnings);

    RoundRecord rec;
    rec.round = t;
    rec.mus.resize(ku);
    for (const SensingOffer& o : offers) {
      MuOutcome& m = rec.mus[static_cast<std::size_t>(o.mu_id)];
      m.offered = true;
      m.offered_type = o.type_id;
      m.free_offer = o.is_free;
    }
    for (std::size_t k = 0; k < ku; ++k) round_seed[k] = effort_streams[k].next_seed();

    for (const AssignedPair& p : alloc.assignment.pairs) {
      const auto k = static_cast<std::size_t>(p.mu_id);
      const MuProfile& mu = sc.mus[k];
      const TaskType& type = sc.types[static_cast<std::size_t>(p.type_id)];
      const TaskInstance& task = board.tasks[static_cast<std::size_t>(p.task_id)];
      RandomStream draw(round_seed[k]);
      MuOutcome& m = rec.mus[k];
      m.accepted = true;
      m.task_id = p.task_id;
      m.type_id = p.type_id;
      m.result_size_mbit = task.result_size_mbit;
      m.effort = sample_effort(mu, type, task, sc.noise, draw);
      m.cost = effort_cost(mu, m.effort);
      m.payment = sc.payment_mode == PaymentMode::kEffort ? sc.payment_factor * m.cost
                                                          : p.proposed_payment;
      m.mu_utility = mcs::mu_utility(m.payment, m.effort, m.cost);
      m.mcsp_utility = mcs::mcsp_utility(type.earning, m.payment, m.effort);
    }

    if (is_learning(strategy)) {
      for (std::size_t i = 0; i < offers.size(); ++i) {
        const McspResponse& response = alloc.responses[i];
        const MuOutcome& m = rec.mus[static_cast<std::size_t>(response.mu_id)];
        std::optional<Observation> observed;
        if (response.accepted()) observed = Observation{m.mu_utility, m.effort};
        agents[static_cast<std::size_t>(response.mu_id)]->update(response, observed, t);
      }
    }

    const TypeMatching matching = alloc.assignment.type_of_mu(k_count);
    const BlockingCount blocking = count_blocking_pairs(matching, market.prefs, market.capacities);
    double regret = 0.0;
    double mu_sum = 0.0;
    double mcsp_sum = 0.0;
    for (int k = 0; k < k_count; ++k) {
      regret += instantaneous_regret(k, matching, market.truth.mu_utility, market.stable_utility);
      const MuOutcome& m = rec.mus[static_cast<std::size_t>(k)];
      if (m.accepted) {
        mu_sum += m.mu_utility;
        mcsp_sum += m.mcsp_utility;
      }
    }
    regret /= k_count;
    regret_total += regret;
    rec.offers = std::move(offers);
    const double free_now = rec.num_free_offers();
    free_total += free_now;

    series.social_welfare.push_back(social_welfare(rec));
    series.avg_completion_time.push_back(avg_completion_time(rec));
    series.energy_efficiency.push_back(energy_efficiency(rec));
    series.blocked_mus.push_back(blocking.blocked_mus);
    series.blocking_pairs.push_back(blocking.pairs);
    series.mean_regret.push_back(regret);
    series.mean_cumulative_regret.push_back(regret_total);
    series.free_offers.push_back(free_now);
    series.free_offers_cumulative.push_back(free_total);
    series.acceptance_rate.push_back(
        rec.offers.empty() ? kNaN
                           : static_cast<double>(alloc.assignment.pairs.size()) /
                                 static_cast<double>(rec.offers.size()));
    series.mu_utility.push_back(mu_sum);
    series.mcsp_utility.push_back(mcsp_sum);
    series.assigned.push_back(static_cast<double>(alloc.assignment.pairs.size()));

    rec.assignment = alloc.assignment;
    if (observer) observer(rec);
    previous = std::move(alloc.assignment);
  }
  return series;
}

MetricsSeries run(const ScenarioConfig& config, Strategy strategy, std::uint64_t seed) {
  return simulate(config, prepare_market(config, seed), strategy);
}

const StrategyAggregate& CampaignResult::at(Strategy s) const {
  for (const auto& agg : strategies) {
    if (agg.strategy == s) return agg;
  }
  throw std::out_of_range("strategy not part of campaign");
}

CampaignResult run_campaign(const ScenarioConfig& config, std::span<const Strategy> strategies,
                            int replications, int threads) {
  validate(config);
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  const auto reps = static_cast<std::size_t>(replications);

  std::vector<std::vector<MetricsSeries>> per_rep(reps);
  CampaignResult result;
  result.optimum_welfare.resize(reps);
  result.stable_welfare.resize(reps);
  result.bounds.resize(reps);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      const MarketSetup market = prepare_market(config, replication_seed(config.seed, static_cast<int>(r)));
      result.optimum_welfare[r] = market.optimum.welfare;
      Matrix welfare(market.truth.mu_utility.rows(), market.truth.mu_utility.cols());
      for (std::size_t k = 0; k < welfare.rows(); ++k) {
        for (std::size_t z = 0; z < welfare.cols(); ++z) {
          welfare(k, z) = market.truth.mu_utility(k, z) + market.truth.mcsp_utility(k, z);
        }
      }
      result.stable_welfare[r] = matching_weight(market.stable, welfare);
      result.bounds[r] =
          bound_params(market.truth.mu_utility, market.stable_utility, config.agent.lambda);
      for (Strategy s : strategies) per_rep[r].push_back(simulate(config, market, s));
    }
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(reps));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < strategies.size(); ++i) {
    StrategyAggregate agg;
    agg.strategy = strategies[i];
    for (std::size_t r = 0; r < reps; ++r) agg.runs.push_back(std::move(per_rep[r][i]));
    agg.mean = mean_series(agg.runs);
    agg.stddev = stddev_series(agg.runs);
    result.strategies.push_back(std::move(agg));
  }
  return result;
}

MetricsSeries mean_series(std::span<const MetricsSeries> runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to aggregate");
  MetricsSeries mean, sd;
  for (SeriesField f : kFields) append_nan_aware(mean.*f, sd.*f, runs, f);
  return mean;
}

MetricsSeries stddev_series(std::span<const MetricsSeries> runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to aggregate");
  MetricsSeries mean, sd;
  for (SeriesField f : kFields) append_nan_aware(mean.*f, sd.*f, runs, f);
  return sd;
}

}  // namespace mcs
