#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "mcs/simulator.hpp"

using namespace mcs;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.num_mus = 6;
  c.num_types = 3;
  c.total_tasks = 6;
  c.rounds = 120;
  c.replications = 2;
  c.seed = 314;
  return c;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("strategy names round-trip") {
  for (Strategy s : all_strategies()) CHECK(parse_strategy(strategy_name(s)) == s);
  CHECK(parse_strategy("ca-mab-sfs") == Strategy::kCaMabSfs);
  CHECK_FALSE(parse_strategy("random").has_value());
  CHECK(is_learning(Strategy::kEpsGreedy));
  CHECK_FALSE(is_learning(Strategy::kOfflineWelfareMax));
}

TEST_CASE("prepared market is consistent") {
  ScenarioConfig c = small_config();
  MarketSetup m = prepare_market(c, 9);
  CHECK(m.capacities == m.scenario.capacities());
  CHECK(is_stable(m.stable, m.prefs, m.capacities));
  CHECK(m.optimum.welfare >=
        matching_weight(m.stable, m.truth.mu_utility) +
            matching_weight(m.stable, m.truth.mcsp_utility) - 1e-9);
}

TEST_CASE("offline deferred acceptance is never blocked") {
  ScenarioConfig c = small_config();
  MetricsSeries s = run(c, Strategy::kOfflineDeferredAcceptance, 5);
  REQUIRE(s.rounds() == 120);
  for (double b : s.blocked_mus) CHECK(b == 0.0);
  for (double r : s.mean_regret) CHECK(r == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("offline welfare maximization realizes the oracle welfare") {
  ScenarioConfig c = small_config();
  c.rounds = 2000;
  MarketSetup m = prepare_market(c, 21);
  MetricsSeries s = simulate(c, m, Strategy::kOfflineWelfareMax);
  const double se = stddev(s.social_welfare) / std::sqrt(static_cast<double>(s.rounds()));
  double truth_se = 0.0;
  for (std::size_t k = 0; k < m.optimum.matching.size(); ++k) {
    const int z = m.optimum.matching[k];
    if (z == kUnassigned) continue;
    truth_se += std::pow(m.truth.mu_utility_se(k, z), 2) + std::pow(m.truth.mcsp_utility_se(k, z), 2);
  }
  CHECK(std::abs(mean(s.social_welfare) - m.optimum.welfare) <=
        3.0 * std::sqrt(se * se + truth_se));
}

TEST_CASE("round invariants hold for every strategy") {
  ScenarioConfig c = small_config();
  MarketSetup m = prepare_market(c, 3);
  const int tasks = m.scenario.num_tasks();
  for (Strategy strategy : all_strategies()) {
    simulate(c, m, strategy, [&](const RoundRecord& r) {
      CHECK(r.num_accepted() <= tasks);
      CHECK(static_cast<int>(r.offers.size()) <= c.num_mus);
      std::vector<int> per_type(static_cast<std::size_t>(c.num_types), 0);
      std::vector<int> seen(static_cast<std::size_t>(c.num_mus), 0);
      for (const AssignedPair& p : r.assignment.pairs) {
        ++per_type[p.type_id];
        CHECK(++seen[p.mu_id] == 1);
        CHECK(r.mus[p.mu_id].offered_type == p.type_id);
      }
      for (int z = 0; z < c.num_types; ++z) CHECK(per_type[z] <= m.capacities[z]);
      for (const SensingOffer& o : r.offers) {
        if (o.is_free) CHECK(o.proposed_payment == 0.0);
      }
    });
  }
}

TEST_CASE("identical seeds give identical series") {
  ScenarioConfig c = small_config();
  for (Strategy s : all_strategies()) CHECK(run(c, s, 77) == run(c, s, 77));
  CHECK_FALSE(run(c, Strategy::kCaMabSfs, 77) == run(c, Strategy::kCaMabSfs, 78));
}

TEST_CASE("campaign aggregation") {
  ScenarioConfig c = small_config();
  std::vector<Strategy> ca{Strategy::kCaMabSfs};
  CampaignResult one = run_campaign(c, ca, 1, 1);
  const StrategyAggregate& agg = one.at(Strategy::kCaMabSfs);
  CHECK(agg.mean == run(c, Strategy::kCaMabSfs, replication_seed(c.seed, 0)));
  for (double v : agg.stddev.social_welfare) CHECK((v == 0.0 || std::isnan(v)));

  CampaignResult serial = run_campaign(c, ca, 3, 1);
  CampaignResult parallel = run_campaign(c, ca, 3, 3);
  CHECK(serial.at(Strategy::kCaMabSfs).mean == parallel.at(Strategy::kCaMabSfs).mean);
  CHECK(serial.optimum_welfare == parallel.optimum_welfare);
}

TEST_CASE("element-wise mean and standard deviation") {
  MetricsSeries a, b;
  a.social_welfare = {1.0, 2.0, NAN};
  b.social_welfare = {3.0, 6.0, 5.0};
  for (MetricsSeries* s : {&a, &b}) {
    for (SeriesField f : series_fields()) {
      if (f != &MetricsSeries::social_welfare) (s->*f).assign(3, 1.0);
    }
  }
  std::vector<MetricsSeries> runs{a, b};
  MetricsSeries m = mean_series(runs);
  MetricsSeries sd = stddev_series(runs);
  CHECK(m.social_welfare[0] == 2.0);
  CHECK(m.social_welfare[1] == 4.0);
  CHECK(m.social_welfare[2] == 5.0);
  CHECK(sd.social_welfare[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(sd.social_welfare[1] == doctest::Approx(std::sqrt(8.0)));
  CHECK(sd.assigned[0] == 0.0);
}

TEST_CASE("noise-free market gives zero spread across identical replications") {
  ScenarioConfig c = small_config();
  c.noise = NoiseModel{0.0, 0.0, 0.0, 0.0};
  c.sense_time_s = {100.0, 100.0};
  c.cpu_freq_hz = {1.5e9, 1.5e9};
  c.comm_s_per_mbit = {0.05, 0.05};
  c.result_size_mbit = {60.0, 60.0};
  c.complexity_cycles_per_bit = {250.0, 250.0};
  std::vector<Strategy> o{Strategy::kOfflineWelfareMax};
  CampaignResult r = run_campaign(c, o, 3, 1);
  for (double v : r.at(Strategy::kOfflineWelfareMax).stddev.social_welfare) CHECK(v == 0.0);
}

}  // TEST_SUITE
