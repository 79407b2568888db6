#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mcs/model.hpp"
#include "mcs/protocol.hpp"
#include "mcs/random.hpp"

namespace mcs {

struct AgentParams {
  double lambda = 0.1;           // probability of repeating the previous type
  double free_threshold = 0.5;   // rejection counter level that triggers a free offer
  int free_horizon = 30;         // rejections are counted only while t < free_horizon
  double exploration_scale = 1.0;  // exploration rate min(1, scale / t)
  // Increment added to the rejection counter after a rejection in round t.
  std::function<double(int)> rejection_increment = [](int t) { return 1.0 / t; };

  double exploration_rate(int round) const;
};

// The MU's own cost function, known to the MU.
struct CostModel {
  double cost_time = 0.0;
  double cost_energy = 0.0;
  double payment_factor = 1.1;

  double payment_for(double time_s, double energy_j) const;
};

struct Observation {
  double utility = 0.0;
  EffortSample effort;
};

struct AgentState {
  int mu_id = 0;
  std::vector<double> util_estimate;
  std::vector<double> time_estimate;    // mean total time, seconds
  std::vector<double> energy_estimate;  // mean energy, joules
  std::vector<int> assign_count;        // accepted-and-executed tasks per type
  std::vector<int> reward_count;        // samples behind util_estimate
  std::vector<double> rejection_counter;
  std::optional<SensingOffer> last_offer;
  std::optional<int> held_type;  // type executed in the previous round

  AgentState() = default;
  AgentState(int mu, int num_types);
  int num_types() const { return static_cast<int>(util_estimate.size()); }
  double estimated_payment(int type_id, const CostModel& cost) const;
};

// Decision process of one MU. An agent sees nothing but the published
// board, the platform's response to its own offer, and its own realized
// utility and effort.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual SensingOffer offer(const PublishedBoard& board, int round) = 0;
  // `observed` must be present exactly when the response is an acceptance.
  virtual void update(const McspResponse& response, const std::optional<Observation>& observed,
                      int round) = 0;
  virtual const AgentState& state() const = 0;
};

// Collision-avoidance bandit with strategic free sensing.
class CaMabSfsAgent final : public Agent {
 public:
  CaMabSfsAgent(int mu_id, int num_types, CostModel cost, AgentParams params,
                std::uint64_t seed);

  SensingOffer offer(const PublishedBoard& board, int round) override;
  void update(const McspResponse& response, const std::optional<Observation>& observed,
              int round) override;
  const AgentState& state() const override { return state_; }

  // Proposal per type for this round, before plausibility filtering.
  std::vector<double> proposals(int round) const;
  bool is_free_offer(int type_id, int round) const;

 private:
  AgentState state_;
  CostModel cost_;
  AgentParams params_;
  RandomStream rng_;
};

// Decaying epsilon-greedy over all types. A rejection counts as a zero
// utility sample; effort estimates move only on acceptance.
class EpsGreedyAgent final : public Agent {
 public:
  EpsGreedyAgent(int mu_id, int num_types, CostModel cost, AgentParams params,
                 std::uint64_t seed);

  SensingOffer offer(const PublishedBoard& board, int round) override;
  void update(const McspResponse& response, const std::optional<Observation>& observed,
              int round) override;
  const AgentState& state() const override { return state_; }

 private:
  AgentState state_;
  CostModel cost_;
  AgentParams params_;
  RandomStream rng_;
};

// Uniformly random type, priced from the mean past effort on that type.
class McspStrategicAgent final : public Agent {
 public:
  McspStrategicAgent(int mu_id, int num_types, CostModel cost, std::uint64_t seed);

  SensingOffer offer(const PublishedBoard& board, int round) override;
  void update(const McspResponse& response, const std::optional<Observation>& observed,
              int round) override;
  const AgentState& state() const override { return state_; }

 private:
  AgentState state_;
  CostModel cost_;
  RandomStream rng_;
};

// Applies an accepted observation to the running means of `type_id`.
void record_observation(AgentState& state, int type_id, const Observation& observed);

}  // namespace mcs
