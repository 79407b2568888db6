#include "mcs/agents.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcs {

namespace {

std::vector<int> available_types(const PublishedBoard& board) {
  std::vector<int> out;
  for (int z = 0; z < board.num_types(); ++z) {
    if (board.has_tasks(z)) out.push_back(z);
  }
  if (out.empty()) throw std::logic_error("board publishes no tasks");
  return out;
}

// Highest estimate among `candidates`; ties go to the lowest type index.
int argmax_estimate(const std::vector<double>& estimate, const std::vector<int>& candidates) {
  int best = candidates.front();
  for (int z : candidates) {
    if (estimate[static_cast<std::size_t>(z)] > estimate[static_cast<std::size_t>(best)]) best = z;
  }
  return best;
}

void check_observation(const McspResponse& response, const std::optional<Observation>& observed) {
  if (response.accepted() && !observed) {
    throw std::invalid_argument("accepted offer needs an observation");
  }
  if (!response.accepted() && observed) {
    throw std::invalid_argument("rejected offer cannot carry an observation");
  }
}

const SensingOffer& require_last_offer(const AgentState& state) {
  if (!state.last_offer) throw std::logic_error("update before any offer");
  return *state.last_offer;
}

}  // namespace

double AgentParams::exploration_rate(int round) const {
  return std::min(1.0, exploration_scale / static_cast<double>(round));
}

double CostModel::payment_for(double time_s, double energy_j) const {
  return payment_factor * effort_cost(cost_time, cost_energy, time_s, energy_j);
}

AgentState::AgentState(int mu, int num_types)
    : mu_id(mu),
      util_estimate(static_cast<std::size_t>(num_types), 0.0),
      time_estimate(static_cast<std::size_t>(num_types), 0.0),
      energy_estimate(static_cast<std::size_t>(num_types), 0.0),
      assign_count(static_cast<std::size_t>(num_types), 0),
      reward_count(static_cast<std::size_t>(num_types), 0),
      rejection_counter(static_cast<std::size_t>(num_types), 0.0) {}

double AgentState::estimated_payment(int type_id, const CostModel& cost) const {
  const auto z = static_cast<std::size_t>(type_id);
  return cost.payment_for(time_estimate[z], energy_estimate[z]);
}

void record_observation(AgentState& state, int type_id, const Observation& observed) {
  const auto z = static_cast<std::size_t>(type_id);
  const double n = ++state.assign_count[z];
  state.time_estimate[z] += (observed.effort.t_total - state.time_estimate[z]) / n;
  state.energy_estimate[z] += (observed.effort.energy - state.energy_estimate[z]) / n;
  const double m = ++state.reward_count[z];
  state.util_estimate[z] += (observed.utility - state.util_estimate[z]) / m;
}

// ---------------------------------------------------------------------------

CaMabSfsAgent::CaMabSfsAgent(int mu_id, int num_types, CostModel cost, AgentParams params,
                             std::uint64_t seed)
    : state_(mu_id, num_types), cost_(cost), params_(std::move(params)), rng_(seed) {}

bool CaMabSfsAgent::is_free_offer(int type_id, int round) const {
  return round <= params_.free_horizon &&
         state_.rejection_counter[static_cast<std::size_t>(type_id)] > params_.free_threshold;
}

std::vector<double> CaMabSfsAgent::proposals(int round) const {
  std::vector<double> out(static_cast<std::size_t>(state_.num_types()));
  for (int z = 0; z < state_.num_types(); ++z) {
    out[static_cast<std::size_t>(z)] =
        is_free_offer(z, round) ? 0.0 : state_.estimated_payment(z, cost_);
  }
  return out;
}

SensingOffer CaMabSfsAgent::offer(const PublishedBoard& board, int round) {
  const std::vector<int> available = available_types(board);
  const std::vector<double> proposal = proposals(round);

  int chosen = 0;
  if (round == 1 || !state_.last_offer) {
    chosen = available[rng_.uniform_index(available.size())];
  } else if (rng_.bernoulli(params_.lambda)) {
    chosen = state_.last_offer->type_id;
  } else {
    std::vector<int> plausible;
    for (int z : available) {
      if (state_.held_type == z ||
          board.last_payments[static_cast<std::size_t>(z)] >= proposal[static_cast<std::size_t>(z)]) {
        plausible.push_back(z);
      }
    }
    if (plausible.empty()) {
      chosen = available[rng_.uniform_index(available.size())];
    } else if (rng_.bernoulli(params_.exploration_rate(round))) {
      chosen = plausible[rng_.uniform_index(plausible.size())];
    } else {
      chosen = argmax_estimate(state_.util_estimate, plausible);
    }
  }

  SensingOffer out{state_.mu_id, chosen, proposal[static_cast<std::size_t>(chosen)],
                   is_free_offer(chosen, round)};
  state_.last_offer = out;
  return out;
}

void CaMabSfsAgent::update(const McspResponse& response,
                           const std::optional<Observation>& observed, int round) {
  check_observation(response, observed);
  const int z = require_last_offer(state_).type_id;
  state_.held_type.reset();
  if (response.accepted()) {
    record_observation(state_, z, *observed);
    state_.rejection_counter[static_cast<std::size_t>(z)] = 0.0;
    state_.held_type = z;
  } else if (round < params_.free_horizon) {
    state_.rejection_counter[static_cast<std::size_t>(z)] += params_.rejection_increment(round);
  }
}

// ---------------------------------------------------------------------------

EpsGreedyAgent::EpsGreedyAgent(int mu_id, int num_types, CostModel cost, AgentParams params,
                               std::uint64_t seed)
    : state_(mu_id, num_types), cost_(cost), params_(std::move(params)), rng_(seed) {}

SensingOffer EpsGreedyAgent::offer(const PublishedBoard& board, int round) {
  const std::vector<int> available = available_types(board);
  int chosen = 0;
  if (rng_.bernoulli(params_.exploration_rate(round))) {
    chosen = available[rng_.uniform_index(available.size())];
  } else {
    chosen = argmax_estimate(state_.util_estimate, available);
  }
  SensingOffer out{state_.mu_id, chosen, state_.estimated_payment(chosen, cost_), false};
  state_.last_offer = out;
  return out;
}

void EpsGreedyAgent::update(const McspResponse& response,
                            const std::optional<Observation>& observed, int /*round*/) {
  check_observation(response, observed);
  const int z = require_last_offer(state_).type_id;
  if (response.accepted()) {
    record_observation(state_, z, *observed);
    return;
  }
  const auto zi = static_cast<std::size_t>(z);
  const double m = ++state_.reward_count[zi];
  state_.util_estimate[zi] += (0.0 - state_.util_estimate[zi]) / m;
}

// ---------------------------------------------------------------------------

McspStrategicAgent::McspStrategicAgent(int mu_id, int num_types, CostModel cost,
                                       std::uint64_t seed)
    : state_(mu_id, num_types), cost_(cost), rng_(seed) {}

SensingOffer McspStrategicAgent::offer(const PublishedBoard& board, int /*round*/) {
  const std::vector<int> available = available_types(board);
  const int chosen = available[rng_.uniform_index(available.size())];
  SensingOffer out{state_.mu_id, chosen, state_.estimated_payment(chosen, cost_), false};
  state_.last_offer = out;
  return out;
}

void McspStrategicAgent::update(const McspResponse& response,
                                const std::optional<Observation>& observed, int /*round*/) {
  check_observation(response, observed);
  const int z = require_last_offer(state_).type_id;
  if (response.accepted()) record_observation(state_, z, *observed);
}

}  // namespace mcs
