#include "mcs/platform.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace mcs {

std::vector<int> Assignment::type_of_mu(int num_mus) const {
  std::vector<int> out(static_cast<std::size_t>(num_mus), -1);
  for (const auto& p : pairs) out[static_cast<std::size_t>(p.mu_id)] = p.type_id;
  return out;
}

PublishedBoard publish(std::span<const TaskType> types, const Assignment* previous, int round,
                       const NoiseModel& noise, RandomStream& rng) {
  PublishedBoard board;
  board.round = round;
  board.tasks_by_type.resize(types.size());
  board.last_payments.assign(types.size(), kNoPayment);

  int task_id = 0;
  for (const TaskType& type : types) {
    for (int i = 0; i < type.count_per_round; ++i) {
      double size = rng.positive_normal(type.mean_result_size_mbit,
                                        noise.result_size_rel_std * type.mean_result_size_mbit);
      board.tasks_by_type[static_cast<std::size_t>(type.id)].push_back(task_id);
      board.tasks.push_back(TaskInstance{task_id, type.id, size, round});
      ++task_id;
    }
  }

  if (previous != nullptr) {
    std::vector<int> filled(types.size(), 0);
    for (const AssignedPair& p : previous->pairs) {
      auto z = static_cast<std::size_t>(p.type_id);
      board.last_payments[z] =
          filled[z]++ > 0 ? std::max(board.last_payments[z], p.proposed_payment) : p.proposed_payment;
    }
    for (const TaskType& type : types) {
      auto z = static_cast<std::size_t>(type.id);
      if (filled[z] < type.count_per_round) board.last_payments[z] = kNoPayment;
    }
  }
  return board;
}

AllocationResult allocate(const PublishedBoard& board, std::span<const SensingOffer> offers,
                          std::span<const double> earnings) {
  const int z_count = board.num_types();
  if (static_cast<int>(earnings.size()) != z_count) {
    throw std::invalid_argument("one earning per task type required");
  }

  std::unordered_set<int> mus;
  std::vector<std::vector<std::size_t>> by_type(static_cast<std::size_t>(z_count));
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const SensingOffer& o = offers[i];
    if (!mus.insert(o.mu_id).second) {
      throw std::invalid_argument("duplicate offer from MU " + std::to_string(o.mu_id));
    }
    if (o.type_id < 0 || o.type_id >= z_count) {
      throw std::invalid_argument("offer for unknown task type " + std::to_string(o.type_id));
    }
    by_type[static_cast<std::size_t>(o.type_id)].push_back(i);
  }

  AllocationResult result;
  result.assignment.round = board.round;
  result.responses.resize(offers.size());
  for (std::size_t i = 0; i < offers.size(); ++i) result.responses[i].mu_id = offers[i].mu_id;

  for (int z = 0; z < z_count; ++z) {
    auto& group = by_type[static_cast<std::size_t>(z)];
    std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
      if (offers[a].proposed_payment != offers[b].proposed_payment) {
        return offers[a].proposed_payment < offers[b].proposed_payment;
      }
      return offers[a].mu_id < offers[b].mu_id;
    });
    const auto& tasks = board.tasks_by_type[static_cast<std::size_t>(z)];
    std::size_t next_task = 0;
    for (std::size_t idx : group) {
      if (next_task == tasks.size()) break;
      const SensingOffer& o = offers[idx];
      if (o.proposed_payment > earnings[static_cast<std::size_t>(z)]) break;
      const int task_id = board.tasks[static_cast<std::size_t>(tasks[next_task++])].task_id;
      result.responses[idx].task_id = task_id;
      result.assignment.pairs.push_back(
          AssignedPair{o.mu_id, task_id, z, o.proposed_payment, o.is_free});
    }
  }
  return result;
}

}  // namespace mcs
