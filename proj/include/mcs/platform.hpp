#pragma once

#include <span>
#include <vector>

#include "mcs/model.hpp"
#include "mcs/protocol.hpp"
#include "mcs/random.hpp"

namespace mcs {

// Samples this round's task instances (task ids are stable across rounds and
// grouped by type) and publishes, per type, the most expensive accepted
// proposal of the previous round.
PublishedBoard publish(std::span<const TaskType> types, const Assignment* previous, int round,
                       const NoiseModel& noise, RandomStream& rng);

struct AllocationResult {
  Assignment assignment;
  std::vector<McspResponse> responses;  // one per offer, in offer order
};

// Per type: cheapest proposals first (ties to the lower MU id), up to the
// number of tasks of that type, skipping any proposal above the type's
// earning. Throws std::invalid_argument on duplicate MUs or unknown types.
AllocationResult allocate(const PublishedBoard& board, std::span<const SensingOffer> offers,
                          std::span<const double> earnings);

}  // namespace mcs
