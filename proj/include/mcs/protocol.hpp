#pragma once

// Messages exchanged between MUs and the platform in one round.

#include <limits>
#include <optional>
#include <vector>

#include "mcs/model.hpp"

namespace mcs {

inline constexpr double kNoPayment = std::numeric_limits<double>::infinity();

struct PublishedBoard {
  int round = 0;
  std::vector<TaskInstance> tasks;               // ordered by task id
  std::vector<std::vector<int>> tasks_by_type;   // indices into `tasks`
  std::vector<double> last_payments;             // +inf when nothing was assigned

  int num_types() const { return static_cast<int>(tasks_by_type.size()); }
  bool has_tasks(int type_id) const {
    return !tasks_by_type[static_cast<std::size_t>(type_id)].empty();
  }
};

struct SensingOffer {
  int mu_id = 0;
  int type_id = 0;
  double proposed_payment = 0.0;
  bool is_free = false;

  bool operator==(const SensingOffer&) const = default;
};

struct McspResponse {
  int mu_id = 0;
  std::optional<int> task_id;  // empty on rejection

  bool accepted() const { return task_id.has_value(); }
};

struct AssignedPair {
  int mu_id = 0;
  int task_id = 0;
  int type_id = 0;
  double proposed_payment = 0.0;
  bool is_free = false;
};

// Sparse form of the binary assignment matrix for one round.
struct Assignment {
  int round = 0;
  std::vector<AssignedPair> pairs;

  // MU -> type map (-1 for unassigned).
  std::vector<int> type_of_mu(int num_mus) const;
};

}  // namespace mcs
