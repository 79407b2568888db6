#pragma once

#include <cmath>
#include <vector>

#include "mcs/model.hpp"
#include "mcs/protocol.hpp"

namespace mcs::test {

inline MuProfile make_mu(int id, int num_types, double sense_s = 100.0, double comm = 0.05,
                         double freq = 1.5e9) {
  MuProfile mu;
  mu.id = id;
  mu.cpu_freq_hz = freq;
  mu.power_comm_w = 0.2;
  mu.power_comp_w = 1.0;
  mu.cost_time = 0.01;
  mu.cost_energy = 0.004;
  mu.mean_sense_time_s.assign(static_cast<std::size_t>(num_types), sense_s);
  mu.mean_comm_s_per_mbit.assign(static_cast<std::size_t>(num_types), comm);
  return mu;
}

inline TaskType make_type(int id, double size_mbit, int count = 1, double deadline_s = 1e9) {
  return TaskType{id, size_mbit, 250.0, deadline_s, 1.4 + 3.0 * size_mbit, count};
}

// Board with `count` tasks of each type listed in `open`, and the given
// previous-round payments.
inline PublishedBoard make_board(int round, int num_types, const std::vector<int>& open,
                                 std::vector<double> last_payments = {}, int count = 1) {
  PublishedBoard b;
  b.round = round;
  b.tasks_by_type.resize(static_cast<std::size_t>(num_types));
  for (int z : open) {
    for (int i = 0; i < count; ++i) {
      int id = static_cast<int>(b.tasks.size());
      b.tasks.push_back(TaskInstance{id, z, 60.0, round});
      b.tasks_by_type[static_cast<std::size_t>(z)].push_back(id);
    }
  }
  if (last_payments.empty()) last_payments.assign(static_cast<std::size_t>(num_types), kNoPayment);
  b.last_payments = std::move(last_payments);
  return b;
}

inline EffortSample effort_of(double t_total, double energy, bool met = true) {
  EffortSample e;
  e.t_sense = t_total;
  e.t_total = t_total;
  e.energy = energy;
  e.met_deadline = met;
  return e;
}

}  // namespace mcs::test
