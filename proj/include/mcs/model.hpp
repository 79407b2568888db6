#pragma once

#include <cstdint>
#include <vector>

#include "mcs/matrix.hpp"
#include "mcs/random.hpp"

namespace mcs {

struct TaskType {
  int id = 0;
  double mean_result_size_mbit = 0.0;
  double complexity_cycles_per_bit = 0.0;
  double deadline_s = 0.0;
  double earning = 0.0;
  int count_per_round = 1;
};

struct TaskInstance {
  int task_id = 0;
  int type_id = 0;
  double result_size_mbit = 0.0;
  int round = 0;
};

struct MuProfile {
  int id = 0;
  double cpu_freq_hz = 0.0;
  double power_comm_w = 0.0;
  double power_comp_w = 0.0;
  double cost_time = 0.0;    // monetary units per second
  double cost_energy = 0.0;  // monetary units per joule
  std::vector<double> mean_sense_time_s;     // per type
  std::vector<double> mean_comm_s_per_mbit;  // per type
};

struct EffortSample {
  double t_sense = 0.0;
  double t_comp = 0.0;
  double t_comm = 0.0;
  double t_total = 0.0;
  double energy = 0.0;
  bool met_deadline = false;
};

// Per-slot fluctuation of MU/task characteristics around their means.
struct NoiseModel {
  double sense_std_s = 10.0;
  double cpu_freq_std_hz = 100e6;
  double comm_std_s_per_mbit = 0.01;
  double result_size_rel_std = 0.05;
};

enum class PaymentMode {
  kEffort,    // pay payment_factor * cost of the realized effort
  kProposal,  // pay the accepted proposal
};

// One concrete market: drawn task types and MU profiles plus the rules
// that map effort to money.
struct Scenario {
  std::vector<TaskType> types;
  std::vector<MuProfile> mus;
  NoiseModel noise;
  double payment_factor = 1.1;
  PaymentMode payment_mode = PaymentMode::kEffort;

  int num_mus() const { return static_cast<int>(mus.size()); }
  int num_types() const { return static_cast<int>(types.size()); }
  int num_tasks() const;
  std::vector<int> capacities() const;
};

// Builds a sample from its three time components, computing total time,
// energy and the deadline indicator.
EffortSample make_effort(const MuProfile& mu, double t_sense, double t_comp, double t_comm,
                         double deadline_s);

double computation_time(double complexity_cycles_per_bit, double result_size_mbit,
                        double cpu_freq_hz);

EffortSample sample_effort(const MuProfile& mu, const TaskType& type, const TaskInstance& task,
                           const NoiseModel& noise, RandomStream& rng);

double effort_cost(double cost_time, double cost_energy, double t_total, double energy);
double effort_cost(const MuProfile& mu, const EffortSample& e);
double effort_payment(const MuProfile& mu, const EffortSample& e, double payment_factor);

double mu_utility(double payment, const EffortSample& e, double cost);
double mcsp_utility(double earning, double payment, const EffortSample& e);

// Expected per-(MU, type) quantities: the complete information that only
// oracles and metrics get to see.
struct ExpectationTable {
  Matrix mu_utility;
  Matrix mcsp_utility;
  Matrix mu_utility_se;
  Matrix mcsp_utility_se;
  Matrix p_met;
  Matrix mean_time;
  Matrix mean_energy;
  Matrix mean_cost;
  std::size_t samples = 0;

  int num_mus() const { return static_cast<int>(mu_utility.rows()); }
  int num_types() const { return static_cast<int>(mu_utility.cols()); }
};

inline constexpr std::size_t kMinTruthSamples = 10000;

// Monte-Carlo estimate of the expectation table. Each (k, z) cell uses its
// own substream of `seed`, so results do not depend on evaluation order.
// Throws std::invalid_argument when samples < kMinTruthSamples.
ExpectationTable ground_truth_expectations(const Scenario& scenario, std::size_t samples,
                                           std::uint64_t seed);

}  // namespace mcs
