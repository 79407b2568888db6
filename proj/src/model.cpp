#include "mcs/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mcs {

namespace {

// Welford accumulator. The incremental form keeps a constant stream exact.
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double standard_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

}  // namespace

int Scenario::num_tasks() const {
  return std::accumulate(types.begin(), types.end(), 0,
                         [](int acc, const TaskType& t) { return acc + t.count_per_round; });
}

std::vector<int> Scenario::capacities() const {
  std::vector<int> caps;
  caps.reserve(types.size());
  for (const auto& t : types) caps.push_back(t.count_per_round);
  return caps;
}

double computation_time(double complexity_cycles_per_bit, double result_size_mbit,
                        double cpu_freq_hz) {
  return complexity_cycles_per_bit * result_size_mbit * 1e6 / cpu_freq_hz;
}

EffortSample make_effort(const MuProfile& mu, double t_sense, double t_comp, double t_comm,
                         double deadline_s) {
  EffortSample e;
  e.t_sense = t_sense;
  e.t_comp = t_comp;
  e.t_comm = t_comm;
  e.t_total = t_sense + t_comp + t_comm;
  e.energy = mu.power_comm_w * t_comm + mu.power_comp_w * t_comp;
  e.met_deadline = e.t_total <= deadline_s;
  return e;
}

EffortSample sample_effort(const MuProfile& mu, const TaskType& type, const TaskInstance& task,
                           const NoiseModel& noise, RandomStream& rng) {
  const auto z = static_cast<std::size_t>(task.type_id);
  double t_sense = rng.positive_normal(mu.mean_sense_time_s[z], noise.sense_std_s);
  double freq = rng.positive_normal(mu.cpu_freq_hz, noise.cpu_freq_std_hz);
  double s_per_mbit = rng.positive_normal(mu.mean_comm_s_per_mbit[z], noise.comm_std_s_per_mbit);
  double t_comp = computation_time(type.complexity_cycles_per_bit, task.result_size_mbit, freq);
  double t_comm = s_per_mbit * task.result_size_mbit;
  return make_effort(mu, t_sense, t_comp, t_comm, type.deadline_s);
}

double effort_cost(double cost_time, double cost_energy, double t_total, double energy) {
  return cost_time * t_total + cost_energy * energy;
}

double effort_cost(const MuProfile& mu, const EffortSample& e) {
  return effort_cost(mu.cost_time, mu.cost_energy, e.t_total, e.energy);
}

double effort_payment(const MuProfile& mu, const EffortSample& e, double payment_factor) {
  return payment_factor * effort_cost(mu, e);
}

double mu_utility(double payment, const EffortSample& e, double cost) {
  return (e.met_deadline ? payment : 0.0) - cost;
}

double mcsp_utility(double earning, double payment, const EffortSample& e) {
  return e.met_deadline ? earning - payment : 0.0;
}

ExpectationTable ground_truth_expectations(const Scenario& scenario, std::size_t samples,
                                           std::uint64_t seed) {
  if (samples < kMinTruthSamples) {
    throw std::invalid_argument("ground truth needs at least 10000 samples per cell");
  }
  const auto k_count = scenario.mus.size();
  const auto z_count = scenario.types.size();
  ExpectationTable table{
      Matrix(k_count, z_count), Matrix(k_count, z_count), Matrix(k_count, z_count),
      Matrix(k_count, z_count), Matrix(k_count, z_count), Matrix(k_count, z_count),
      Matrix(k_count, z_count), Matrix(k_count, z_count), samples};

  for (std::size_t k = 0; k < k_count; ++k) {
    const MuProfile& mu = scenario.mus[k];
    for (std::size_t z = 0; z < z_count; ++z) {
      const TaskType& type = scenario.types[z];
      RandomStream rng(mix_seed(seed, {k, z}));
      Moments u_mu, u_mcsp, met, time, energy, cost;
      for (std::size_t i = 0; i < samples; ++i) {
        TaskInstance task{0, type.id,
                          rng.positive_normal(type.mean_result_size_mbit,
                                              scenario.noise.result_size_rel_std *
                                                  type.mean_result_size_mbit),
                          0};
        EffortSample e = sample_effort(mu, type, task, scenario.noise, rng);
        double c = effort_cost(mu, e);
        double pay = scenario.payment_factor * c;
        u_mu.add(mu_utility(pay, e, c));
        u_mcsp.add(mcsp_utility(type.earning, pay, e));
        met.add(e.met_deadline ? 1.0 : 0.0);
        time.add(e.t_total);
        energy.add(e.energy);
        cost.add(c);
      }
      table.mu_utility(k, z) = u_mu.mean;
      table.mcsp_utility(k, z) = u_mcsp.mean;
      table.mu_utility_se(k, z) = u_mu.standard_error();
      table.mcsp_utility_se(k, z) = u_mcsp.standard_error();
      table.p_met(k, z) = met.mean;
      table.mean_time(k, z) = time.mean;
      table.mean_energy(k, z) = energy.mean;
      table.mean_cost(k, z) = cost.mean;
    }
  }
  return table;
}

}  // namespace mcs
