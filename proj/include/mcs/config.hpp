#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcs/agents.hpp"
#include "mcs/model.hpp"

namespace mcs {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Everything needed to generate and run one family of scenarios. Defaults
// are the reference evaluation parameters.
struct ScenarioConfig {
  int num_mus = 100;
  int num_types = 10;

  // Task counts: an explicit per-type list wins; otherwise a positive
  // total_tasks is spread round-robin over the types; otherwise each type
  // draws its count uniformly from [tasks_per_type_min, tasks_per_type_max].
  std::vector<int> tasks_per_type;
  int total_tasks = 0;
  int tasks_per_type_min = 5;
  int tasks_per_type_max = 10;

  Range result_size_mbit{50.0, 100.0};
  Range complexity_cycles_per_bit{200.0, 300.0};
  Range comm_s_per_mbit{0.025, 0.1};
  Range cpu_freq_hz{1e9, 2e9};
  Range sense_time_s{60.0, 180.0};
  NoiseModel noise;

  double power_comm_w = 0.2;
  double power_comp_w = 1.0;
  double cost_time = 0.01;
  double cost_energy = 0.004;
  double payment_factor = 1.1;
  double earning_base = 1.4;
  double earning_per_mbit = 3.0;
  PaymentMode payment_mode = PaymentMode::kEffort;

  // Deadline of type z: explicit list, or deadline_factor times the mean
  // expected completion time of type z over all MUs.
  std::vector<double> deadlines_s;
  double deadline_factor = 1.1;

  AgentParams agent;

  int rounds = 1000;
  int replications = 100;
  std::uint64_t seed = 1;
  std::size_t truth_samples = kMinTruthSamples;
};

// Throws ConfigError describing the first violated constraint.
void validate(const ScenarioConfig& config);

// Plain-text "key = value" format; '#' starts a comment; lists are
// comma-separated. Unknown keys and malformed values raise ConfigError.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const ScenarioConfig& config);

// Draws one concrete market (type parameters, per-type counts, MU profiles).
Scenario build_scenario(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace mcs
