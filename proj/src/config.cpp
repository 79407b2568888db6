#include "mcs/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mcs {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("invalid value for '" + key + "': '" + text + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter number(T ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) {
    c.*field = parse_number<T>(k, v);
  };
}

template <typename Get>
Setter number_at(Get get) {
  return [get](ScenarioConfig& c, const std::string& k, const std::string& v) {
    auto& ref = get(c);
    ref = parse_number<std::decay_t<decltype(ref)>>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"num_mus", number(&ScenarioConfig::num_mus)},
      {"num_types", number(&ScenarioConfig::num_types)},
      {"total_tasks", number(&ScenarioConfig::total_tasks)},
      {"tasks_per_type",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.tasks_per_type = parse_list<int>(k, v);
       }},
      {"tasks_per_type_min", number(&ScenarioConfig::tasks_per_type_min)},
      {"tasks_per_type_max", number(&ScenarioConfig::tasks_per_type_max)},
      {"result_size_min_mbit", number_at([](ScenarioConfig& c) -> double& { return c.result_size_mbit.lo; })},
      {"result_size_max_mbit", number_at([](ScenarioConfig& c) -> double& { return c.result_size_mbit.hi; })},
      {"complexity_min_cycles_per_bit", number_at([](ScenarioConfig& c) -> double& { return c.complexity_cycles_per_bit.lo; })},
      {"complexity_max_cycles_per_bit", number_at([](ScenarioConfig& c) -> double& { return c.complexity_cycles_per_bit.hi; })},
      {"comm_time_min_s_per_mbit", number_at([](ScenarioConfig& c) -> double& { return c.comm_s_per_mbit.lo; })},
      {"comm_time_max_s_per_mbit", number_at([](ScenarioConfig& c) -> double& { return c.comm_s_per_mbit.hi; })},
      {"cpu_freq_min_hz", number_at([](ScenarioConfig& c) -> double& { return c.cpu_freq_hz.lo; })},
      {"cpu_freq_max_hz", number_at([](ScenarioConfig& c) -> double& { return c.cpu_freq_hz.hi; })},
      {"sense_time_min_s", number_at([](ScenarioConfig& c) -> double& { return c.sense_time_s.lo; })},
      {"sense_time_max_s", number_at([](ScenarioConfig& c) -> double& { return c.sense_time_s.hi; })},
      {"sense_time_std_s", number_at([](ScenarioConfig& c) -> double& { return c.noise.sense_std_s; })},
      {"cpu_freq_std_hz", number_at([](ScenarioConfig& c) -> double& { return c.noise.cpu_freq_std_hz; })},
      {"comm_time_std_s_per_mbit", number_at([](ScenarioConfig& c) -> double& { return c.noise.comm_std_s_per_mbit; })},
      {"result_size_rel_std", number_at([](ScenarioConfig& c) -> double& { return c.noise.result_size_rel_std; })},
      {"power_comm_w", number(&ScenarioConfig::power_comm_w)},
      {"power_comp_w", number(&ScenarioConfig::power_comp_w)},
      {"cost_time_per_s", number(&ScenarioConfig::cost_time)},
      {"cost_energy_per_j", number(&ScenarioConfig::cost_energy)},
      {"payment_factor", number(&ScenarioConfig::payment_factor)},
      {"earning_base", number(&ScenarioConfig::earning_base)},
      {"earning_per_mbit", number(&ScenarioConfig::earning_per_mbit)},
      {"payment_mode",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "effort") {
           c.payment_mode = PaymentMode::kEffort;
         } else if (v == "proposal") {
           c.payment_mode = PaymentMode::kProposal;
         } else {
           throw ConfigError("invalid value for '" + k + "': expected effort or proposal");
         }
       }},
      {"deadlines_s",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.deadlines_s = parse_list<double>(k, v);
       }},
      {"deadline_factor", number(&ScenarioConfig::deadline_factor)},
      {"lambda", number_at([](ScenarioConfig& c) -> double& { return c.agent.lambda; })},
      {"free_sensing_threshold", number_at([](ScenarioConfig& c) -> double& { return c.agent.free_threshold; })},
      {"free_sensing_horizon", number_at([](ScenarioConfig& c) -> int& { return c.agent.free_horizon; })},
      {"exploration_scale", number_at([](ScenarioConfig& c) -> double& { return c.agent.exploration_scale; })},
      {"rounds", number(&ScenarioConfig::rounds)},
      {"replications", number(&ScenarioConfig::replications)},
      {"seed", number(&ScenarioConfig::seed)},
      {"truth_samples", number(&ScenarioConfig::truth_samples)},
  };
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_range(const Range& r, const std::string& name) {
  require(r.lo > 0.0 && r.hi >= r.lo, name + " range must satisfy 0 < min <= max");
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.num_mus >= 1, "num_mus must be >= 1");
  require(c.num_types >= 1, "num_types must be >= 1");
  require(c.rounds >= 1, "rounds must be >= 1");
  require(c.replications >= 1, "replications must be >= 1");
  if (!c.tasks_per_type.empty()) {
    require(static_cast<int>(c.tasks_per_type.size()) == c.num_types,
            "tasks_per_type needs one entry per type");
    for (int n : c.tasks_per_type) require(n >= 1, "tasks_per_type entries must be >= 1");
  } else if (c.total_tasks > 0) {
    require(c.total_tasks >= c.num_types, "total_tasks must give every type at least one task");
  } else {
    require(c.tasks_per_type_min >= 1 && c.tasks_per_type_max >= c.tasks_per_type_min,
            "tasks_per_type range must satisfy 1 <= min <= max");
  }
  require_range(c.result_size_mbit, "result_size");
  require_range(c.complexity_cycles_per_bit, "complexity");
  require_range(c.comm_s_per_mbit, "comm_time");
  require_range(c.cpu_freq_hz, "cpu_freq");
  require_range(c.sense_time_s, "sense_time");
  require(c.noise.sense_std_s >= 0.0 && c.noise.cpu_freq_std_hz >= 0.0 &&
              c.noise.comm_std_s_per_mbit >= 0.0 && c.noise.result_size_rel_std >= 0.0,
          "standard deviations must be >= 0");
  require(c.power_comm_w > 0.0 && c.power_comp_w > 0.0, "powers must be > 0");
  require(c.cost_time >= 0.0 && c.cost_energy >= 0.0, "cost coefficients must be >= 0");
  require(c.payment_factor >= 0.0, "payment_factor must be >= 0");
  if (!c.deadlines_s.empty()) {
    require(static_cast<int>(c.deadlines_s.size()) == c.num_types,
            "deadlines_s needs one entry per type");
    for (double d : c.deadlines_s) require(d > 0.0, "deadlines must be > 0");
  } else {
    require(c.deadline_factor > 0.0, "deadline_factor must be > 0");
  }
  require(c.agent.lambda >= 0.0 && c.agent.lambda < 1.0, "lambda must lie in [0, 1)");
  require(c.agent.free_threshold > 0.0, "free_sensing_threshold must be > 0");
  require(c.agent.free_horizon >= 1, "free_sensing_horizon must be >= 1");
  require(c.agent.exploration_scale >= 0.0, "exploration_scale must be >= 0");
  require(c.truth_samples >= kMinTruthSamples, "truth_samples must be >= 10000");
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    it->second(config, key, value);
  }
  validate(config);
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
  auto list = [&out](const auto& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  };
  out.precision(17);
  out << "num_mus = " << c.num_mus << "\n";
  out << "num_types = " << c.num_types << "\n";
  if (!c.tasks_per_type.empty()) {
    out << "tasks_per_type = ";
    list(c.tasks_per_type);
    out << "\n";
  }
  out << "total_tasks = " << c.total_tasks << "\n";
  out << "tasks_per_type_min = " << c.tasks_per_type_min << "\n";
  out << "tasks_per_type_max = " << c.tasks_per_type_max << "\n";
  out << "result_size_min_mbit = " << c.result_size_mbit.lo << "\n";
  out << "result_size_max_mbit = " << c.result_size_mbit.hi << "\n";
  out << "complexity_min_cycles_per_bit = " << c.complexity_cycles_per_bit.lo << "\n";
  out << "complexity_max_cycles_per_bit = " << c.complexity_cycles_per_bit.hi << "\n";
  out << "comm_time_min_s_per_mbit = " << c.comm_s_per_mbit.lo << "\n";
  out << "comm_time_max_s_per_mbit = " << c.comm_s_per_mbit.hi << "\n";
  out << "cpu_freq_min_hz = " << c.cpu_freq_hz.lo << "\n";
  out << "cpu_freq_max_hz = " << c.cpu_freq_hz.hi << "\n";
  out << "sense_time_min_s = " << c.sense_time_s.lo << "\n";
  out << "sense_time_max_s = " << c.sense_time_s.hi << "\n";
  out << "sense_time_std_s = " << c.noise.sense_std_s << "\n";
  out << "cpu_freq_std_hz = " << c.noise.cpu_freq_std_hz << "\n";
  out << "comm_time_std_s_per_mbit = " << c.noise.comm_std_s_per_mbit << "\n";
  out << "result_size_rel_std = " << c.noise.result_size_rel_std << "\n";
  out << "power_comm_w = " << c.power_comm_w << "\n";
  out << "power_comp_w = " << c.power_comp_w << "\n";
  out << "cost_time_per_s = " << c.cost_time << "\n";
  out << "cost_energy_per_j = " << c.cost_energy << "\n";
  out << "payment_factor = " << c.payment_factor << "\n";
  out << "earning_base = " << c.earning_base << "\n";
  out << "earning_per_mbit = " << c.earning_per_mbit << "\n";
  out << "payment_mode = " << (c.payment_mode == PaymentMode::kEffort ? "effort" : "proposal")
      << "\n";
  if (!c.deadlines_s.empty()) {
    out << "deadlines_s = ";
    list(c.deadlines_s);
    out << "\n";
  }
  out << "deadline_factor = " << c.deadline_factor << "\n";
  out << "lambda = " << c.agent.lambda << "\n";
  out << "free_sensing_threshold = " << c.agent.free_threshold << "\n";
  out << "free_sensing_horizon = " << c.agent.free_horizon << "\n";
  out << "exploration_scale = " << c.agent.exploration_scale << "\n";
  out << "rounds = " << c.rounds << "\n";
  out << "replications = " << c.replications << "\n";
  out << "seed = " << c.seed << "\n";
  out << "truth_samples = " << c.truth_samples << "\n";
}

Scenario build_scenario(const ScenarioConfig& c, std::uint64_t seed) {
  validate(c);
  RandomStream rng(seed);
  Scenario s;
  s.noise = c.noise;
  s.payment_factor = c.payment_factor;
  s.payment_mode = c.payment_mode;

  const auto z_count = static_cast<std::size_t>(c.num_types);
  for (std::size_t z = 0; z < z_count; ++z) {
    TaskType t;
    t.id = static_cast<int>(z);
    t.mean_result_size_mbit = rng.uniform(c.result_size_mbit.lo, c.result_size_mbit.hi);
    t.complexity_cycles_per_bit =
        rng.uniform(c.complexity_cycles_per_bit.lo, c.complexity_cycles_per_bit.hi);
    t.earning = c.earning_base + c.earning_per_mbit * t.mean_result_size_mbit;
    if (!c.tasks_per_type.empty()) {
      t.count_per_round = c.tasks_per_type[z];
    } else if (c.total_tasks > 0) {
      t.count_per_round = c.total_tasks / c.num_types + (static_cast<int>(z) < c.total_tasks % c.num_types ? 1 : 0);
    } else {
      t.count_per_round = rng.uniform_int(c.tasks_per_type_min, c.tasks_per_type_max);
    }
    s.types.push_back(t);
  }

  for (int k = 0; k < c.num_mus; ++k) {
    MuProfile mu;
    mu.id = k;
    mu.cpu_freq_hz = rng.uniform(c.cpu_freq_hz.lo, c.cpu_freq_hz.hi);
    mu.power_comm_w = c.power_comm_w;
    mu.power_comp_w = c.power_comp_w;
    mu.cost_time = c.cost_time;
    mu.cost_energy = c.cost_energy;
    for (std::size_t z = 0; z < z_count; ++z) {
      mu.mean_sense_time_s.push_back(rng.uniform(c.sense_time_s.lo, c.sense_time_s.hi));
      mu.mean_comm_s_per_mbit.push_back(rng.uniform(c.comm_s_per_mbit.lo, c.comm_s_per_mbit.hi));
    }
    s.mus.push_back(std::move(mu));
  }

  for (std::size_t z = 0; z < z_count; ++z) {
    TaskType& t = s.types[z];
    if (!c.deadlines_s.empty()) {
      t.deadline_s = c.deadlines_s[z];
      continue;
    }
    double mean_time = 0.0;
    for (const MuProfile& mu : s.mus) {
      mean_time += mu.mean_sense_time_s[z] +
                   computation_time(t.complexity_cycles_per_bit, t.mean_result_size_mbit, mu.cpu_freq_hz) +
                   mu.mean_comm_s_per_mbit[z] * t.mean_result_size_mbit;
    }
    t.deadline_s = c.deadline_factor * mean_time / static_cast<double>(s.mus.size());
  }
  return s;
}

}  // namespace mcs
