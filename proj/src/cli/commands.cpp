#include "mcs/cli/commands.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mcs/metrics.hpp"
#include "mcs/verify/brute_force.hpp"

namespace mcs::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 10> kColumns = {
    "strategy",         "replication",          "round",
    "social_welfare",   "avg_completion_time_s", "energy_eff_J_per_Mbit",
    "blocked_mu_count", "mean_cumulative_regret", "free_offers_cumulative",
    "acceptance_rate",
};

// Series behind the numeric CSV columns, in column order.
constexpr std::array<SeriesField, 7> kCsvFields = {
    &MetricsSeries::social_welfare,         &MetricsSeries::avg_completion_time,
    &MetricsSeries::energy_efficiency,      &MetricsSeries::blocked_mus,
    &MetricsSeries::mean_cumulative_regret, &MetricsSeries::free_offers_cumulative,
    &MetricsSeries::acceptance_rate,
};

struct NamedField {
  const char* name;
  SeriesField field;
};

constexpr std::array<NamedField, 11> kSummaryFields = {{
    {"social_welfare", &MetricsSeries::social_welfare},
    {"avg_completion_time_s", &MetricsSeries::avg_completion_time},
    {"energy_eff_J_per_Mbit", &MetricsSeries::energy_efficiency},
    {"blocked_mu_count", &MetricsSeries::blocked_mus},
    {"blocking_pairs", &MetricsSeries::blocking_pairs},
    {"mean_cumulative_regret", &MetricsSeries::mean_cumulative_regret},
    {"free_offers_cumulative", &MetricsSeries::free_offers_cumulative},
    {"acceptance_rate", &MetricsSeries::acceptance_rate},
    {"mu_utility", &MetricsSeries::mu_utility},
    {"mcsp_utility", &MetricsSeries::mcsp_utility},
    {"assigned", &MetricsSeries::assigned},
}};

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9g", x);
  return buf.data();
}

json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double mean_of(std::span<const double> xs) {
  double total = 0.0;
  int n = 0;
  for (double x : xs) {
    if (std::isnan(x)) continue;
    total += x;
    ++n;
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : total / n;
}

double window_mean(const std::vector<double>& series) {
  if (series.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t from = series.size() / 2;
  return mean_of(std::span<const double>(series).subspan(from));
}

json config_json(const ScenarioConfig& config) {
  std::ostringstream text;
  write_config(text, config);
  json out = json::object();
  std::istringstream in(text.str());
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.empty() || line.front() == '#' || eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(' ');
      const auto e = s.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

json bounds_json(const Campaign& c) {
  const double horizon = c.config.rounds;
  json log_regret = json::array();
  json instability = json::array();
  json delta = json::array();
  for (const BoundParams& p : c.result.bounds) {
    delta.push_back(p.delta);
    try {
      log_regret.push_back(number_or_null(log_regret_bound(p, horizon)));
      instability.push_back(number_or_null(instability_bound(p, horizon)));
    } catch (const std::domain_error&) {
      log_regret.push_back(nullptr);
      instability.push_back(nullptr);
    }
  }
  return json{{"horizon", horizon},
              {"lambda", c.config.agent.lambda},
              {"delta", delta},
              {"log_regret_bound", log_regret},
              {"instability_bound", instability}};
}

void apply_overrides(ScenarioConfig& config, const Overrides& o) {
  config.seed = resolve_seed(o.seed, config.seed);
  if (o.replications) config.replications = *o.replications;
  if (o.rounds) config.rounds = *o.rounds;
  validate(config);
}

ScenarioConfig fig8_base() {
  ScenarioConfig c;
  c.num_mus = 10;
  c.num_types = 10;
  c.total_tasks = 10;
  c.rounds = 1000;
  c.replications = 100;
  return c;
}

ScenarioConfig desk_base(int mus, int tasks) {
  ScenarioConfig c;
  c.num_mus = mus;
  c.num_types = 10;
  c.total_tasks = tasks;
  c.rounds = 1000;
  c.replications = 20;
  return c;
}

std::string format_param(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

std::span<const std::string_view> csv_columns() { return kColumns; }

std::string strategy_label(Strategy s, std::string_view variant) {
  std::string label(strategy_name(s));
  if (!variant.empty()) {
    label += '[';
    label += variant;
    label += ']';
  }
  return label;
}

void write_metrics_csv(std::ostream& out, std::span<const Campaign> campaigns) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const Campaign& c : campaigns) {
    for (const StrategyAggregate& agg : c.result.strategies) {
      const std::string label = strategy_label(agg.strategy, c.variant);
      for (std::size_t r = 0; r < agg.runs.size(); ++r) {
        const MetricsSeries& run = agg.runs[r];
        for (std::size_t t = 0; t < run.rounds(); ++t) {
          out << label << ',' << r << ',' << t + 1;
          for (SeriesField f : kCsvFields) out << ',' << format_number((run.*f)[t]);
          out << '\n';
        }
      }
    }
  }
}

json summarize(std::string_view command, std::span<const Campaign> campaigns) {
  json columns = json::array();
  for (std::string_view c : kColumns) columns.push_back(std::string(c));
  json out{{"schema_version", kCsvSchemaVersion},
           {"command", std::string(command)},
           {"csv_columns", columns},
           {"campaigns", json::array()}};
  for (const Campaign& c : campaigns) {
    json strategies = json::object();
    for (const StrategyAggregate& agg : c.result.strategies) {
      json final_mean = json::object();
      json final_sd = json::object();
      json window = json::object();
      for (const NamedField& nf : kSummaryFields) {
        const auto& mean = agg.mean.*nf.field;
        const auto& sd = agg.stddev.*nf.field;
        final_mean[nf.name] = mean.empty() ? json(nullptr) : number_or_null(mean.back());
        final_sd[nf.name] = sd.empty() ? json(nullptr) : number_or_null(sd.back());
        window[nf.name] = number_or_null(window_mean(mean));
      }
      strategies[std::string(strategy_name(agg.strategy))] = json{
          {"label", strategy_label(agg.strategy, c.variant)},
          {"final_mean", final_mean},
          {"final_stddev", final_sd},
          {"second_half_mean", window},
      };
    }
    out["campaigns"].push_back(json{
        {"variant", c.variant},
        {"seed", c.config.seed},
        {"replications", c.config.replications},
        {"rounds", c.config.rounds},
        {"config", config_json(c.config)},
        {"optimum_welfare_mean", number_or_null(mean_of(c.result.optimum_welfare))},
        {"stable_welfare_mean", number_or_null(mean_of(c.result.stable_welfare))},
        {"bounds", bounds_json(c)},
        {"strategies", strategies},
    });
  }
  return out;
}

void execute(std::span<Campaign> campaigns, int threads) {
  for (Campaign& c : campaigns) {
    c.result = run_campaign(c.config, c.strategies, c.config.replications, threads);
  }
}

void write_outputs(const std::filesystem::path& dir, std::string_view command,
                   std::span<const Campaign> campaigns) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "metrics.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + (dir / "metrics.csv").string());
    write_metrics_csv(csv, campaigns);
  }
  std::ofstream js(dir / "summary.json", std::ios::binary);
  if (!js) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
  js << summarize(command, campaigns).dump(2) << '\n';
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::uint64_t configured) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MCS_SEED"); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0' || env[0] == '-') {
      throw ConfigError(std::string("MCS_SEED is not an unsigned integer: ") + env);
    }
    return value;
  }
  return configured;
}

std::vector<Strategy> parse_strategies(std::string_view list) {
  std::vector<Strategy> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto s = parse_strategy(item);
      if (!s) throw ConfigError("unknown strategy: " + std::string(item));
      out.push_back(*s);
    }
    pos = comma + 1;
  }
  if (out.empty()) out = all_strategies();
  return out;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<Campaign> campaigns(1);
  try {
    campaigns[0].config = load_config(options.config);
    apply_overrides(campaigns[0].config, options.overrides);
    campaigns[0].strategies = parse_strategies(options.strategies);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  execute(campaigns, options.overrides.threads);
  write_outputs(options.out, "run", campaigns);
  print_headline(out, campaigns);
  out << "wrote " << (options.out / "metrics.csv").string() << " and "
      << (options.out / "summary.json").string() << '\n';
  return kExitOk;
}

std::vector<std::string> preset_ids() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

std::optional<Preset> figure_preset(std::string_view figure) {
  Preset p;
  p.figure = std::string(figure);
  const std::vector<Strategy> all = all_strategies();

  if (figure == "fig2" || figure == "fig3" || figure == "fig4") {
    p.description = figure == "fig2"   ? "energy efficiency vs round, K=N=50, Z=10"
                    : figure == "fig3" ? "average completion time vs round, K=N=50, Z=10"
                                       : "social welfare vs round, K=N=50, Z=10";
    p.campaigns.push_back(Campaign{"", desk_base(50, 50), all, {}});
  } else if (figure == "fig5") {
    p.description = "social welfare vs network size K=N, Z=10";
    for (int n : {10, 20, 50, 100}) {
      ScenarioConfig c = desk_base(n, n);
      c.replications = 5;
      c.rounds = 500;
      p.campaigns.push_back(Campaign{"K=N=" + std::to_string(n), c, all, {}});
    }
  } else if (figure == "fig6") {
    p.description = "social welfare vs number of task types Z, K=N=50";
    for (int z : {5, 10, 20}) {
      ScenarioConfig c = desk_base(50, 50);
      c.num_types = z;
      c.replications = 5;
      c.rounds = 500;
      p.campaigns.push_back(Campaign{"Z=" + std::to_string(z), c, all, {}});
    }
  } else if (figure == "fig7") {
    p.description = "MU and platform utility of CA-MAB-SFS vs number of tasks N, K=50, Z=10";
    for (int n : {20, 35, 50, 75}) {
      ScenarioConfig c = desk_base(50, n);
      c.replications = 5;
      c.rounds = 500;
      p.campaigns.push_back(Campaign{"N=" + std::to_string(n), c, {Strategy::kCaMabSfs}, {}});
    }
  } else if (figure == "fig8") {
    p.description = "blocked MUs vs round, K=10, N=10, Z=10";
    p.campaigns.push_back(Campaign{"", fig8_base(), all, {}});
  } else if (figure == "fig9") {
    p.description = "social welfare vs round for collision-avoidance lambda, K=N=Z=10";
    for (double lambda : {0.0, 0.1, 0.4}) {
      ScenarioConfig c = fig8_base();
      c.agent.lambda = lambda;
      p.campaigns.push_back(Campaign{"lambda=" + format_param(lambda), c,
                                     {Strategy::kCaMabSfs, Strategy::kOfflineWelfareMax}, {}});
    }
  } else if (figure == "fig10") {
    p.description = "cumulative free sensing offers vs round for free-sensing threshold, K=N=Z=10";
    for (double threshold : {0.25, 0.5, 1.0}) {
      ScenarioConfig c = fig8_base();
      c.agent.free_threshold = threshold;
      c.rounds = 200;
      p.campaigns.push_back(
          Campaign{"free_threshold=" + format_param(threshold), c, {Strategy::kCaMabSfs}, {}});
    }
  } else {
    return std::nullopt;
  }
  return p;
}

int cmd_scenarios(const ScenarioOptions& options, std::ostream& out, std::ostream& err) {
  std::optional<Preset> preset = figure_preset(options.figure);
  if (!preset) {
    err << "unknown figure id '" << options.figure << "'; expected one of:";
    for (const std::string& id : preset_ids()) err << ' ' << id;
    err << '\n';
    return kExitUsage;
  }
  try {
    for (Campaign& c : preset->campaigns) apply_overrides(c.config, options.overrides);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  execute(preset->campaigns, options.overrides.threads);
  write_outputs(options.out, "paper-scenarios " + preset->figure, preset->campaigns);
  out << preset->figure << ": " << preset->description << '\n';
  print_headline(out, preset->campaigns);
  out << "wrote " << (options.out / "metrics.csv").string() << " and "
      << (options.out / "summary.json").string() << '\n';
  return kExitOk;
}

int cmd_verify(bool small, std::ostream& out) {
  verify::VerifyOptions options;
  if (!small) {
    options.instances = 1000;
  }
  const verify::VerifyReport report = verify::run_verification(options, out);
  out << (report.passed() ? "verification passed" : "verification FAILED") << " ("
      << report.instances << " instances, up to " << options.max_mus << " MUs and "
      << options.max_slots << " task slots)\n";
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

void print_headline(std::ostream& out, std::span<const Campaign> campaigns) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed;
  for (const Campaign& c : campaigns) {
    out << (c.variant.empty() ? std::string("campaign") : c.variant) << ": K=" << c.config.num_mus
        << " Z=" << c.config.num_types << " rounds=" << c.config.rounds
        << " replications=" << c.config.replications << " seed=" << c.config.seed
        << "  expected optimum welfare " << std::setprecision(2)
        << mean_of(c.result.optimum_welfare) << '\n';
    out << "  " << std::left << std::setw(16) << "strategy" << std::right << std::setw(12)
        << "welfare" << std::setw(11) << "time_s" << std::setw(11) << "J/Mbit" << std::setw(9)
        << "blocked" << std::setw(9) << "free" << std::setw(9) << "accept" << '\n';
    for (const StrategyAggregate& agg : c.result.strategies) {
      const MetricsSeries& m = agg.mean;
      out << "  " << std::left << std::setw(16) << strategy_name(agg.strategy) << std::right
          << std::setprecision(2) << std::setw(12) << window_mean(m.social_welfare)
          << std::setw(11) << window_mean(m.avg_completion_time) << std::setprecision(4)
          << std::setw(11) << window_mean(m.energy_efficiency) << std::setprecision(2)
          << std::setw(9) << window_mean(m.blocked_mus) << std::setw(9)
          << (m.free_offers_cumulative.empty() ? 0.0 : m.free_offers_cumulative.back())
          << std::setw(9) << window_mean(m.acceptance_rate) << '\n';
    }
  }
  out << "(second-half means over rounds; free = final cumulative free offers)\n";
  out.flags(flags);
  out.precision(precision);
}

}  // namespace mcs::cli
