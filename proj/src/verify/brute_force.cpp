#include "mcs/verify/brute_force.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "mcs/random.hpp"

namespace mcs::verify {

namespace {

double mu_value(const SmallMarket& m, int k, int z) {
  return z == kUnassigned ? 0.0 : m.mu_utility(static_cast<std::size_t>(k), static_cast<std::size_t>(z));
}

double mcsp_value(const SmallMarket& m, int k, int z) {
  return m.mcsp_utility(static_cast<std::size_t>(k), static_cast<std::size_t>(z));
}

// Being unassigned wins ties against a type; otherwise the lower index wins.
bool mu_better(const SmallMarket& m, int k, int a, int b) {
  if (a == b) return false;
  const double va = mu_value(m, k, a);
  const double vb = mu_value(m, k, b);
  if (va != vb) return va > vb;
  if (a == kUnassigned) return true;
  if (b == kUnassigned) return false;
  return a < b;
}

bool mcsp_better(const SmallMarket& m, int z, int k, int l) {
  const double vk = mcsp_value(m, k, z);
  const double vl = mcsp_value(m, l, z);
  if (vk != vl) return vk > vl;
  return k < l;
}

void extend(const SmallMarket& m, std::size_t k, TypeMatching& current, std::vector<int>& load,
            const std::function<void(const TypeMatching&)>& visit) {
  if (k == current.size()) {
    visit(current);
    return;
  }
  current[k] = kUnassigned;
  extend(m, k + 1, current, load, visit);
  for (int z = 0; z < m.num_types(); ++z) {
    auto& used = load[static_cast<std::size_t>(z)];
    if (used >= m.capacities[static_cast<std::size_t>(z)]) continue;
    ++used;
    current[k] = z;
    extend(m, k + 1, current, load, visit);
    --used;
  }
  current[k] = kUnassigned;
}

std::string describe(const TypeMatching& matching) {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < matching.size(); ++k) out << (k ? " " : "") << matching[k];
  out << ']';
  return out.str();
}

Matrix welfare_weight(const SmallMarket& m) {
  Matrix w(m.mu_utility.rows(), m.mu_utility.cols());
  for (std::size_t k = 0; k < w.rows(); ++k) {
    for (std::size_t z = 0; z < w.cols(); ++z) w(k, z) = m.mu_utility(k, z) + m.mcsp_utility(k, z);
  }
  return w;
}

}  // namespace

void for_each_matching(const SmallMarket& market,
                       const std::function<void(const TypeMatching&)>& visit) {
  TypeMatching current(static_cast<std::size_t>(market.num_mus()), kUnassigned);
  std::vector<int> load(static_cast<std::size_t>(market.num_types()), 0);
  extend(market, 0, current, load, visit);
}

int brute_force_blocking_pairs(const SmallMarket& market, const TypeMatching& matching) {
  int pairs = 0;
  for (int k = 0; k < market.num_mus(); ++k) {
    const int current = matching[static_cast<std::size_t>(k)];
    for (int z = 0; z < market.num_types(); ++z) {
      if (z == current) continue;
      if (!mu_better(market, k, z, current)) continue;
      if (mcsp_value(market, k, z) < 0.0) continue;
      int holders = 0;
      bool displaces = false;
      for (int l = 0; l < market.num_mus(); ++l) {
        if (matching[static_cast<std::size_t>(l)] != z) continue;
        ++holders;
        if (mcsp_better(market, z, k, l)) displaces = true;
      }
      if (holders < market.capacities[static_cast<std::size_t>(z)] || displaces) ++pairs;
    }
  }
  return pairs;
}

bool brute_force_is_stable(const SmallMarket& market, const TypeMatching& matching) {
  for (int k = 0; k < market.num_mus(); ++k) {
    const int z = matching[static_cast<std::size_t>(k)];
    if (z == kUnassigned) continue;
    if (!mu_better(market, k, z, kUnassigned) || mcsp_value(market, k, z) < 0.0) return false;
  }
  return brute_force_blocking_pairs(market, matching) == 0;
}

std::vector<TypeMatching> enumerate_stable(const SmallMarket& market) {
  std::vector<TypeMatching> out;
  for_each_matching(market, [&](const TypeMatching& m) {
    if (brute_force_is_stable(market, m)) out.push_back(m);
  });
  return out;
}

TypeMatching mu_optimal_stable(const SmallMarket& market) {
  const std::vector<TypeMatching> stable = enumerate_stable(market);
  for (const TypeMatching& candidate : stable) {
    bool dominates = true;
    for (const TypeMatching& other : stable) {
      for (int k = 0; dominates && k < market.num_mus(); ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (mu_better(market, k, other[ku], candidate[ku])) dominates = false;
      }
      if (!dominates) break;
    }
    if (dominates) return candidate;
  }
  return {};
}

ExhaustiveOptimum exhaustive_max_weight(const SmallMarket& market, const Matrix& weight) {
  ExhaustiveOptimum best;
  best.matching.assign(static_cast<std::size_t>(market.num_mus()), kUnassigned);
  for_each_matching(market, [&](const TypeMatching& m) {
    const double w = matching_weight(m, weight);
    if (w > best.welfare) {
      best.welfare = w;
      best.matching = m;
    }
  });
  return best;
}

SmallMarket random_market(std::uint64_t seed, int max_mus, int max_types, int max_slots) {
  RandomStream rng(seed);
  const int k_count = rng.uniform_int(std::min(2, max_mus), max_mus);
  const int z_count = rng.uniform_int(1, max_types);
  SmallMarket m;
  m.mu_utility = Matrix(static_cast<std::size_t>(k_count), static_cast<std::size_t>(z_count));
  m.mcsp_utility = Matrix(static_cast<std::size_t>(k_count), static_cast<std::size_t>(z_count));
  for (std::size_t k = 0; k < m.mu_utility.rows(); ++k) {
    for (std::size_t z = 0; z < m.mu_utility.cols(); ++z) {
      m.mu_utility(k, z) = rng.uniform(-0.3, 1.0);
      m.mcsp_utility(k, z) = rng.uniform(-0.2, 1.0);
    }
  }
  m.capacities.assign(static_cast<std::size_t>(z_count), 0);
  const int slots = rng.uniform_int(std::min(2, max_slots), max_slots);
  for (int s = 0; s < slots; ++s) ++m.capacities[rng.uniform_index(m.capacities.size())];
  return m;
}

VerifyReport run_verification(const VerifyOptions& options, std::ostream& log) {
  VerifyReport report;
  int da_unstable = 0;
  int da_not_optimal = 0;
  int counter_mismatch = 0;
  int welfare_mismatch = 0;
  int welfare_order = 0;

  auto fail = [&](int instance, const std::string& what) {
    std::ostringstream msg;
    msg << "instance " << instance << ": " << what;
    report.messages.push_back(msg.str());
  };

  for (int i = 0; i < options.instances; ++i) {
    const SmallMarket market =
        random_market(mix_seed(options.seed, {static_cast<std::uint64_t>(i)}), options.max_mus,
                      options.max_types, options.max_slots);
    const PreferenceProfile prefs(market.mu_utility, market.mcsp_utility);
    const TypeMatching da = deferred_acceptance(prefs, market.capacities);
    bool ok = true;

    if (!brute_force_is_stable(market, da)) {
      ++da_unstable;
      ok = false;
      fail(i, "deferred acceptance output " + describe(da) + " is not stable");
    }
    const TypeMatching best = mu_optimal_stable(market);
    if (best != da) {
      ++da_not_optimal;
      ok = false;
      fail(i, "deferred acceptance " + describe(da) + " differs from MU-optimal " + describe(best));
    }

    std::vector<TypeMatching> all;
    for_each_matching(market, [&](const TypeMatching& m) { all.push_back(m); });
    RandomStream pick(mix_seed(options.seed, {static_cast<std::uint64_t>(i), 1}));
    const TypeMatching& probe = all[pick.uniform_index(all.size())];
    for (const TypeMatching* m : {&da, &probe}) {
      const int expected = brute_force_blocking_pairs(market, *m);
      const int counted = count_blocking_pairs(*m, prefs, market.capacities).pairs;
      if (expected != counted) {
        ++counter_mismatch;
        ok = false;
        fail(i, "blocking pairs of " + describe(*m) + ": counted " + std::to_string(counted) +
                    ", expected " + std::to_string(expected));
      }
    }

    const Matrix weight = welfare_weight(market);
    const ExhaustiveOptimum exhaustive = exhaustive_max_weight(market, weight);
    const WelfareMatching solved = max_weight_assignment(weight, market.capacities);
    const double solved_value = matching_weight(solved.matching, weight);
    if (solved_value != exhaustive.welfare) {
      ++welfare_mismatch;
      ok = false;
      std::ostringstream msg;
      msg.precision(17);
      msg << "welfare maximizer " << describe(solved.matching) << " = " << solved_value
          << ", exhaustive " << describe(exhaustive.matching) << " = " << exhaustive.welfare;
      fail(i, msg.str());
    }
    if (exhaustive.welfare < matching_weight(da, weight)) {
      ++welfare_order;
      ok = false;
      fail(i, "stable welfare exceeds the optimum");
    }

    ++report.instances;
    if (!ok) ++report.failures;
  }

  auto line = [&](const char* name, int failed) {
    log << (failed == 0 ? "PASS" : "FAIL") << "  " << name << " (" << failed << " of "
        << report.instances << " instances failed)\n";
  };
  line("deferred acceptance is stable", da_unstable);
  line("deferred acceptance is the MU-optimal stable matching", da_not_optimal);
  line("blocking-pair counter matches brute force", counter_mismatch);
  line("welfare maximizer matches exhaustive optimum", welfare_mismatch);
  line("optimum welfare >= stable welfare", welfare_order);
  for (const std::string& m : report.messages) log << "  " << m << '\n';
  return report;
}

}  // namespace mcs::verify
