#include "mcs/matching.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mcs {

namespace {

std::vector<int> ranked(std::size_t n, const std::function<double(std::size_t)>& value) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return value(static_cast<std::size_t>(a)) > value(static_cast<std::size_t>(b));
  });
  return order;
}

void check_capacities(const PreferenceProfile& prefs, std::span<const int> capacities) {
  if (static_cast<int>(capacities.size()) != prefs.num_types()) {
    throw std::invalid_argument("one capacity per task type required");
  }
}

}  // namespace

PreferenceProfile::PreferenceProfile(Matrix mu_utility, Matrix mcsp_utility)
    : mu_utility_(std::move(mu_utility)), mcsp_utility_(std::move(mcsp_utility)) {
  if (mu_utility_.rows() != mcsp_utility_.rows() || mu_utility_.cols() != mcsp_utility_.cols()) {
    throw std::invalid_argument("utility tables must have the same shape");
  }
  const std::size_t k_count = mu_utility_.rows();
  const std::size_t z_count = mu_utility_.cols();
  mu_position_ = Table<int>(k_count, z_count);
  mcsp_position_ = Table<int>(z_count, k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    mu_ranking_.push_back(ranked(z_count, [&](std::size_t z) { return mu_utility_(k, z); }));
    for (std::size_t r = 0; r < z_count; ++r) {
      mu_position_(k, static_cast<std::size_t>(mu_ranking_.back()[r])) = static_cast<int>(r);
    }
  }
  for (std::size_t z = 0; z < z_count; ++z) {
    mcsp_ranking_.push_back(ranked(k_count, [&](std::size_t k) { return mcsp_utility_(k, z); }));
    for (std::size_t r = 0; r < k_count; ++r) {
      mcsp_position_(z, static_cast<std::size_t>(mcsp_ranking_.back()[r])) = static_cast<int>(r);
    }
  }
}

PreferenceProfile PreferenceProfile::from_expectations(const ExpectationTable& table) {
  return PreferenceProfile(table.mu_utility, table.mcsp_utility);
}

bool PreferenceProfile::mu_prefers(int k, int a, int b) const {
  if (a == b) return false;
  if (a == kUnassigned) return !mu_acceptable(k, b);
  if (b == kUnassigned) return mu_acceptable(k, a);
  const auto ku = static_cast<std::size_t>(k);
  return mu_position_(ku, static_cast<std::size_t>(a)) < mu_position_(ku, static_cast<std::size_t>(b));
}

bool PreferenceProfile::mcsp_prefers(int z, int k, int l) const {
  const auto zu = static_cast<std::size_t>(z);
  return mcsp_position_(zu, static_cast<std::size_t>(k)) < mcsp_position_(zu, static_cast<std::size_t>(l));
}

TypeMatching deferred_acceptance(const PreferenceProfile& prefs, std::span<const int> capacities) {
  check_capacities(prefs, capacities);
  const int k_count = prefs.num_mus();
  const int z_count = prefs.num_types();

  TypeMatching match(static_cast<std::size_t>(k_count), kUnassigned);
  std::vector<int> next_choice(static_cast<std::size_t>(k_count), 0);
  std::vector<std::vector<int>> held(static_cast<std::size_t>(z_count));
  std::deque<int> free_mus(static_cast<std::size_t>(k_count));
  std::iota(free_mus.begin(), free_mus.end(), 0);

  while (!free_mus.empty()) {
    const int k = free_mus.front();
    free_mus.pop_front();
    auto& choice = next_choice[static_cast<std::size_t>(k)];
    if (choice >= z_count) continue;  // proposed to every type
    const int z = prefs.mu_ranking(k)[static_cast<std::size_t>(choice++)];
    if (!prefs.mu_acceptable(k, z)) continue;  // the rest rank below nothing
    auto& holders = held[static_cast<std::size_t>(z)];
    const int cap = capacities[static_cast<std::size_t>(z)];

    if (!prefs.acceptable(k, z) || cap == 0) {
      free_mus.push_back(k);
      continue;
    }
    if (static_cast<int>(holders.size()) < cap) {
      holders.push_back(k);
      match[static_cast<std::size_t>(k)] = z;
      continue;
    }
    // Full: displace the least preferred holder if k beats it.
    auto worst = std::max_element(holders.begin(), holders.end(), [&](int a, int b) {
      return prefs.mcsp_prefers(z, a, b);
    });
    if (prefs.mcsp_prefers(z, k, *worst)) {
      const int displaced = *worst;
      *worst = k;
      match[static_cast<std::size_t>(k)] = z;
      match[static_cast<std::size_t>(displaced)] = kUnassigned;
      free_mus.push_back(displaced);
    } else {
      free_mus.push_back(k);
    }
  }
  return match;
}

BlockingCount count_blocking_pairs(const TypeMatching& matching, const PreferenceProfile& prefs,
                                   std::span<const int> capacities) {
  check_capacities(prefs, capacities);
  const int k_count = prefs.num_mus();
  const int z_count = prefs.num_types();
  if (static_cast<int>(matching.size()) != k_count) {
    throw std::invalid_argument("matching size differs from number of MUs");
  }

  std::vector<std::vector<int>> holders(static_cast<std::size_t>(z_count));
  for (int k = 0; k < k_count; ++k) {
    const int z = matching[static_cast<std::size_t>(k)];
    if (z != kUnassigned) holders[static_cast<std::size_t>(z)].push_back(k);
  }

  BlockingCount count;
  for (int k = 0; k < k_count; ++k) {
    const int current = matching[static_cast<std::size_t>(k)];
    bool blocked = false;
    for (int z = 0; z < z_count; ++z) {
      if (z == current || !prefs.mu_prefers(k, z, current) || !prefs.acceptable(k, z)) continue;
      const auto& h = holders[static_cast<std::size_t>(z)];
      bool platform_gains = static_cast<int>(h.size()) < capacities[static_cast<std::size_t>(z)];
      for (std::size_t i = 0; !platform_gains && i < h.size(); ++i) {
        platform_gains = prefs.mcsp_prefers(z, k, h[i]);
      }
      if (platform_gains) {
        ++count.pairs;
        blocked = true;
      }
    }
    if (blocked) ++count.blocked_mus;
  }
  return count;
}

bool is_stable(const TypeMatching& matching, const PreferenceProfile& prefs,
               std::span<const int> capacities) {
  return count_blocking_pairs(matching, prefs, capacities) == BlockingCount{};
}

double matching_weight(const TypeMatching& matching, const Matrix& weight) {
  double total = 0.0;
  for (std::size_t k = 0; k < matching.size(); ++k) {
    if (matching[k] != kUnassigned) total += weight(k, static_cast<std::size_t>(matching[k]));
  }
  return total;
}

// Shortest augmenting path with dual potentials (Hungarian method), O(n^2 m).
std::vector<int> solve_min_cost_assignment(const Matrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (n > m) throw std::invalid_argument("assignment needs rows <= cols");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based internally; column 0 is the virtual root.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_slack(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = owner[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (owner[j] != 0) row_to_col[owner[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

WelfareMatching max_weight_assignment(const Matrix& weight, std::span<const int> capacities) {
  const std::size_t k_count = weight.rows();
  if (capacities.size() != weight.cols()) {
    throw std::invalid_argument("one capacity per task type required");
  }
  // Expand each type into unit slots; one zero-cost "stay idle" column per MU.
  std::vector<int> slot_type;
  for (std::size_t z = 0; z < capacities.size(); ++z) {
    for (int c = 0; c < capacities[z]; ++c) slot_type.push_back(static_cast<int>(z));
  }
  const std::size_t slots = slot_type.size();
  Matrix cost(k_count, slots + k_count, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t s = 0; s < slots; ++s) {
      cost(k, s) = -std::max(0.0, weight(k, static_cast<std::size_t>(slot_type[s])));
    }
  }

  WelfareMatching out;
  out.matching.assign(k_count, kUnassigned);
  const std::vector<int> col = solve_min_cost_assignment(cost);
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto c = static_cast<std::size_t>(col[k]);
    if (c < slots && weight(k, static_cast<std::size_t>(slot_type[c])) > 0.0) {
      out.matching[k] = slot_type[c];
    }
  }
  out.welfare = matching_weight(out.matching, weight);
  return out;
}

WelfareMatching max_social_welfare(const ExpectationTable& table, std::span<const int> capacities) {
  Matrix weight(table.mu_utility.rows(), table.mu_utility.cols());
  for (std::size_t k = 0; k < weight.rows(); ++k) {
    for (std::size_t z = 0; z < weight.cols(); ++z) {
      weight(k, z) = table.mu_utility(k, z) + table.mcsp_utility(k, z);
    }
  }
  return max_weight_assignment(weight, capacities);
}

}  // namespace mcs
