#pragma once

// Exhaustive reference implementations for small matching instances. They
// share no code with the production matching module and exist to check it.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcs/matching.hpp"
#include "mcs/matrix.hpp"

namespace mcs::verify {

// A two-sided market given by raw expected utilities. Being unassigned is
// worth 0 to both sides; equal utilities are ordered by lower index.
struct SmallMarket {
  Matrix mu_utility;    // K x Z
  Matrix mcsp_utility;  // K x Z
  std::vector<int> capacities;

  int num_mus() const { return static_cast<int>(mu_utility.rows()); }
  int num_types() const { return static_cast<int>(mu_utility.cols()); }
};

// Calls `visit` once for every capacity-respecting MU -> type map.
void for_each_matching(const SmallMarket& market,
                       const std::function<void(const TypeMatching&)>& visit);

// Blocking pairs by direct application of the definition.
int brute_force_blocking_pairs(const SmallMarket& market, const TypeMatching& matching);

// Individually rational on both sides and free of blocking pairs.
bool brute_force_is_stable(const SmallMarket& market, const TypeMatching& matching);

std::vector<TypeMatching> enumerate_stable(const SmallMarket& market);

// The stable matching every MU weakly prefers to all other stable
// matchings; empty when the stable set is empty or has no such element.
TypeMatching mu_optimal_stable(const SmallMarket& market);

struct ExhaustiveOptimum {
  TypeMatching matching;
  double welfare = 0.0;
};

// Maximum of sum(weight) over all capacity-respecting matchings.
ExhaustiveOptimum exhaustive_max_weight(const SmallMarket& market, const Matrix& weight);

// Random market with utilities drawn so that both sides sometimes find a
// partner unacceptable. Total capacity is at most max_slots.
SmallMarket random_market(std::uint64_t seed, int max_mus, int max_types, int max_slots);

struct VerifyOptions {
  int instances = 200;
  int max_mus = 6;
  int max_types = 6;
  int max_slots = 6;
  std::uint64_t seed = 20240101;
};

struct VerifyReport {
  int instances = 0;
  int failures = 0;
  std::vector<std::string> messages;  // one per failure

  bool passed() const { return failures == 0; }
};

// Checks, per random instance: deferred acceptance is stable, equals the
// MU-optimal stable matching, agrees with the blocking-pair counter, and
// the welfare maximizer matches the exhaustive optimum. Also checks that
// the optimum welfare is at least the stable welfare.
VerifyReport run_verification(const VerifyOptions& options, std::ostream& log);

}  // namespace mcs::verify
