#pragma once

#include <span>
#include <vector>

#include "mcs/matching.hpp"
#include "mcs/model.hpp"
#include "mcs/protocol.hpp"

namespace mcs {

// What happened to one MU in one round.
struct MuOutcome {
  bool offered = false;
  int offered_type = kUnassigned;
  bool free_offer = false;
  bool accepted = false;
  int task_id = -1;
  int type_id = kUnassigned;
  double result_size_mbit = 0.0;
  double payment = 0.0;
  double cost = 0.0;
  double mu_utility = 0.0;
  double mcsp_utility = 0.0;
  EffortSample effort;
};

struct RoundRecord {
  int round = 0;
  std::vector<SensingOffer> offers;
  Assignment assignment;
  std::vector<MuOutcome> mus;  // indexed by MU id

  int num_accepted() const { return static_cast<int>(assignment.pairs.size()); }
  int num_free_offers() const;
};

// Expected-utility gap between MU k's stable task and its assignment this
// round. An unassigned MU contributes zero expected utility.
double instantaneous_regret(int k, const TypeMatching& assignment, const Matrix& mu_utility,
                            std::span<const double> stable_utility);

std::vector<double> cumulative_regret(std::span<const double> instantaneous);

// Expected MU utility of each MU under `stable` (0 when unassigned).
std::vector<double> stable_utilities(const TypeMatching& stable, const Matrix& mu_utility);

double social_welfare(const RoundRecord& record);
// Joules per megabit of result over executed tasks; NaN if none.
double energy_efficiency(const RoundRecord& record);
// Mean total time over executed tasks; NaN if none.
double avg_completion_time(const RoundRecord& record);

// Constants of the stable-regret and instability bounds.
struct BoundParams {
  double delta = 0.0;        // minimum expected-utility gap between two types
  double delta_k = 0.0;      // largest shortfall below the stable utility
  double delta_u = 0.0;      // utility range U_max - U_min
  double rho = 0.0;          // (1 - lambda) * lambda^(Z-1)
  int num_types = 0;
  int num_mus = 0;

  // Exponent delta^2 / (Z * delta_u).
  double exponent() const;
};

double collision_avoidance_rho(double lambda, int num_types);

// delta and delta_u from the MU utility table; delta_k is the maximum over
// MUs of the gap to the stable utility.
BoundParams bound_params(const Matrix& mu_utility, std::span<const double> stable_utility,
                         double lambda);

// Natural logs of the leading-order bound expressions. Both throw
// std::domain_error when delta <= 0, delta_u <= 0, the exponent is >= 1,
// or rho is outside (0, 1).
double log_regret_bound(const BoundParams& params, double horizon);
double log_instability_bound(const BoundParams& params, double horizon);

// May be +inf for realistic sizes; see log_regret_bound.
double regret_bound(const BoundParams& params, double horizon);
// Clamped to [0, 1].
double instability_bound(const BoundParams& params, double horizon);

// Trailing mean with the given window; NaN entries are skipped.
std::vector<double> trailing_mean(std::span<const double> series, std::size_t window);

}  // namespace mcs
