#pragma once

#include <span>
#include <vector>

#include "mcs/matrix.hpp"
#include "mcs/model.hpp"

namespace mcs {

inline constexpr int kUnassigned = -1;

// MU -> task type (kUnassigned for none).
using TypeMatching = std::vector<int>;

// Both sides' strict preference orders, derived from expected utilities.
// Ties are broken toward the lower index. Being unassigned is worth 0 to
// both sides: an MU prefers a type to nothing when its expected utility is
// positive, and the platform accepts an MU for a type only when its expected
// platform utility is non-negative.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;
  PreferenceProfile(Matrix mu_utility, Matrix mcsp_utility);
  static PreferenceProfile from_expectations(const ExpectationTable& table);

  int num_mus() const { return static_cast<int>(mu_utility_.rows()); }
  int num_types() const { return static_cast<int>(mu_utility_.cols()); }

  const Matrix& mu_utility() const { return mu_utility_; }
  const Matrix& mcsp_utility() const { return mcsp_utility_; }

  // Types from most to least preferred by MU k.
  const std::vector<int>& mu_ranking(int k) const { return mu_ranking_[static_cast<std::size_t>(k)]; }
  // MUs from most to least preferred for type z.
  const std::vector<int>& mcsp_ranking(int z) const {
    return mcsp_ranking_[static_cast<std::size_t>(z)];
  }

  // Strict preference of MU k for type a over type b; either may be kUnassigned.
  bool mu_prefers(int k, int a, int b) const;
  bool mu_acceptable(int k, int z) const { return mu_utility_(k, z) > 0.0; }
  // Strict preference of the platform, for type z, of MU k over MU l.
  bool mcsp_prefers(int z, int k, int l) const;
  bool acceptable(int k, int z) const { return mcsp_utility_(k, z) >= 0.0; }

 private:
  Matrix mu_utility_;
  Matrix mcsp_utility_;
  std::vector<std::vector<int>> mu_ranking_;
  std::vector<std::vector<int>> mcsp_ranking_;
  Table<int> mu_position_;    // K x Z
  Table<int> mcsp_position_;  // Z x K
};

// MU-proposing deferred acceptance with per-type capacities.
TypeMatching deferred_acceptance(const PreferenceProfile& prefs, std::span<const int> capacities);

struct BlockingCount {
  int pairs = 0;
  int blocked_mus = 0;

  bool operator==(const BlockingCount&) const = default;
};

// Counts (MU, type) blocking pairs. A vacant task of the target type can be
// taken by any acceptable MU.
BlockingCount count_blocking_pairs(const TypeMatching& matching, const PreferenceProfile& prefs,
                                   std::span<const int> capacities);

bool is_stable(const TypeMatching& matching, const PreferenceProfile& prefs,
               std::span<const int> capacities);

struct WelfareMatching {
  TypeMatching matching;
  double welfare = 0.0;
};

// Sum of weight(k, matching[k]) over assigned MUs, in MU order.
double matching_weight(const TypeMatching& matching, const Matrix& weight);

// Exact maximum-weight capacity-respecting assignment; MUs may stay
// unassigned at weight 0.
WelfareMatching max_weight_assignment(const Matrix& weight, std::span<const int> capacities);

// Maximizes expected MU plus platform utility.
WelfareMatching max_social_welfare(const ExpectationTable& table, std::span<const int> capacities);

// Rectangular min-cost assignment (rows <= cols): row -> column.
std::vector<int> solve_min_cost_assignment(const Matrix& cost);

}  // namespace mcs
