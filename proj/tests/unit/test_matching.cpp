#include <doctest.h>

#include <sstream>
#include <vector>

#include "mcs/matching.hpp"
#include "mcs/random.hpp"
#include "mcs/verify/brute_force.hpp"

using namespace mcs;

namespace {

Matrix matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = values[r * cols + c];
  }
  return m;
}

Matrix sum(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  }
  return out;
}

Matrix scaled(const Matrix& a, double s) {
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * s;
  }
  return out;
}

// MU 0 prefers type 0, MU 1 prefers type 1; the platform ranks the other way.
PreferenceProfile opposed() {
  return PreferenceProfile(matrix(2, 2, {0.9, 0.1, 0.1, 0.9}), matrix(2, 2, {1.0, 5.0, 5.0, 1.0}));
}

}  // namespace

TEST_SUITE("matching") {

TEST_CASE("single positive pair is matched") {
  PreferenceProfile p(matrix(1, 1, {0.3}), matrix(1, 1, {2.0}));
  std::vector<int> caps{1};
  CHECK(deferred_acceptance(p, caps) == TypeMatching{0});
}

TEST_CASE("opposed preferences: each MU gets its top type") {
  std::vector<int> caps{1, 1};
  PreferenceProfile p = opposed();
  TypeMatching m = deferred_acceptance(p, caps);
  CHECK(m == TypeMatching{0, 1});
  CHECK(is_stable(m, p, caps));

  verify::SmallMarket market{p.mu_utility(), p.mcsp_utility(), caps};
  CHECK(verify::enumerate_stable(market).size() == 2);
  CHECK(verify::mu_optimal_stable(market) == m);
}

TEST_CASE("swapping the stable pairs creates blocking pairs") {
  std::vector<int> caps{1, 1};
  BlockingCount c = count_blocking_pairs(TypeMatching{1, 0}, opposed(), caps);
  CHECK(c.pairs == 0);  // the swap is the platform-optimal stable matching

  // MU 0 prefers type 0 and type 0's platform prefers MU 0: swap blocks.
  PreferenceProfile aligned(matrix(2, 2, {0.9, 0.1, 0.1, 0.9}), matrix(2, 2, {5.0, 1.0, 1.0, 5.0}));
  BlockingCount d = count_blocking_pairs(TypeMatching{1, 0}, aligned, caps);
  CHECK(d.pairs >= 1);
  CHECK(d.blocked_mus == 2);
}

TEST_CASE("MU unacceptable everywhere stays unassigned") {
  PreferenceProfile p(matrix(2, 2, {0.5, 0.4, 0.5, 0.4}), matrix(2, 2, {1.0, 1.0, -0.1, -0.2}));
  std::vector<int> caps{1, 1};
  TypeMatching m = deferred_acceptance(p, caps);
  CHECK(m[1] == kUnassigned);
  CHECK(m[0] == 0);
}

TEST_CASE("MU with no profitable type stays unassigned") {
  PreferenceProfile p(matrix(1, 2, {-0.1, -0.2}), matrix(1, 2, {1.0, 1.0}));
  std::vector<int> caps{1, 1};
  CHECK(deferred_acceptance(p, caps) == TypeMatching{kUnassigned});
}

TEST_CASE("empty assignment with all-positive utilities: every pair blocks") {
  PreferenceProfile p(matrix(3, 2, {0.2, 0.5, 0.7, 0.1, 0.3, 0.3}), matrix(3, 2, {1, 2, 3, 4, 5, 6}));
  std::vector<int> caps{1, 1};
  BlockingCount c = count_blocking_pairs(TypeMatching(3, kUnassigned), p, caps);
  CHECK(c.pairs == 6);
  CHECK(c.blocked_mus == 3);
}

TEST_CASE("preference rankings and tie-breaking") {
  PreferenceProfile p(matrix(2, 3, {0.3, 0.5, 0.3, 0.0, 0.0, 0.0}), matrix(2, 3, {1, 1, 2, 1, 1, 1}));
  CHECK(p.mu_ranking(0) == std::vector<int>{1, 0, 2});
  CHECK(p.mu_prefers(0, 0, 2));
  CHECK(p.mu_prefers(0, 1, kUnassigned));
  CHECK_FALSE(p.mu_prefers(1, 0, kUnassigned));
  CHECK(p.mcsp_ranking(0) == std::vector<int>{0, 1});
  CHECK(p.mcsp_prefers(2, 0, 1));
}

TEST_CASE("max welfare examples") {
  std::vector<int> one{1};
  WelfareMatching a = max_weight_assignment(matrix(1, 1, {2.5}), one);
  CHECK(a.matching == TypeMatching{0});
  CHECK(a.welfare == doctest::Approx(2.5));

  std::vector<int> caps{1, 1};
  WelfareMatching b = max_weight_assignment(matrix(2, 2, {-1, -2, -3, -0.5}), caps);
  CHECK(b.matching == TypeMatching{kUnassigned, kUnassigned});
  CHECK(b.welfare == 0.0);

  Matrix w = matrix(3, 2, {4, 1, 3, 3, 1, 5});
  WelfareMatching c = max_weight_assignment(w, caps);
  verify::SmallMarket m{w, w, caps};
  CHECK(c.welfare == doctest::Approx(verify::exhaustive_max_weight(m, w).welfare));
  CHECK(c.welfare == doctest::Approx(9.0));
}

TEST_CASE("min-cost assignment on a rectangular matrix") {
  Matrix cost = matrix(2, 3, {4, 1, 3, 2, 1, 5});
  std::vector<int> rows = solve_min_cost_assignment(cost);
  CHECK(rows == std::vector<int>{1, 0});
}

TEST_CASE("deferred acceptance is stable on random instances up to 8 x 8") {
  RandomStream rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    verify::SmallMarket m = verify::random_market(rng.next_seed(), 8, 8, 12);
    PreferenceProfile p(m.mu_utility, m.mcsp_utility);
    TypeMatching da = deferred_acceptance(p, m.capacities);
    CHECK(is_stable(da, p, m.capacities));
    CHECK(verify::brute_force_blocking_pairs(m, da) == 0);
    for (int k = 0; k < m.num_mus(); ++k) {
      if (da[k] == kUnassigned) continue;
      CHECK(m.mu_utility(k, da[k]) > 0.0);
      CHECK(m.mcsp_utility(k, da[k]) >= 0.0);
    }
  }
}

TEST_CASE("blocking-pair counter agrees with the definition on arbitrary matchings") {
  RandomStream rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    verify::SmallMarket m = verify::random_market(rng.next_seed(), 5, 4, 5);
    PreferenceProfile p(m.mu_utility, m.mcsp_utility);
    verify::for_each_matching(m, [&](const TypeMatching& x) {
      CHECK(count_blocking_pairs(x, p, m.capacities).pairs ==
            verify::brute_force_blocking_pairs(m, x));
    });
  }
}

TEST_CASE("welfare optimum dominates the stable outcome and matches enumeration") {
  RandomStream rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    verify::SmallMarket m = verify::random_market(rng.next_seed(), 7, 7, 7);
    PreferenceProfile p(m.mu_utility, m.mcsp_utility);
    Matrix w = sum(m.mu_utility, m.mcsp_utility);
    WelfareMatching opt = max_weight_assignment(w, m.capacities);
    TypeMatching da = deferred_acceptance(p, m.capacities);
    CHECK(opt.welfare >= matching_weight(da, w) - 1e-12);
    CHECK(opt.welfare == matching_weight(opt.matching, w));
    CHECK(opt.welfare == verify::exhaustive_max_weight(m, w).welfare);
  }
}

TEST_CASE("argmax is invariant to positive scaling") {
  RandomStream rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    verify::SmallMarket m = verify::random_market(rng.next_seed(), 8, 6, 10);
    const double s = rng.uniform(0.1, 50.0);
    PreferenceProfile p(m.mu_utility, m.mcsp_utility);
    PreferenceProfile q(scaled(m.mu_utility, s), scaled(m.mcsp_utility, s));
    CHECK(deferred_acceptance(p, m.capacities) == deferred_acceptance(q, m.capacities));
    Matrix w = sum(m.mu_utility, m.mcsp_utility);
    CHECK(max_weight_assignment(w, m.capacities).matching ==
          max_weight_assignment(scaled(w, s), m.capacities).matching);
  }
}

TEST_CASE("verification suite passes") {
  std::ostringstream log;
  verify::VerifyReport r = verify::run_verification(verify::VerifyOptions{}, log);
  CHECK(r.instances == 200);
  CHECK(r.passed());
}

}  // TEST_SUITE
