#include <doctest.h>

#include <algorithm>
#include <vector>

#include "fixtures.hpp"
#include "mcs/platform.hpp"

using namespace mcs;
using mcs::test::make_board;
using mcs::test::make_type;

namespace {

std::vector<bool> accepted_flags(const AllocationResult& r) {
  std::vector<bool> out;
  for (const auto& resp : r.responses) out.push_back(resp.accepted());
  return out;
}

}  // namespace

TEST_SUITE("platform") {

TEST_CASE("allocate takes the cheapest proposals up to capacity") {
  PublishedBoard board = make_board(1, 1, {0}, {}, 2);
  std::vector<SensingOffer> offers{{0, 0, 0.9, false}, {1, 0, 0.5, false}, {2, 0, 0.7, false}};
  std::vector<double> w{1.0};
  AllocationResult r = allocate(board, offers, w);
  CHECK(accepted_flags(r) == std::vector<bool>{false, true, true});
  REQUIRE(r.assignment.pairs.size() == 2);
  CHECK(r.assignment.pairs[0].mu_id == 1);
  CHECK(r.assignment.pairs[0].task_id == 0);
  CHECK(r.assignment.pairs[1].mu_id == 2);
  CHECK(r.assignment.pairs[1].task_id == 1);
}

TEST_CASE("allocate rejects proposals above the earning") {
  PublishedBoard board = make_board(1, 1, {0}, {}, 2);
  std::vector<SensingOffer> offers{{0, 0, 0.5, false}, {1, 0, 0.7, false}};
  std::vector<double> w{0.6};
  CHECK(accepted_flags(allocate(board, offers, w)) == std::vector<bool>{true, false});
}

TEST_CASE("allocate with no offers assigns nothing") {
  PublishedBoard board = make_board(1, 2, {0, 1});
  std::vector<double> w{1.0, 1.0};
  CHECK(allocate(board, {}, w).assignment.pairs.empty());
}

TEST_CASE("equal proposals go to the lower MU id") {
  PublishedBoard board = make_board(1, 1, {0});
  std::vector<SensingOffer> offers{{5, 0, 0.3, false}, {2, 0, 0.3, false}};
  std::vector<double> w{1.0};
  AllocationResult r = allocate(board, offers, w);
  REQUIRE(r.assignment.pairs.size() == 1);
  CHECK(r.assignment.pairs[0].mu_id == 2);
}

TEST_CASE("allocate rejects malformed input") {
  PublishedBoard board = make_board(1, 1, {0});
  std::vector<double> w{1.0};
  std::vector<SensingOffer> dup{{0, 0, 0.3, false}, {0, 0, 0.4, false}};
  CHECK_THROWS_AS(allocate(board, dup, w), std::invalid_argument);
  std::vector<SensingOffer> unknown{{0, 3, 0.3, false}};
  CHECK_THROWS_AS(allocate(board, unknown, w), std::invalid_argument);
}

TEST_CASE("publish reports the most expensive accepted proposal") {
  std::vector<TaskType> types{make_type(0, 50.0, 2), make_type(1, 60.0, 1), make_type(2, 70.0, 2)};
  RandomStream rng(1);
  PublishedBoard first = publish(types, nullptr, 1, NoiseModel{}, rng);
  for (double p : first.last_payments) CHECK(p == kNoPayment);
  CHECK(first.tasks.size() == 5);
  CHECK(first.tasks_by_type[0] == std::vector<int>{0, 1});
  CHECK(first.tasks_by_type[2] == std::vector<int>{3, 4});

  Assignment prev;
  prev.pairs = {{0, 0, 0, 0.5, false}, {1, 1, 0, 0.7, false},  // type 0 full
                {2, 2, 1, 0.0, true},                          // type 1 full, free
                {3, 3, 2, 0.4, false}};                        // type 2 half filled
  PublishedBoard next = publish(types, &prev, 2, NoiseModel{}, rng);
  CHECK(next.last_payments[0] == doctest::Approx(0.7));
  CHECK(next.last_payments[1] == 0.0);
  CHECK(next.last_payments[2] == kNoPayment);
}

TEST_CASE("task ids and groups are stable across rounds") {
  std::vector<TaskType> types{make_type(0, 50.0, 3), make_type(1, 60.0, 2)};
  RandomStream rng(4);
  PublishedBoard a = publish(types, nullptr, 1, NoiseModel{}, rng);
  PublishedBoard b = publish(types, nullptr, 2, NoiseModel{}, rng);
  CHECK(a.tasks_by_type == b.tasks_by_type);
  for (const auto& task : b.tasks) CHECK(task.result_size_mbit > 0.0);
}

TEST_CASE("allocation properties on random markets") {
  RandomStream rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int z_count = rng.uniform_int(1, 5);
    PublishedBoard board;
    board.round = 1;
    board.tasks_by_type.resize(static_cast<std::size_t>(z_count));
    std::vector<double> w;
    for (int z = 0; z < z_count; ++z) {
      const int count = rng.uniform_int(1, 4);
      for (int i = 0; i < count; ++i) {
        int id = static_cast<int>(board.tasks.size());
        board.tasks.push_back(TaskInstance{id, z, 50.0, 1});
        board.tasks_by_type[z].push_back(id);
      }
      w.push_back(rng.uniform(0.5, 2.0));
    }
    board.last_payments.assign(static_cast<std::size_t>(z_count), kNoPayment);
    std::vector<SensingOffer> offers;
    const int k_count = rng.uniform_int(0, 15);
    for (int k = 0; k < k_count; ++k) {
      const bool free = rng.bernoulli(0.1);
      offers.push_back({k, rng.uniform_int(0, z_count - 1), free ? 0.0 : rng.uniform(0.0, 2.5), free});
    }
    AllocationResult r = allocate(board, offers, w);
    REQUIRE(r.responses.size() == offers.size());

    for (int z = 0; z < z_count; ++z) {
      std::vector<double> accepted, rejected_affordable;
      for (std::size_t i = 0; i < offers.size(); ++i) {
        if (offers[i].type_id != z) continue;
        if (r.responses[i].accepted()) {
          accepted.push_back(offers[i].proposed_payment);
          CHECK(offers[i].proposed_payment <= w[z]);
          const int task = *r.responses[i].task_id;
          CHECK(board.tasks[task].type_id == z);
        } else if (offers[i].proposed_payment <= w[z]) {
          rejected_affordable.push_back(offers[i].proposed_payment);
        }
      }
      CHECK(accepted.size() <= board.tasks_by_type[z].size());
      if (!accepted.empty() && !rejected_affordable.empty()) {
        CHECK(*std::max_element(accepted.begin(), accepted.end()) <=
              *std::min_element(rejected_affordable.begin(), rejected_affordable.end()));
        CHECK(accepted.size() == board.tasks_by_type[z].size());
      }
    }
    std::vector<int> tasks;
    for (const auto& p : r.assignment.pairs) tasks.push_back(p.task_id);
    std::sort(tasks.begin(), tasks.end());
    CHECK(std::adjacent_find(tasks.begin(), tasks.end()) == tasks.end());
  }
}

}  // TEST_SUITE
