#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "mcs/metrics.hpp"
#include "mcs/random.hpp"

using namespace mcs;
using mcs::test::effort_of;

namespace {

MuOutcome executed(double t_total, double energy, double size, double u_mu = 0.0,
                   double u_mcsp = 0.0) {
  MuOutcome m;
  m.offered = true;
  m.accepted = true;
  m.effort = effort_of(t_total, energy);
  m.result_size_mbit = size;
  m.mu_utility = u_mu;
  m.mcsp_utility = u_mcsp;
  return m;
}

BoundParams sample_params() {
  BoundParams p;
  p.delta = 0.05;
  p.delta_k = 0.3;
  p.delta_u = 1.0;
  p.rho = collision_avoidance_rho(0.1, 3);
  p.num_types = 3;
  p.num_mus = 3;
  return p;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("instantaneous regret examples") {
  Matrix u(2, 2);
  u(0, 0) = 0.3;
  u(0, 1) = 0.1;
  u(1, 0) = 0.2;
  u(1, 1) = 0.4;
  std::vector<double> stable{0.3, 0.4};
  CHECK(instantaneous_regret(0, TypeMatching{0, 1}, u, stable) == 0.0);
  CHECK(instantaneous_regret(0, TypeMatching{kUnassigned, 1}, u, stable) == doctest::Approx(0.3));
  CHECK(instantaneous_regret(0, TypeMatching{1, 0}, u, stable) == doctest::Approx(0.2));
  CHECK(stable_utilities(TypeMatching{0, kUnassigned}, u) == std::vector<double>{0.3, 0.0});
}

TEST_CASE("cumulative regret is a running sum") {
  std::vector<double> zeros(5, 0.0);
  CHECK(cumulative_regret(zeros).back() == 0.0);
  std::vector<double> constant(10, 0.2);
  CHECK(cumulative_regret(constant).back() == doctest::Approx(2.0));

  RandomStream rng(3);
  std::vector<double> trace(300);
  for (double& x : trace) x = rng.uniform(-0.1, 0.5);
  std::vector<double> sums = cumulative_regret(trace);
  for (std::size_t t = 0; t < trace.size(); t += 37) {
    double expected = 0.0;
    for (std::size_t i = 0; i <= t; ++i) expected += trace[i];
    CHECK(sums[t] == doctest::Approx(expected));
  }
}

TEST_CASE("social welfare of a round") {
  RoundRecord empty;
  empty.mus.resize(3);
  CHECK(social_welfare(empty) == 0.0);

  RoundRecord one;
  one.mus = {MuOutcome{}, executed(120, 11, 50, 1.3684 - 1.244, 151.4 - 1.3684)};
  CHECK(social_welfare(one) == doctest::Approx(151.4 - 1.244));

  RoundRecord three;
  three.mus = {executed(1, 1, 1, 0.5, 2.0), executed(1, 1, 1, -0.2, 0.0), executed(1, 1, 1, 0.1, 1.0)};
  three.mus.push_back(MuOutcome{});
  three.mus.back().mu_utility = 100.0;  // not accepted, must be ignored
  CHECK(social_welfare(three) == doctest::Approx(0.5 + 2.0 - 0.2 + 0.1 + 1.0));
}

TEST_CASE("energy efficiency and completion time") {
  RoundRecord r;
  r.mus = {executed(120.0, 11.0, 55.0)};
  CHECK(energy_efficiency(r) == doctest::Approx(0.2));
  CHECK(avg_completion_time(r) == doctest::Approx(120.0));

  RoundRecord none;
  none.mus.resize(2);
  CHECK(std::isnan(energy_efficiency(none)));
  CHECK(std::isnan(avg_completion_time(none)));

  RoundRecord a;
  a.mus = {executed(100, 10, 50), MuOutcome{}, executed(140, 14, 60)};
  RoundRecord b;
  b.mus = {executed(140, 14, 60), executed(100, 10, 50)};
  CHECK(energy_efficiency(a) == doctest::Approx(energy_efficiency(b)));
  CHECK(energy_efficiency(a) == doctest::Approx(24.0 / 110.0));
  CHECK(avg_completion_time(a) == doctest::Approx(120.0));
}

TEST_CASE("bound parameters from a utility table") {
  Matrix u(2, 3);
  u(0, 0) = 0.1;
  u(0, 1) = 0.4;
  u(0, 2) = 0.25;
  u(1, 0) = -0.2;
  u(1, 1) = 0.3;
  u(1, 2) = 0.32;
  std::vector<double> stable{0.4, 0.32};
  BoundParams p = bound_params(u, stable, 0.1);
  CHECK(p.delta == doctest::Approx(0.02));
  CHECK(p.delta_u == doctest::Approx(0.6));
  CHECK(p.delta_k == doctest::Approx(0.52));
  CHECK(p.rho == doctest::Approx(0.9 * 0.01));
  CHECK(p.num_types == 3);
  CHECK(p.num_mus == 2);
}

TEST_CASE("bounds reject ill-posed parameters") {
  BoundParams p = sample_params();
  p.delta = 0.0;
  CHECK_THROWS_AS(log_regret_bound(p, 100), std::domain_error);
  p = sample_params();
  p.delta_u = 0.0;
  CHECK_THROWS_AS(log_instability_bound(p, 100), std::domain_error);
  p = sample_params();
  p.rho = collision_avoidance_rho(0.0, 3);
  CHECK_THROWS_AS(regret_bound(p, 100), std::domain_error);
  p.rho = collision_avoidance_rho(1.0, 3);
  CHECK_THROWS_AS(instability_bound(p, 100), std::domain_error);
}

TEST_CASE("bounds blow up as lambda approaches 0 or 1") {
  BoundParams p = sample_params();
  double prev = -std::numeric_limits<double>::infinity();
  for (double lambda : {0.5, 0.2, 0.05, 0.01, 0.001}) {
    p.rho = collision_avoidance_rho(lambda, 3);
    const double v = log_regret_bound(p, 1000);
    CHECK(v > prev);
    prev = v;
  }
  prev = -std::numeric_limits<double>::infinity();
  for (double lambda : {0.7, 0.9, 0.99, 0.999}) {
    p.rho = collision_avoidance_rho(lambda, 3);
    const double v = log_regret_bound(p, 1000);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("instability bound decreases past its maximum") {
  BoundParams p = sample_params();
  p.delta = 0.5;
  p.delta_u = 1.0;
  std::vector<double> values;
  for (double t = 3; t < 1e12; t *= 1.5) values.push_back(log_instability_bound(p, t));
  auto peak = std::max_element(values.begin(), values.end());
  for (auto it = peak; it + 1 != values.end(); ++it) CHECK(*(it + 1) <= *it);
  CHECK(peak + 1 != values.end());
  for (double t : {10.0, 1e3, 1e9}) {
    const double v = instability_bound(p, t);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("regret bound is sublinear") {
  BoundParams p = sample_params();
  p.delta = 0.5;
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 1e6; t < 1e300; t *= 1e10) {
    const double per_round = log_regret_bound(p, t) - std::log(t);
    CHECK(per_round < prev);
    prev = per_round;
  }
  CHECK(prev < log_regret_bound(p, 1e6) - std::log(1e6) - 40.0);
}

TEST_CASE("trailing mean skips missing values") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> s{1, 2, nan, 4, 5};
  std::vector<double> m = trailing_mean(s, 2);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == 1.5);
  CHECK(m[2] == 2.0);
  CHECK(m[3] == 4.0);
  CHECK(m[4] == 4.5);
  CHECK(trailing_mean(s, 1)[1] == 2.0);
  CHECK(std::isnan(trailing_mean(s, 1)[2]));
  CHECK_THROWS(trailing_mean(s, 0));
}

}  // TEST_SUITE
