#include "mcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcs {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

int RoundRecord::num_free_offers() const {
  return static_cast<int>(std::count_if(offers.begin(), offers.end(),
                                        [](const SensingOffer& o) { return o.is_free; }));
}

double instantaneous_regret(int k, const TypeMatching& assignment, const Matrix& mu_utility,
                            std::span<const double> stable_utility) {
  const auto ku = static_cast<std::size_t>(k);
  const int z = assignment[ku];
  const double obtained = z == kUnassigned ? 0.0 : mu_utility(ku, static_cast<std::size_t>(z));
  return stable_utility[ku] - obtained;
}

std::vector<double> cumulative_regret(std::span<const double> instantaneous) {
  std::vector<double> out(instantaneous.size());
  double total = 0.0;
  for (std::size_t i = 0; i < instantaneous.size(); ++i) {
    total += instantaneous[i];
    out[i] = total;
  }
  return out;
}

std::vector<double> stable_utilities(const TypeMatching& stable, const Matrix& mu_utility) {
  std::vector<double> out(stable.size(), 0.0);
  for (std::size_t k = 0; k < stable.size(); ++k) {
    if (stable[k] != kUnassigned) out[k] = mu_utility(k, static_cast<std::size_t>(stable[k]));
  }
  return out;
}

double social_welfare(const RoundRecord& record) {
  double total = 0.0;
  for (const MuOutcome& m : record.mus) {
    if (m.accepted) total += m.mu_utility + m.mcsp_utility;
  }
  return total;
}

double energy_efficiency(const RoundRecord& record) {
  double energy = 0.0;
  double size = 0.0;
  for (const MuOutcome& m : record.mus) {
    if (!m.accepted) continue;
    energy += m.effort.energy;
    size += m.result_size_mbit;
  }
  return size > 0.0 ? energy / size : kNaN;
}

double avg_completion_time(const RoundRecord& record) {
  double total = 0.0;
  int n = 0;
  for (const MuOutcome& m : record.mus) {
    if (!m.accepted) continue;
    total += m.effort.t_total;
    ++n;
  }
  return n > 0 ? total / n : kNaN;
}

double BoundParams::exponent() const { return delta * delta / (num_types * delta_u); }

double collision_avoidance_rho(double lambda, int num_types) {
  return (1.0 - lambda) * std::pow(lambda, num_types - 1);
}

BoundParams bound_params(const Matrix& mu_utility, std::span<const double> stable_utility,
                         double lambda) {
  BoundParams p;
  p.num_mus = static_cast<int>(mu_utility.rows());
  p.num_types = static_cast<int>(mu_utility.cols());
  p.rho = collision_avoidance_rho(lambda, p.num_types);
  p.delta = std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < mu_utility.rows(); ++k) {
    for (std::size_t i = 0; i < mu_utility.cols(); ++i) {
      const double u = mu_utility(k, i);
      lo = std::min(lo, u);
      hi = std::max(hi, u);
      p.delta_k = std::max(p.delta_k, stable_utility[k] - u);
      for (std::size_t j = i + 1; j < mu_utility.cols(); ++j) {
        p.delta = std::min(p.delta, std::abs(u - mu_utility(k, j)));
      }
    }
  }
  if (mu_utility.cols() < 2) p.delta = 0.0;
  p.delta_u = hi - lo;
  return p;
}

namespace {

// log of 8 Z^5 K^2 e^x / (rho^(Z^4+1) (1 - x))
double log_leading_constant(const BoundParams& p) {
  if (!(p.delta > 0.0)) throw std::domain_error("bound needs a positive utility gap");
  if (!(p.delta_u > 0.0)) throw std::domain_error("bound needs a positive utility range");
  if (!(p.rho > 0.0 && p.rho < 1.0)) throw std::domain_error("bound needs rho in (0, 1)");
  const double x = p.exponent();
  if (x >= 1.0) throw std::domain_error("bound exponent must be below 1");
  const double z = p.num_types;
  const double z4 = z * z * z * z;
  return std::log(8.0) + 5.0 * std::log(z) + 2.0 * std::log(static_cast<double>(p.num_mus)) + x -
         (z4 + 1.0) * std::log(p.rho) - std::log1p(-x);
}

}  // namespace

double log_regret_bound(const BoundParams& params, double horizon) {
  const double x = params.exponent();
  const double c = log_leading_constant(params);
  return std::log(params.delta_k) + c + std::log(std::log(horizon)) + (1.0 - x) * std::log(horizon);
}

double log_instability_bound(const BoundParams& params, double horizon) {
  const double x = params.exponent();
  const double c = log_leading_constant(params);
  return c + std::log(std::log(horizon)) - x * std::log(horizon);
}

double regret_bound(const BoundParams& params, double horizon) {
  return std::exp(log_regret_bound(params, horizon));
}

double instability_bound(const BoundParams& params, double horizon) {
  return std::clamp(std::exp(log_instability_bound(params, horizon)), 0.0, 1.0);
}

std::vector<double> trailing_mean(std::span<const double> series, std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
  std::vector<double> out(series.size(), kNaN);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t begin = i + 1 >= window ? i + 1 - window : 0;
    double total = 0.0;
    int n = 0;
    for (std::size_t j = begin; j <= i; ++j) {
      if (std::isnan(series[j])) continue;
      total += series[j];
      ++n;
    }
    if (n > 0) out[i] = total / n;
  }
  return out;
}

}  // namespace mcs
