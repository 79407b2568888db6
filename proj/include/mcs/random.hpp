#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mcs {

// Roles used when splitting independent substreams off a replication seed.
enum class StreamRole : std::uint64_t {
  kScenario = 1,
  kEnvironment = 2,
  kMuEffort = 3,
  kAgent = 4,
  kGroundTruth = 5,
};

/// Derives a child seed from `seed` by hashing in each element of `path`.
/// Distinct paths give statistically independent streams.
std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  std::size_t uniform_index(std::size_t n);
  int uniform_int(int lo, int hi);  // inclusive
  bool bernoulli(double p);
  double normal(double mean, double stddev);

  // Normal draw restricted to strictly positive values. Rejects up to 100
  // times, then clamps to 1e-6 * mean. A zero stddev returns the mean.
  double positive_normal(double mean, double stddev);

  std::uint64_t next_seed() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mcs
