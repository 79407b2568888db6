#include "mcs/random.hpp"

namespace mcs {

namespace {

// splitmix64 finalizer
std::uint64_t avalanche(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = avalanche(seed);
  for (std::uint64_t p : path) h = avalanche(h ^ avalanche(p + 0x632be59bd9b4e019ULL));
  return h;
}

double RandomStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RandomStream::uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t RandomStream::uniform_index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

int RandomStream::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

bool RandomStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

double RandomStream::normal(double mean, double stddev) {
  if (stddev <= 0.0) return mean;
  return std::normal_distribution<double>(mean, stddev)(engine_);
}

double RandomStream::positive_normal(double mean, double stddev) {
  if (stddev <= 0.0) return mean;
  for (int attempt = 0; attempt < 100; ++attempt) {
    double x = normal(mean, stddev);
    if (x > 0.0) return x;
  }
  return 1e-6 * mean;
}

}  // namespace mcs
