#pragma once

#include <cstdint>
#include <random>

namespace dimtrack {

/// splitmix64 mixing step; used to derive independent child seeds from a
/// master seed without correlated low bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `stream` of `master`. Monte Carlo run i uses
/// derive_seed(master, i); sub-streams of a run derive again from that.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

/// Seeded random stream. Every stochastic operation in the library draws from
/// an explicitly passed Rng; nothing reads global state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return uniform01_(engine_); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal(double mean = 0.0, double stddev = 1.0) {
    return mean + stddev * normal01_(engine_);
  }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform01_{0.0, 1.0};
  std::normal_distribution<double> normal01_{0.0, 1.0};
};

}  // namespace dimtrack
