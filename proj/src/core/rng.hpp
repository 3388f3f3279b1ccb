#pragma once

#include <cstdint>
#include <random>

namespace chainstore {

/// splitmix64 step, used to derive independent per-replication seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic dedicated substream for one replication: the engine state is
/// fully specified by (seed, index) regardless of how many draws other
/// replications consume.
inline std::mt19937_64 replication_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  const std::uint64_t a = splitmix64(s);
  const std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) with a fixed bit recipe; avoids the
/// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& eng, double p) { return uniform01(eng) < p; }

/// Neumaier-compensated accumulator; replication order independent up to the
/// compensation it exists to provide.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace chainstore
