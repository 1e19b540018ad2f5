#pragma once

#include <cstdint>
#include <random>

namespace jss {

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard, so identical seeds give identical streams on every platform; the
// distributions below are hand-rolled because the std ones are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on {0, ..., n-1}; requires n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t n);

  // Uniform on {lo, ..., hi}; requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform_real();

  // Normal via Box-Muller (cosine branch); two uniforms consumed per call.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 mix; used to derive independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace jss
