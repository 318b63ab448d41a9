#pragma once

#include <cstdint>
#include <random>

namespace cloudmarket {

// Deterministic samplers on top of mt19937_64. The standard library's
// distribution objects are implementation-defined, so reproducible output
// across toolchains requires generating variates by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] by rejection.
  int uniform_int(int lo, int hi);

  // Box-Muller, one variate per call (the pair's second half is discarded to
  // keep the draw count independent of call interleaving).
  double normal(double mean, double stddev);

  // Knuth product method; adequate for the arrival rates used here.
  int poisson(double mean);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// SplitMix64 step, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace cloudmarket
