#pragma once

#include <cstdint>
#include <random>

namespace gammalab {

/// Deterministic random stream: identical seed => identical stream,
/// independent of platform and of any global state.
///
/// Algorithm (fixed, part of the determinism contract):
///   engine   mt19937_64 seeded directly with `seed`
///   uniform  (engine() >> 11) * 2^-53, i.e. 53-bit doubles in [0,1)
///   normal   Box-Muller on uniform pairs, sine value cached
///   derive   child seed = splitmix64(seed ^ splitmix64((index+1) * GOLDEN))
class SeededRng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/box-muller/v1";

  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate.
  double normal();

  /// Independent child stream; deterministic in (seed, index).
  SeededRng derive(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 step; used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gammalab
