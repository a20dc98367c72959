#pragma once

#include <cstdint>
#include <random>

namespace ebr {

/// splitmix64 finalizer; used to derive well-separated seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of child stream `index` of a stream keyed by `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

/// Seeded, splittable source of random variates.
///
/// A source is fully determined by its 64-bit key. Child streams depend only
/// on (key, index), never on how many variates the parent has drawn, so work
/// can be partitioned across threads without changing results.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  RandomSource child(std::uint64_t index) const { return RandomSource(derive_seed(seed_, index)); }

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Unit-rate exponential.
  double exponential();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace ebr
