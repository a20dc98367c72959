#include "ebr/random.hpp"

#include <array>

namespace ebr {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
  const std::uint64_t mixed = splitmix64(seed);
  std::array<std::uint32_t, 4> words{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(make_engine(seed)) {}

double RandomSource::uniform() { return uniform_(engine_); }

double RandomSource::normal() { return normal_(engine_); }

double RandomSource::exponential() { return exponential_(engine_); }

}  // namespace ebr
