#include "protoselect/rng.hpp"

namespace protoselect {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

std::uint64_t SplitMix64::next_u64() {
  state_ += kGamma;
  return mix(state_);
}

double SplitMix64::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool SplitMix64::bernoulli(double p) {
  return next_double() < p;
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
  // Multiply-shift: maps the full 64-bit draw onto [0, n) with bias below
  // n / 2^64, irrelevant at the range sizes used here.
  const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix(mix(seed + kGamma) ^ mix(tag + 2 * kGamma));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) {
  return derive_seed(derive_seed(seed, tag_a), tag_b);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b,
                          std::uint64_t tag_c) {
  return derive_seed(derive_seed(seed, tag_a, tag_b), tag_c);
}

}  // namespace protoselect
