#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace protoselect {

// splitmix64: counter-based generator with a 64-bit state. Output depends
// only on the seed and the number of draws, so every randomized pipeline in
// the library is reproducible bit-for-bit across runs and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 mantissa bits.
  double next_double();

  // True with probability p (p <= 0 never, p >= 1 always). Always consumes
  // exactly one draw so call sites stay stream-aligned.
  bool bernoulli(double p);

  // Uniform in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n);

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Deterministic sub-stream derivation: hash-chains the seed with integer
// tags (class id, fold index, attempt counter, ...). Unrelated tags give
// unrelated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b,
                          std::uint64_t tag_c);

}  // namespace protoselect
