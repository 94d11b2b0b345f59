#pragma once

// Seeded randomness with a fixed algorithm: std::mt19937_64 (fully specified
// by the standard), unbiased bounded draws by rejection, and Fisher-Yates
// shuffling from the back. Results are identical across standard libraries.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace divrank {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace divrank
