#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace gossipsim {

// All randomness flows through this engine. mt19937_64 output is fixed by the
// standard; the helpers below avoid std distributions, whose algorithms are
// implementation-defined, so results are bit-identical across toolchains.
using Rng = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Derives an independent sub-seed from a parent seed and a path of labels.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                          std::uint64_t b = 0) noexcept;

// Stable 64-bit tag for a textual label (FNV-1a).
std::uint64_t fnv1a(std::string_view text) noexcept;

// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

// True with probability p; always consumes exactly one draw.
inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace gossipsim
