#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wamark/errors.hpp"
#include "wamark/wave_atom.hpp"

namespace wamark {

// SplitMix64 keystream (Steele/Lea/Flood). The exact output stream is part of
// the recorded-run contract: tests and archived CSVs depend on these bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n) by rejection: discard the partial cycle at the top
  // of the 64-bit range, then reduce. n == 1 still consumes one draw.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw DataError("uniform_below: bound must be positive");
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t v = next();
      if (rem != 0 && v >= 0 - rem) continue;
      return v % n;
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Value at position k (0-based) of the stream seeded with `seed`. Used to
// derive per-image keys and per-cell noise seeds so recorded runs replay.
inline std::uint64_t keyed_value(std::uint64_t seed, std::uint64_t k) {
  SplitMix64 rng(seed);
  std::uint64_t v = 0;
  for (std::uint64_t i = 0; i <= k; ++i) v = rng.next();
  return v;
}

// One message bit's carrier: a block and its +/-1 chip pattern.
struct ChipAssignment {
  BlockAddress block;
  std::vector<signed char> chips;
};

struct EmbeddingPlan {
  std::vector<ChipAssignment> assignments;
};

// Keyed embedding plan. A Fisher-Yates shuffle of the block roster picks one
// block per bit; the same stream then yields the chip signs (+1 when the top
// bit of the draw is clear). The shuffle always walks the whole roster, so
// the chip stream depends only on (key, roster size), not on bit_count.
inline EmbeddingPlan derive_plan(std::uint64_t key, const std::vector<BlockAddress>& blocks,
                                 std::size_t bit_count, std::size_t chips_per_bit) {
  if (bit_count > blocks.size()) {
    throw DataError("insufficient blocks: need " + std::to_string(bit_count) + ", have " +
                    std::to_string(blocks.size()));
  }
  if (chips_per_bit == 0) throw DataError("chips_per_bit must be positive");
  SplitMix64 rng(key);
  std::vector<BlockAddress> perm = blocks;
  for (std::size_t i = perm.size(); i-- > 1;) {
    std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
  }
  EmbeddingPlan plan;
  plan.assignments.reserve(bit_count);
  for (std::size_t b = 0; b < bit_count; ++b) {
    ChipAssignment a;
    a.block = perm[b];
    a.chips.resize(chips_per_bit);
    for (signed char& chip : a.chips) chip = (rng.next() >> 63) ? -1 : +1;
    plan.assignments.push_back(std::move(a));
  }
  return plan;
}

}  // namespace wamark
