#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wamark/image.hpp"
#include "wamark/keystream.hpp"
#include "wamark/wave_atom.hpp"

namespace wamark {

// Payload lives in this scale band unless a caller overrides it.
inline constexpr int kEmbedScale = 4;

// Salt for deriving payload bits from a key ("msg-bits" in ASCII).
inline constexpr std::uint64_t kPayloadStreamSalt = 0x6D73672D62697473ULL;

struct EmbedParams {
  double alpha = 2.0;       // chip amplitude in coefficient units
  int scale = kEmbedScale;  // carrier scale band
  double threshold = 0.0;   // detection statistic cutoff; ties decode as 0
};

// Message codec: 16-bit big-endian byte-count header, then payload bytes
// MSB-first. decode is strict: too few bits for the declared length is a
// truncation error, too many is a length mismatch.
std::vector<std::uint8_t> encode_message(std::string_view text);
std::string decode_message(const std::vector<std::uint8_t>& bits);

// Message bits the evaluation harness attaches to a key (replayable).
std::vector<std::uint8_t> keyed_payload_bits(std::uint64_t key, std::size_t count);

// Bits that fit in one image at the given scale: one bit per block.
std::size_t embed_capacity(int image_size, int scale = kEmbedScale);

// Detection statistic: mean of block[i] * chips[i].
double correlate(std::span<const double> block, std::span<const signed char> chips);

Image embed(const Image& cover, std::uint64_t key, const EmbedParams& params,
            const std::vector<std::uint8_t>& bits);

std::vector<std::uint8_t> extract(const Image& suspect, std::uint64_t key,
                                  const EmbedParams& params, std::size_t bit_count);

// Extraction from a precomputed decomposition, so many keys can share one
// forward transform.
std::vector<std::uint8_t> extract_from_coefficients(const CoefficientSet& coeffs,
                                                    std::uint64_t key, const EmbedParams& params,
                                                    std::size_t bit_count);

}  // namespace wamark
