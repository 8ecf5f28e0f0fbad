#include "wamark/watermark.hpp"

#include <cmath>

namespace wamark {

namespace {

void require_alpha(const EmbedParams& params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) {
    throw DataError("alpha out of range: must be finite and positive");
  }
}

std::size_t chips_per_block(int scale) {
  return static_cast<std::size_t>(1) << (2 * scale);
}

}  // namespace

std::vector<std::uint8_t> encode_message(std::string_view text) {
  if (text.size() > 0xFFFF) {
    throw DataError("message too long: " + std::to_string(text.size()) + " bytes, max 65535");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(16 + 8 * text.size());
  const std::uint16_t len = static_cast<std::uint16_t>(text.size());
  for (int i = 15; i >= 0; --i) bits.push_back((len >> i) & 1);
  for (unsigned char ch : text) {
    for (int i = 7; i >= 0; --i) bits.push_back((ch >> i) & 1);
  }
  return bits;
}

std::string decode_message(const std::vector<std::uint8_t>& bits) {
  if (bits.size() < 16) {
    throw DataError("truncated message: " + std::to_string(bits.size()) +
                    " bits, header needs 16");
  }
  std::uint32_t len = 0;
  for (int i = 0; i < 16; ++i) len = (len << 1) | (bits[i] & 1);
  const std::size_t expect = 16 + 8 * static_cast<std::size_t>(len);
  if (bits.size() < expect) {
    throw DataError("truncated message: header declares " + std::to_string(len) +
                    " bytes, only " + std::to_string((bits.size() - 16) / 8) + " present");
  }
  if (bits.size() > expect) {
    throw DataError("length mismatch: " + std::to_string(bits.size()) + " bits, expected " +
                    std::to_string(expect));
  }
  std::string out;
  out.reserve(len);
  for (std::size_t b = 0; b < len; ++b) {
    unsigned ch = 0;
    for (int i = 0; i < 8; ++i) ch = (ch << 1) | (bits[16 + 8 * b + i] & 1);
    out.push_back(static_cast<char>(ch));
  }
  return out;
}

std::vector<std::uint8_t> keyed_payload_bits(std::uint64_t key, std::size_t count) {
  SplitMix64 rng(key ^ kPayloadStreamSalt);
  std::vector<std::uint8_t> bits(count);
  for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
  return bits;
}

std::size_t embed_capacity(int image_size, int scale) {
  return block_capacity(image_size, scale);
}

double correlate(std::span<const double> block, std::span<const signed char> chips) {
  if (block.size() != chips.size() || block.empty()) {
    throw DataError("length mismatch: block has " + std::to_string(block.size()) +
                    " coefficients, chips " + std::to_string(chips.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i) acc += block[i] * chips[i];
  return acc / static_cast<double>(block.size());
}

Image embed(const Image& cover, std::uint64_t key, const EmbedParams& params,
            const std::vector<std::uint8_t>& bits) {
  require_alpha(params);
  const std::vector<BlockAddress> blocks = list_blocks(cover.size, params.scale);
  if (bits.size() > blocks.size()) {
    throw DataError("capacity exceeded: " + std::to_string(bits.size()) + " bits, capacity " +
                    std::to_string(blocks.size()));
  }
  const EmbeddingPlan plan = derive_plan(key, blocks, bits.size(), chips_per_block(params.scale));
  CoefficientSet coeffs = forward(cover);
  for (std::size_t b = 0; b < bits.size(); ++b) {
    const ChipAssignment& assign = plan.assignments[b];
    const double sign = bits[b] ? 1.0 : -1.0;
    ScaleBand& band = coeffs.band(assign.block);
    for (std::size_t i = 0; i < band.coefficients.size(); ++i) {
      band.coefficients[i] += params.alpha * sign * assign.chips[i];
    }
  }
  return quantize(inverse(coeffs));
}

std::vector<std::uint8_t> extract_from_coefficients(const CoefficientSet& coeffs,
                                                    std::uint64_t key, const EmbedParams& params,
                                                    std::size_t bit_count) {
  const std::vector<BlockAddress> blocks = list_blocks(coeffs.image_size(), params.scale);
  if (bit_count > blocks.size()) {
    throw DataError("capacity exceeded: " + std::to_string(bit_count) + " bits, capacity " +
                    std::to_string(blocks.size()));
  }
  const EmbeddingPlan plan = derive_plan(key, blocks, bit_count, chips_per_block(params.scale));
  std::vector<std::uint8_t> bits(bit_count);
  for (std::size_t b = 0; b < bit_count; ++b) {
    const ChipAssignment& assign = plan.assignments[b];
    const double rho = correlate(get_block(coeffs, assign.block),
                                 {assign.chips.data(), assign.chips.size()});
    bits[b] = rho > params.threshold ? 1 : 0;
  }
  return bits;
}

std::vector<std::uint8_t> extract(const Image& suspect, std::uint64_t key,
                                  const EmbedParams& params, std::size_t bit_count) {
  return extract_from_coefficients(forward(suspect), key, params, bit_count);
}

}  // namespace wamark
