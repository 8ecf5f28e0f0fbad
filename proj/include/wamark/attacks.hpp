#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "wamark/image.hpp"

namespace wamark {

enum class AttackKind { none, awgn, jpeg };

AttackKind parse_attack_kind(const std::string& name);
const char* attack_kind_name(AttackKind kind);

// One attack instance. `param` is sigma (gray levels) for awgn, quality
// [1,100] for jpeg, ignored for none. `noise_seed` only affects awgn.
struct AttackSpec {
  AttackKind kind = AttackKind::none;
  double param = 0.0;
  std::uint64_t noise_seed = 0;
};

// Additive white Gaussian noise, keyed: the same (image, sigma, seed) always
// produces the same output. sigma >= 0, in gray levels.
Image awgn(const Image& image, double sigma, std::uint64_t seed);

// Luminance quantization table for the given quality, scaled from the
// standard baseline table; quality 50 returns it verbatim, 100 is all ones.
std::array<int, 64> jpeg_quant_table(int quality);

// One JPEG-style degradation pass: 8x8 blocks, DCT, quantize, reconstruct.
// No entropy coding; only the lossy stage matters here.
Image jpeg_attack(const Image& image, int quality);

Image apply_attack(const Image& image, const AttackSpec& spec);

}  // namespace wamark
