#include "wamark/attacks.hpp"

#include <cmath>
#include <numbers>

#include "wamark/keystream.hpp"

namespace wamark {

namespace {

// Standard baseline luminance quantization table, zigzag-free row-major.
constexpr std::array<int, 64> kBaseTable = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

// Orthonormal 8x8 DCT-II basis: dct_[u][x] = c(u) cos((2x+1) u pi / 16).
struct DctBasis {
  double m[8][8];
  DctBasis() {
    for (int u = 0; u < 8; ++u) {
      const double cu = (u == 0) ? std::sqrt(0.125) : 0.5;
      for (int x = 0; x < 8; ++x) {
        m[u][x] = cu * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
  }
};

const DctBasis& dct_basis() {
  static const DctBasis b;
  return b;
}

double round_half_away(double v) {
  return std::round(v);
}

}  // namespace

AttackKind parse_attack_kind(const std::string& name) {
  if (name == "none") return AttackKind::none;
  if (name == "awgn") return AttackKind::awgn;
  if (name == "jpeg") return AttackKind::jpeg;
  throw DataError("unknown attack: '" + name + "'");
}

const char* attack_kind_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::none:
      return "none";
    case AttackKind::awgn:
      return "awgn";
    case AttackKind::jpeg:
      return "jpeg";
  }
  throw InternalError("unhandled attack kind");
}

Image awgn(const Image& image, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DataError("sigma out of range: must be finite and >= 0");
  }
  require_valid_size(image.size);
  SplitMix64 rng(seed);
  Image out(image.size);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    // Box-Muller, cosine branch only; u1 is shifted into (0,1] so log(u1)
    // is always finite. Two keystream draws per pixel, row-major order.
    const std::uint64_t v1 = rng.next();
    const std::uint64_t v2 = rng.next();
    const double u1 = static_cast<double>((v1 >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(v2 >> 11) * 0x1.0p-53;
    const double noise =
        sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    out.pixels[i] = quantize_sample(static_cast<double>(image.pixels[i]) + noise);
  }
  return out;
}

std::array<int, 64> jpeg_quant_table(int quality) {
  if (quality < 1 || quality > 100) {
    throw DataError("quality out of range: must be in [1, 100], got " + std::to_string(quality));
  }
  const int scale = (quality < 50) ? 5000 / quality : 200 - 2 * quality;
  std::array<int, 64> out{};
  for (int i = 0; i < 64; ++i) {
    int v = (kBaseTable[i] * scale + 50) / 100;
    if (v < 1) v = 1;
    if (v > 255) v = 255;
    out[i] = v;
  }
  return out;
}

Image jpeg_attack(const Image& image, int quality) {
  require_valid_size(image.size);
  const std::array<int, 64> qt = jpeg_quant_table(quality);
  const DctBasis& dct = dct_basis();
  const int N = image.size;
  Image out(N);

  double blk[8][8];
  double tmp[8][8];
  double freq[8][8];
  for (int by = 0; by < N; by += 8) {
    for (int bx = 0; bx < N; bx += 8) {
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          blk[y][x] = static_cast<double>(image.at(by + y, bx + x)) - 128.0;
        }
      }
      // F = C * blk * C^T
      for (int u = 0; u < 8; ++u) {
        for (int x = 0; x < 8; ++x) {
          double s = 0.0;
          for (int y = 0; y < 8; ++y) s += dct.m[u][y] * blk[y][x];
          tmp[u][x] = s;
        }
      }
      for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
          double s = 0.0;
          for (int x = 0; x < 8; ++x) s += tmp[u][x] * dct.m[v][x];
          const double q = static_cast<double>(qt[u * 8 + v]);
          freq[u][v] = round_half_away(s / q) * q;
        }
      }
      // blk' = C^T * F * C
      for (int y = 0; y < 8; ++y) {
        for (int v = 0; v < 8; ++v) {
          double s = 0.0;
          for (int u = 0; u < 8; ++u) s += dct.m[u][y] * freq[u][v];
          tmp[y][v] = s;
        }
      }
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          double s = 0.0;
          for (int v = 0; v < 8; ++v) s += tmp[y][v] * dct.m[v][x];
          out.at(by + y, bx + x) = quantize_sample(s + 128.0);
        }
      }
    }
  }
  return out;
}

Image apply_attack(const Image& image, const AttackSpec& spec) {
  switch (spec.kind) {
    case AttackKind::none:
      return image;
    case AttackKind::awgn:
      return awgn(image, spec.param, spec.noise_seed);
    case AttackKind::jpeg: {
      const double rounded = std::round(spec.param);
      if (std::abs(spec.param - rounded) > 1e-9) {
        throw DataError("quality out of range: must be an integer, got a fraction");
      }
      return jpeg_attack(image, static_cast<int>(rounded));
    }
  }
  throw InternalError("unhandled attack kind");
}

}  // namespace wamark
