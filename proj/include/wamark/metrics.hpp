#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wamark/image.hpp"

namespace wamark {

// Pixel-domain fidelity between two images of equal size.
double mse(const Image& a, const Image& b);

// Peak signal-to-noise ratio against peak 255; +infinity for identical images.
double psnr_db(double mse_value);
double psnr_db(const Image& a, const Image& b);

// Bit error rate in percent over equal-length non-empty bit vectors (0/1).
double ber_percent(const std::vector<std::uint8_t>& sent, const std::vector<std::uint8_t>& received);

// Normalized correlation of the +/-1 mapping of two bit vectors: (L - 2d) / L
// where d is the Hamming distance; 1 for identical, -1 for complementary.
double normalized_correlation(const std::vector<std::uint8_t>& sent,
                              const std::vector<std::uint8_t>& received);

std::array<std::uint64_t, 256> histogram(const Image& image);

// One evaluation cell's worth of metrics.
struct MetricsReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  double ber_percent = 0.0;
  double normalized_correlation = 0.0;
  std::array<std::uint64_t, 256> histogram{};
};

MetricsReport compare(const Image& original, const Image& processed,
                      const std::vector<std::uint8_t>& sent_bits,
                      const std::vector<std::uint8_t>& received_bits);

}  // namespace wamark
