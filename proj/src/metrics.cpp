#include "wamark/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wamark {

namespace {

void require_same_geometry(const Image& a, const Image& b) {
  if (a.size != b.size) {
    throw DataError("dimension unsupported: image sizes differ, " + std::to_string(a.size) +
                    " vs " + std::to_string(b.size));
  }
}

void require_comparable_bits(const std::vector<std::uint8_t>& sent,
                             const std::vector<std::uint8_t>& received) {
  if (sent.empty()) throw DataError("empty input: bit vectors must be non-empty");
  if (sent.size() != received.size()) {
    throw DataError("length mismatch: " + std::to_string(sent.size()) + " vs " +
                    std::to_string(received.size()) + " bits");
  }
}

}  // namespace

double mse(const Image& a, const Image& b) {
  require_same_geometry(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(a.pixels.size());
}

double psnr_db(double mse_value) {
  if (mse_value < 0.0 || !std::isfinite(mse_value)) {
    throw DataError("non-finite value: mse must be finite and non-negative");
  }
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

double psnr_db(const Image& a, const Image& b) {
  return psnr_db(mse(a, b));
}

double ber_percent(const std::vector<std::uint8_t>& sent,
                   const std::vector<std::uint8_t>& received) {
  require_comparable_bits(sent, received);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < sent.size(); ++i) {
    if ((sent[i] != 0) != (received[i] != 0)) ++wrong;
  }
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(sent.size());
}

double normalized_correlation(const std::vector<std::uint8_t>& sent,
                              const std::vector<std::uint8_t>& received) {
  require_comparable_bits(sent, received);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < sent.size(); ++i) {
    if ((sent[i] != 0) != (received[i] != 0)) ++wrong;
  }
  const double L = static_cast<double>(sent.size());
  return (L - 2.0 * static_cast<double>(wrong)) / L;
}

std::array<std::uint64_t, 256> histogram(const Image& image) {
  std::array<std::uint64_t, 256> h{};
  for (std::uint8_t p : image.pixels) ++h[p];
  return h;
}

MetricsReport compare(const Image& original, const Image& processed,
                      const std::vector<std::uint8_t>& sent_bits,
                      const std::vector<std::uint8_t>& received_bits) {
  MetricsReport r;
  r.mse = mse(original, processed);
  r.psnr_db = psnr_db(r.mse);
  r.ber_percent = ber_percent(sent_bits, received_bits);
  r.normalized_correlation = normalized_correlation(sent_bits, received_bits);
  r.histogram = histogram(processed);
  return r;
}

}  // namespace wamark
