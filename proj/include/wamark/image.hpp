#pragma once

#include <cstdint>
#include <vector>

#include "wamark/errors.hpp"

namespace wamark {

// Accepted geometry: square, power-of-two side, at least 32.
bool valid_image_size(int size);
void require_valid_size(int size);

// 8-bit grayscale image, row-major.
struct Image {
  int size = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  explicit Image(int n);

  std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * size + col]; }
  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * size + col]; }
};

// Real-valued pixel field of the same geometry; the pre-quantization domain.
struct RealField {
  int size = 0;
  std::vector<double> values;

  RealField() = default;
  explicit RealField(int n);

  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * size + col]; }
  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * size + col]; }
};

// Round half away from zero, clamp to [0,255]. Non-finite input is an error.
std::uint8_t quantize_sample(double v);
Image quantize(const RealField& field);
RealField to_field(const Image& image);

}  // namespace wamark
