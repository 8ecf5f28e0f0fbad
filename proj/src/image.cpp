#include "wamark/image.hpp"

#include <cmath>
#include <string>

namespace wamark {

bool valid_image_size(int size) {
  return size >= 32 && (size & (size - 1)) == 0;
}

void require_valid_size(int size) {
  if (!valid_image_size(size)) {
    throw DataError("dimension unsupported: side must be a power of two >= 32, got " +
                    std::to_string(size));
  }
}

Image::Image(int n) : size(n) {
  require_valid_size(n);
  pixels.assign(static_cast<std::size_t>(n) * n, 0);
}

RealField::RealField(int n) : size(n) {
  require_valid_size(n);
  values.assign(static_cast<std::size_t>(n) * n, 0.0);
}

std::uint8_t quantize_sample(double v) {
  if (!std::isfinite(v)) throw DataError("non-finite value in pixel field");
  const double r = std::round(v);  // rounds half away from zero
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

Image quantize(const RealField& field) {
  require_valid_size(field.size);
  Image out(field.size);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    out.pixels[i] = quantize_sample(field.values[i]);
  }
  return out;
}

RealField to_field(const Image& image) {
  require_valid_size(image.size);
  RealField out(image.size);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    out.values[i] = static_cast<double>(image.pixels[i]);
  }
  return out;
}

}  // namespace wamark
