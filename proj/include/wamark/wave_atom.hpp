#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wamark/image.hpp"

namespace wamark {

// Address of one oriented frequency band: scale j >= 1, band indices
// 0 <= m1, m2 < m_hi(j) with max(m1, m2) >= m_lo(j) (the scale-j corona).
struct BlockAddress {
  int scale = 0;
  int m1 = 0;
  int m2 = 0;

  friend auto operator<=>(const BlockAddress&, const BlockAddress&) = default;
};

// Coefficients of one band: a square grid of 2^scale x 2^scale reals,
// row-major with the first spatial index outer.
struct ScaleBand {
  int scale = 0;
  int m1 = 0;
  int m2 = 0;
  int grid_size = 0;
  std::vector<double> coefficients;

  BlockAddress address() const { return {scale, m1, m2}; }
};

// Full decomposition of one image. Bands are kept in canonical order
// (scale ascending, then m1, then m2); total coefficient count equals the
// pixel count, and the transform is orthonormal.
class CoefficientSet {
 public:
  CoefficientSet() = default;
  CoefficientSet(int image_size, std::vector<ScaleBand> bands);

  int image_size() const { return image_size_; }
  int num_scales() const;
  const std::vector<ScaleBand>& bands() const { return bands_; }
  ScaleBand& band(const BlockAddress& address);
  const ScaleBand& band(const BlockAddress& address) const;

 private:
  int image_size_ = 0;
  std::vector<ScaleBand> bands_;
};

// Number of scales in the decomposition of an image with the given side.
int transform_scales(int image_size);

// Canonical band roster for one scale, lexicographic in (m1, m2).
std::vector<BlockAddress> list_blocks(int image_size, int scale);
std::size_t block_capacity(int image_size, int scale);

CoefficientSet forward(const RealField& field);
CoefficientSet forward(const Image& image);
RealField inverse(const CoefficientSet& coeffs);

std::span<const double> get_block(const CoefficientSet& coeffs, const BlockAddress& address);
void set_block(CoefficientSet& coeffs, const BlockAddress& address, std::span<const double> values);

// Debug aid: one "scale,m1,m2,n1,n2,value" line per coefficient.
void dump_coefficients(const CoefficientSet& coeffs, std::ostream& out);

}  // namespace wamark
