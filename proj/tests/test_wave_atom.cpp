#include "wamark/wave_atom.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "wamark/keystream.hpp"

using namespace wamark;

namespace {

Image random_image(int size, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Image img(size);
  for (std::uint8_t& p : img.pixels) p = static_cast<std::uint8_t>(rng.next() & 0xFF);
  return img;
}

double total_energy(const CoefficientSet& coeffs) {
  double acc = 0.0;
  for (const ScaleBand& band : coeffs.bands()) {
    for (double v : band.coefficients) acc += v * v;
  }
  return acc;
}

double image_energy(const Image& img) {
  double acc = 0.0;
  for (std::uint8_t p : img.pixels) acc += static_cast<double>(p) * p;
  return acc;
}

// Band counts recomputed from the tiling law, independent of the library.
std::size_t expected_band_count(int scale) {
  const std::size_t m_hi = std::size_t{1} << scale;  // before the Nyquist cap
  const std::size_t m_lo = (scale == 1) ? 0 : std::size_t{1} << (scale - 2);
  return m_hi * m_hi - m_lo * m_lo;
}

}  // namespace

TEST_CASE("scale count follows the size") {
  CHECK(transform_scales(32) == 3);
  CHECK(transform_scales(64) == 3);
  CHECK(transform_scales(128) == 4);
  CHECK(transform_scales(256) == 4);
  CHECK(transform_scales(512) == 5);
  CHECK_THROWS_AS(transform_scales(48), DataError);
}

TEST_CASE("block capacity matches the tiling law") {
  // Uncapped scales: m_hi = 2^j, m_lo = 2^(j-2).
  CHECK(block_capacity(512, 1) == 4);
  CHECK(block_capacity(512, 2) == 15);
  CHECK(block_capacity(512, 3) == 60);
  CHECK(block_capacity(512, 4) == 240);
  CHECK(block_capacity(256, 4) == 240);
  for (int scale = 1; scale <= 4; ++scale) {
    CHECK(block_capacity(512, scale) == expected_band_count(scale));
    CHECK(block_capacity(256, scale) == expected_band_count(scale));
  }
  // Nyquist-capped top scales: m_hi = H / B < 2^j.
  CHECK(block_capacity(512, 5) == 16 * 16 - 8 * 8);  // 192
  CHECK(block_capacity(128, 4) == 8 * 8 - 4 * 4);    // 48
  CHECK_THROWS_AS(block_capacity(512, 0), DataError);
  CHECK_THROWS_AS(block_capacity(512, 6), DataError);
  CHECK_THROWS_AS(block_capacity(64, 4), DataError);
}

TEST_CASE("coefficient count equals pixel count") {
  for (int size : {32, 64, 128, 256, 512}) {
    std::size_t coeff_count = 0;
    for (int scale = 1; scale <= transform_scales(size); ++scale) {
      coeff_count += block_capacity(size, scale) * (std::size_t{1} << (2 * scale));
    }
    CHECK(coeff_count == static_cast<std::size_t>(size) * size);
  }
}

TEST_CASE("list_blocks is canonical and matches capacity") {
  for (int size : {64, 128, 512}) {
    for (int scale = 1; scale <= transform_scales(size); ++scale) {
      const std::vector<BlockAddress> blocks = list_blocks(size, scale);
      CHECK(blocks.size() == block_capacity(size, scale));
      CHECK(std::is_sorted(blocks.begin(), blocks.end()));
      const int m_lo = (scale == 1) ? 0 : 1 << (scale - 2);
      for (const BlockAddress& b : blocks) {
        CHECK(b.scale == scale);
        CHECK(std::max(b.m1, b.m2) >= m_lo);
        CHECK(b.m1 >= 0);
        CHECK(b.m2 >= 0);
      }
    }
  }
  CHECK_THROWS_AS(list_blocks(64, 4), DataError);
  CHECK_THROWS_AS(list_blocks(512, 0), DataError);
}

TEST_CASE("transform is orthonormal: Parseval and round trip") {
  for (int size : {32, 64, 128}) {
    const Image img = random_image(size, 1000 + size);
    const CoefficientSet coeffs = forward(img);
    const double ex = image_energy(img);
    CHECK(total_energy(coeffs) == doctest::Approx(ex).epsilon(1e-12));
    const RealField back = inverse(coeffs);
    double max_err = 0.0;
    for (std::size_t i = 0; i < back.values.size(); ++i) {
      max_err = std::max(max_err, std::abs(back.values[i] - img.pixels[i]));
    }
    CHECK(max_err < 1e-9);
  }
}

TEST_CASE("forward output is bitwise deterministic") {
  const Image img = random_image(128, 77);
  const CoefficientSet a = forward(img);
  const CoefficientSet b = forward(img);
  REQUIRE(a.bands().size() == b.bands().size());
  for (std::size_t i = 0; i < a.bands().size(); ++i) {
    const auto& ca = a.bands()[i].coefficients;
    const auto& cb = b.bands()[i].coefficients;
    REQUIRE(ca.size() == cb.size());
    CHECK(std::memcmp(ca.data(), cb.data(), ca.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("frozen oracle values for a deterministic 64x64 input") {
  Image img(64);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      img.at(r, c) = static_cast<std::uint8_t>((7 * r + 13 * c) % 251);
    }
  }
  const CoefficientSet coeffs = forward(img);
  CHECK(total_energy(coeffs) == doctest::Approx(85304044.0).epsilon(1e-12));
  CHECK(image_energy(img) == doctest::Approx(85304044.0).epsilon(1e-15));

  auto at = [&](int scale, int m1, int m2, int n1, int n2) {
    const ScaleBand& band = coeffs.band({scale, m1, m2});
    return band.coefficients[static_cast<std::size_t>(n1) * band.grid_size + n2];
  };
  CHECK(at(1, 0, 0, 0, 0) == doctest::Approx(3955.05449869757).epsilon(1e-9));
  CHECK(at(1, 0, 0, 1, 1) == doctest::Approx(4039.726631458029).epsilon(1e-9));
  CHECK(at(2, 1, 2, 0, 3) == doctest::Approx(-64.30342376083082).epsilon(1e-9));
  CHECK(at(3, 4, 1, 5, 2) == doctest::Approx(8.030293107544313).epsilon(1e-9));
  CHECK(at(3, 2, 7, 7, 7) == doctest::Approx(11.204736963893726).epsilon(1e-9));
  CHECK(at(3, 7, 7, 0, 4) == doctest::Approx(-5.7317758075145795).epsilon(1e-9));
}

TEST_CASE("constant image concentrates in the lowest band") {
  Image img(64);
  std::fill(img.pixels.begin(), img.pixels.end(), 128);
  const CoefficientSet coeffs = forward(img);
  const ScaleBand& dc = coeffs.band({1, 0, 0});
  CHECK(dc.coefficients[0] == doctest::Approx(4096.0).epsilon(1e-12));
  CHECK(dc.coefficients[2] == doctest::Approx(4096.0).epsilon(1e-12));  // (n1,n2)=(1,0)
  double dc_energy = 0.0;
  for (double v : dc.coefficients) dc_energy += v * v;
  const double tot = total_energy(coeffs);
  CHECK(dc_energy == doctest::Approx(tot).epsilon(1e-12));
  CHECK(tot == doctest::Approx(67108864.0).epsilon(1e-12));
}

TEST_CASE("pure sinusoids land in the nearest bands") {
  const int N = 64;
  auto band_share = [&](double f1, double f2, std::size_t nearest_count) {
    RealField x(N);
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        x.at(r, c) = 100.0 * std::cos(2.0 * std::numbers::pi * (f1 * r + f2 * c) / N + 0.3);
      }
    }
    const CoefficientSet coeffs = forward(x);
    struct Scored {
      double dist, energy;
    };
    std::vector<Scored> scored;
    double tot = 0.0;
    for (const ScaleBand& band : coeffs.bands()) {
      const double B = static_cast<double>(1 << (band.scale - 1));
      const double d = std::hypot(B * (band.m1 + 0.5) - f1, B * (band.m2 + 0.5) - f2);
      double e = 0.0;
      for (double v : band.coefficients) e += v * v;
      scored.push_back({d, e});
      tot += e;
    }
    std::sort(scored.begin(), scored.end(),
              [](const Scored& a, const Scored& b) { return a.dist < b.dist; });
    double acc = 0.0;
    for (std::size_t i = 0; i < nearest_count && i < scored.size(); ++i) acc += scored[i].energy;
    return acc / tot;
  };
  CHECK(band_share(14.0, 6.0, 1) > 0.99);   // core of band (3,3,1)
  CHECK(band_share(16.0, 6.0, 4) > 0.99);   // straddles an m1 boundary
  CHECK(band_share(25.0, 25.0, 4) > 0.99);  // deep corona
}

TEST_CASE("set_block round trips through the image domain") {
  const Image img = random_image(128, 4242);
  CoefficientSet coeffs = forward(img);
  const BlockAddress addr{4, 5, 6};
  std::vector<double> payload(256);
  SplitMix64 rng(9);
  for (double& v : payload) v = static_cast<double>(rng.next() & 0xFF) - 128.0;
  set_block(coeffs, addr, payload);
  const std::span<const double> readback = get_block(coeffs, addr);
  for (std::size_t i = 0; i < payload.size(); ++i) CHECK(readback[i] == payload[i]);

  // Orthobasis: any coefficient assignment is realizable, so analyzing the
  // synthesized field returns the same coefficients.
  const CoefficientSet again = forward(inverse(coeffs));
  const std::span<const double> recovered = get_block(again, addr);
  for (std::size_t i = 0; i < payload.size(); ++i) {
    CHECK(recovered[i] == doctest::Approx(payload[i]).epsilon(1e-9));
  }
}

TEST_CASE("block API rejects bad addresses and payloads") {
  const Image img = random_image(64, 5);
  CoefficientSet coeffs = forward(img);
  CHECK_THROWS_AS(get_block(coeffs, {3, 0, 0}), DataError);   // below the corona
  CHECK_THROWS_AS(get_block(coeffs, {3, 8, 8}), DataError);   // beyond m_hi
  CHECK_THROWS_AS(get_block(coeffs, {9, 0, 0}), DataError);   // no such scale
  std::vector<double> wrong(10, 0.0);
  CHECK_THROWS_AS(set_block(coeffs, {3, 4, 4}, wrong), DataError);
  std::vector<double> bad(64, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(set_block(coeffs, {3, 4, 4}, bad), DataError);
}

TEST_CASE("coefficient set validates its roster") {
  const Image img = random_image(64, 6);
  const CoefficientSet coeffs = forward(img);
  std::vector<ScaleBand> bands(coeffs.bands());
  std::swap(bands[0], bands[1]);
  CHECK_THROWS_AS(CoefficientSet(64, std::move(bands)), DataError);

  std::vector<ScaleBand> truncated(coeffs.bands());
  truncated.pop_back();
  CHECK_THROWS_AS(CoefficientSet(64, std::move(truncated)), DataError);

  std::vector<ScaleBand> resized(coeffs.bands());
  resized[0].coefficients.push_back(0.0);
  CHECK_THROWS_AS(CoefficientSet(64, std::move(resized)), DataError);
}

TEST_CASE("inverse rejects non-finite coefficients") {
  const Image img = random_image(64, 7);
  CoefficientSet broken = forward(img);
  // set_block screens payloads, so corrupt a band directly.
  broken.band({1, 1, 1}).coefficients[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(inverse(broken), DataError);
}

TEST_CASE("dump emits one line per coefficient") {
  const Image img = random_image(32, 8);
  const CoefficientSet coeffs = forward(img);
  std::ostringstream out;
  dump_coefficients(coeffs, out);
  const std::string text = out.str();
  const std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  CHECK(lines == 32 * 32 + 1);  // header + one per coefficient
  CHECK(text.rfind("scale,m1,m2,n1,n2,value\n", 0) == 0);
}
