#include <limits>
#include <sstream>

#include "doctest.h"
#include "wamark/image.hpp"
#include "wamark/pgm.hpp"

using namespace wamark;

TEST_CASE("geometry gate accepts exactly power-of-two sides >= 32") {
  for (int n : {32, 64, 128, 256, 512, 1024}) CHECK(valid_image_size(n));
  for (int n : {0, 1, 16, 31, 33, 48, 96, 100, 511, -64}) CHECK_FALSE(valid_image_size(n));
  CHECK_THROWS_AS(Image(48), DataError);
  CHECK_THROWS_AS(RealField(16), DataError);
}

TEST_CASE("quantize rounds half away from zero and clamps") {
  CHECK(quantize_sample(0.0) == 0);
  CHECK(quantize_sample(0.49999) == 0);
  CHECK(quantize_sample(0.5) == 1);
  CHECK(quantize_sample(1.5) == 2);
  CHECK(quantize_sample(2.5) == 3);
  CHECK(quantize_sample(127.5) == 128);
  CHECK(quantize_sample(254.4999) == 254);
  CHECK(quantize_sample(254.5) == 255);
  CHECK(quantize_sample(300.0) == 255);
  CHECK(quantize_sample(1e9) == 255);
  CHECK(quantize_sample(-0.4999) == 0);
  CHECK(quantize_sample(-0.5) == 0);
  CHECK(quantize_sample(-300.0) == 0);
}

TEST_CASE("quantize rejects non-finite samples") {
  CHECK_THROWS_AS(quantize_sample(std::numeric_limits<double>::quiet_NaN()), DataError);
  CHECK_THROWS_AS(quantize_sample(std::numeric_limits<double>::infinity()), DataError);
  RealField f(32);
  f.values[5] = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(quantize(f), DataError);
}

TEST_CASE("field round trip preserves pixels") {
  Image img(32);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = static_cast<std::uint8_t>((i * 7) & 0xFF);
  }
  CHECK(quantize(to_field(img)).pixels == img.pixels);
}

TEST_CASE("pgm round trip is byte exact") {
  Image img(64);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = static_cast<std::uint8_t>((i * 31 + 5) & 0xFF);
  }
  std::ostringstream out;
  write_pgm(img, out);
  const std::string payload = out.str();
  std::istringstream in(payload);
  const Image back = read_pgm(in);
  CHECK(back.size == 64);
  CHECK(back.pixels == img.pixels);

  std::ostringstream out2;
  write_pgm(back, out2);
  CHECK(out2.str() == payload);
}

TEST_CASE("pgm reader accepts header comments and flexible whitespace") {
  std::string header = "P5\n# a comment\n 32 # trailing\n\t32\n255\n";
  std::string raster(32 * 32, '\x7F');
  std::istringstream in(header + raster);
  const Image img = read_pgm(in);
  CHECK(img.size == 32);
  CHECK(img.pixels[0] == 0x7F);
}

TEST_CASE("pgm reader rejects bad input") {
  auto reject = [](const std::string& payload) {
    std::istringstream in(payload);
    CHECK_THROWS_AS(read_pgm(in), DataError);
  };
  reject("");                                             // empty
  reject("P2\n32 32\n255\n");                             // ascii variant
  reject("P5\n32 32\n65535\n" + std::string(2048, 'x'));  // wide samples
  reject("P5\n32 16\n255\n" + std::string(512, 'x'));     // not square
  reject("P5\n48 48\n255\n" + std::string(2304, 'x'));    // not a power of two
  reject("P5\n16 16\n255\n" + std::string(256, 'x'));     // too small
  reject("P5\n32 32\n255\n" + std::string(100, 'x'));     // truncated raster
  reject("P5\n32 -32\n255\n" + std::string(1024, 'x'));   // negative
  reject("P5\n32 32\nabc\n" + std::string(1024, 'x'));    // non-numeric
}

TEST_CASE("pgm reader reports missing file") {
  CHECK_THROWS_AS(read_pgm("/nonexistent/path/x.pgm"), DataError);
}
