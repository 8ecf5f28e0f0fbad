#include "wamark/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace wamark {

namespace {

// Next header token, skipping whitespace and '#' comments (to end of line).
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw DataError("malformed header: unexpected end of file");
  return tok;
}

int parse_header_int(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  int value = 0;
  for (char ch : tok) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw DataError(std::string("malformed header: bad ") + what + " '" + tok + "'");
    }
    value = value * 10 + (ch - '0');
    if (value > 1 << 20) throw DataError(std::string("malformed header: ") + what + " too large");
  }
  return value;
}

}  // namespace

Image read_pgm(std::istream& in) {
  // Magic must be exactly "P5"; no comment may precede it.
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (!in || m0 != 'P' || m1 != '5') throw DataError("malformed header: not a binary PGM (P5)");

  const int width = parse_header_int(in, "width");
  const int height = parse_header_int(in, "height");
  const int maxval = parse_header_int(in, "maxval");
  if (maxval != 255) {
    throw DataError("malformed header: maxval must be 255, got " + std::to_string(maxval));
  }
  if (width != height) {
    throw DataError("dimension unsupported: image must be square, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  require_valid_size(width);
  // Exactly one whitespace byte separates the header from the raster.

  Image image(width);
  in.read(reinterpret_cast<char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size())) {
    throw DataError("truncated payload: expected " + std::to_string(image.pixels.size()) +
                    " raster bytes");
  }
  return image;
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for reading: " + path);
  return read_pgm(in);
}

void write_pgm(const Image& image, std::ostream& out) {
  require_valid_size(image.size);
  out << "P5\n" << image.size << " " << image.size << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw DataError("write failed while emitting PGM");
}

void write_pgm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  write_pgm(image, out);
  out.flush();
  if (!out) throw DataError("write failed while emitting PGM: " + path);
}

}  // namespace wamark
