#pragma once

#include <iosfwd>
#include <string>

#include "wamark/image.hpp"

namespace wamark {

// Binary PGM (P5), maxval 255 only. The reader accepts '#' comments in the
// header; the writer emits a canonical header with no comments, so
// write(read(f)) is byte-stable for canonical files.
Image read_pgm(std::istream& in);
Image read_pgm(const std::string& path);
void write_pgm(const Image& image, std::ostream& out);
void write_pgm(const Image& image, const std::string& path);

}  // namespace wamark
