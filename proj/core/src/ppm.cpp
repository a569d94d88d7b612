// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/ppm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace slicedet {

namespace {

[[noreturn]] void fail(const std::istream& in, const std::string& what) {
  const auto pos = in.rdbuf() ? static_cast<long long>(
                                    const_cast<std::istream&>(in).tellg())
                              : -1;
  throw std::runtime_error("ppm parse error at byte offset " +
                           std::to_string(pos) + ": " + what);
}

// Skips whitespace and '#' comment lines between header tokens.
void skip_separators(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      while (c != EOF && c != '\n') {
        in.get();
        c = in.peek();
      }
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* field) {
  skip_separators(in);
  long long value = 0;
  bool any = false;
  int c = in.peek();
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (in.get() - '0');
    any = true;
    if (value > std::numeric_limits<int>::max()) {
      fail(in, std::string(field) + " overflows");
    }
    c = in.peek();
  }
  if (!any) fail(in, std::string("expected integer for ") + field);
  return static_cast<int>(value);
}

}  // namespace

RasterImage read_ppm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '6') {
    fail(in, "missing P6 signature");
  }
  const int width = read_header_int(in, "width");
  const int height = read_header_int(in, "height");
  const int maxval = read_header_int(in, "maxval");
  if (width <= 0 || height <= 0) fail(in, "non-positive dimensions");
  if (maxval != 255) {
    fail(in, "unsupported maxval " + std::to_string(maxval) +
                 ", only 255 is handled");
  }
  // Exactly one whitespace byte separates the header from the pixel data.
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) fail(in, "missing header terminator");

  RasterImage img(width, height);
  const std::streamsize expected =
      static_cast<std::streamsize>(img.data().size());
  if (!in.read(reinterpret_cast<char*>(img.data().data()), expected)) {
    fail(in, "pixel data truncated, expected " + std::to_string(expected) +
                 " bytes");
  }
  return img;
}

RasterImage load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_ppm(in);
}

void write_ppm(const RasterImage& img, std::ostream& out) {
  out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.data().size()));
  if (!out) throw std::runtime_error("ppm write failed");
}

void save_ppm(const RasterImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_ppm(img, out);
}

}  // namespace slicedet
