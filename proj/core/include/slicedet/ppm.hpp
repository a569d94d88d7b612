// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_PPM_HPP_
#define SLICEDET_PPM_HPP_

#include <iosfwd>
#include <string>

#include "slicedet/image.hpp"

namespace slicedet {

// Binary PPM (P6, maxval 255). Reads tolerate '#' comments between header
// tokens; parse errors report the byte offset. write_ppm/read_ppm roundtrip
// every image losslessly.
RasterImage read_ppm(std::istream& in);
RasterImage load_ppm(const std::string& path);
void write_ppm(const RasterImage& img, std::ostream& out);
void save_ppm(const RasterImage& img, const std::string& path);

}  // namespace slicedet

#endif  // SLICEDET_PPM_HPP_
