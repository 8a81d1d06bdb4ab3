// Copyright 2026 The designet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DESIGNET_IMAGING_HPP
#define DESIGNET_IMAGING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "designet/correlators.hpp"
#include "designet/rng.hpp"

namespace designet {

struct RgbPixel {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const RgbPixel &) const = default;
};

/// Standard HSV -> RGB with h in degrees [0, 360], s and v in [0, 1].
/// Channels round to nearest.
RgbPixel hsv_to_rgb(double h_deg, double s, double v);

/// Color encoding of one correlator sample:
///   hue        = clamp(|z| / m, 0, 1) * 240 degrees
///   saturation = (arg(z) + pi) / (2 pi), with arg(0) := 0
///   value      = 1
/// The hue stops at 240 (blue) so |z|=0 and |z|=m stay distinct colors, and
/// the divisor m is the proven bound on sample-matrix entries, so legal
/// inputs never clamp.
RgbPixel encode_complex(Complex z, int m);

struct LabeledImage {
  int height = 0;
  int width = 0;
  uint8_t label = 0;
  std::vector<uint8_t> pixels;  // height*width*3, row-major RGB

  RgbPixel at(int row, int col) const {
    const size_t off = (static_cast<size_t>(row) * width + col) * 3;
    return {pixels[off], pixels[off + 1], pixels[off + 2]};
  }
};

/// Pixel (row i, col j) encodes entries(i, j) with divisor batch_m.
LabeledImage encode_sample_matrix(const SampleMatrix &s, uint8_t label);
LabeledImage encode_record(int n_qubits, int batch_m, const SampleRecord &rec);

struct DatasetMeta {
  std::string correlator;
  std::string ensemble_a;
  std::string ensemble_b;
  int n_qubits = 0;
  int batch_m = 0;
  uint64_t seed = 0;
};

struct Dataset {
  int height = 0;
  int width = 0;
  std::vector<LabeledImage> images;
  DatasetMeta meta;
};

/// Uniform random split without replacement; deterministic given the rng
/// seed. Metadata is copied to both halves.
std::pair<Dataset, Dataset> split_dataset(const Dataset &d, int train_count,
                                          Rng &rng);

// ---- QCIM image dataset files ----
// Little-endian. Header: magic "QCIM", version u16=1, height u8, width u8,
// channels u8=3, count u32. Body: count records of (label u8,
// height*width*3 bytes row-major RGB).

void write_qcim(const std::string &path, const Dataset &d);
Dataset read_qcim(const std::string &path);

/// Convenience PNG export (8-bit RGB, zlib-compressed). The QCIM file is
/// the format of record; PNGs are for eyeballing.
void export_png(const std::string &path, const LabeledImage &img);

}  // namespace designet

#endif  // DESIGNET_IMAGING_HPP
