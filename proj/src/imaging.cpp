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

#include "designet/imaging.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace designet {

RgbPixel hsv_to_rgb(double h_deg, double s, double v) {
  const double c = v * s;
  double hp = std::fmod(h_deg / 60.0, 6.0);
  if (hp < 0) hp += 6.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1)      { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else             { r = c; b = x; }
  const double m = v - c;
  auto ch = [](double val) {
    return static_cast<uint8_t>(
        std::clamp<long>(std::lround(val * 255.0), 0, 255));
  };
  return {ch(r + m), ch(g + m), ch(b + m)};
}

RgbPixel encode_complex(Complex z, int m) {
  if (m < 1) throw std::invalid_argument("batch number m must be >= 1");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("cannot encode a non-finite sample value");
  const double hue =
      std::clamp(std::abs(z) / static_cast<double>(m), 0.0, 1.0) * 240.0;
  const double arg = (z == Complex(0.0, 0.0)) ? 0.0 : std::arg(z);
  const double sat = (arg + M_PI) / (2.0 * M_PI);
  return hsv_to_rgb(hue, sat, 1.0);
}

LabeledImage encode_sample_matrix(const SampleMatrix &s, uint8_t label) {
  const int n = s.n_qubits;
  LabeledImage img;
  img.height = n;
  img.width = n;
  img.label = label;
  img.pixels.resize(static_cast<size_t>(n) * n * 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const RgbPixel px = encode_complex(s.entries(i, j), s.batch_m);
      const size_t off = (static_cast<size_t>(i) * n + j) * 3;
      img.pixels[off] = px.r;
      img.pixels[off + 1] = px.g;
      img.pixels[off + 2] = px.b;
    }
  }
  return img;
}

LabeledImage encode_record(int n_qubits, int batch_m,
                           const SampleRecord &rec) {
  SampleMatrix s;
  s.n_qubits = n_qubits;
  s.batch_m = batch_m;
  s.entries = rec.entries;
  return encode_sample_matrix(s, rec.label);
}

std::pair<Dataset, Dataset> split_dataset(const Dataset &d, int train_count,
                                          Rng &rng) {
  const int total = static_cast<int>(d.images.size());
  if (train_count <= 0 || train_count >= total)
    throw std::invalid_argument("train_count must be in (0, " +
                                std::to_string(total) + ")");
  std::vector<int> order(static_cast<size_t>(total));
  for (int k = 0; k < total; ++k) order[static_cast<size_t>(k)] = k;
  // Fisher-Yates with our own stream; std::shuffle's algorithm is
  // implementation-defined.
  for (int k = total - 1; k > 0; --k)
    std::swap(order[static_cast<size_t>(k)],
              order[rng.uniform_below(static_cast<uint64_t>(k) + 1)]);
  Dataset train{d.height, d.width, {}, d.meta};
  Dataset val{d.height, d.width, {}, d.meta};
  train.images.reserve(static_cast<size_t>(train_count));
  val.images.reserve(static_cast<size_t>(total - train_count));
  for (int k = 0; k < total; ++k) {
    const LabeledImage &img = d.images[static_cast<size_t>(order[k])];
    (k < train_count ? train : val).images.push_back(img);
  }
  return {std::move(train), std::move(val)};
}

void write_qcim(const std::string &path, const Dataset &d) {
  BinaryWriter w(path);
  w.bytes("QCIM", 4);
  w.u16(1);
  w.u8(static_cast<uint8_t>(d.height));
  w.u8(static_cast<uint8_t>(d.width));
  w.u8(3);
  w.u32(static_cast<uint32_t>(d.images.size()));
  const size_t expected = static_cast<size_t>(d.height) * d.width * 3;
  for (const LabeledImage &img : d.images) {
    if (img.pixels.size() != expected)
      throw std::invalid_argument("image pixel count does not match dataset");
    w.u8(img.label);
    w.bytes(img.pixels.data(), img.pixels.size());
  }
  w.close();
}

Dataset read_qcim(const std::string &path) {
  BinaryReader r(path);
  r.expect_magic("QCIM");
  const uint16_t version = r.u16();
  if (version != 1)
    throw format_error(path + ": unsupported QCIM version " +
                       std::to_string(version));
  Dataset d;
  d.height = r.u8();
  d.width = r.u8();
  const uint8_t channels = r.u8();
  if (channels != 3)
    throw format_error(path + ": expected 3 channels, got " +
                       std::to_string(channels));
  if (d.height < 1 || d.width < 1)
    throw format_error(path + ": bad image dimensions");
  const uint32_t count = r.u32();
  const size_t px = static_cast<size_t>(d.height) * d.width * 3;
  d.images.resize(count);
  for (uint32_t k = 0; k < count; ++k) {
    LabeledImage &img = d.images[k];
    img.height = d.height;
    img.width = d.width;
    img.label = r.u8();
    img.pixels.resize(px);
    r.bytes(img.pixels.data(), px);
  }
  return d;
}

namespace {

void png_chunk(std::ofstream &out, const char type[4],
               const std::vector<uint8_t> &payload) {
  auto be32 = [](uint32_t v) {
    return std::array<uint8_t, 4>{
        static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
        static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
  };
  const auto len = be32(static_cast<uint32_t>(payload.size()));
  out.write(reinterpret_cast<const char *>(len.data()), 4);
  out.write(type, 4);
  if (!payload.empty())
    out.write(reinterpret_cast<const char *>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
  uLong crc = crc32(0L, reinterpret_cast<const Bytef *>(type), 4);
  if (!payload.empty())
    crc = crc32(crc, payload.data(), static_cast<uInt>(payload.size()));
  const auto crc_bytes = be32(static_cast<uint32_t>(crc));
  out.write(reinterpret_cast<const char *>(crc_bytes.data()), 4);
}

}  // namespace

void export_png(const std::string &path, const LabeledImage &img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  static const uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  out.write(reinterpret_cast<const char *>(sig), 8);

  std::vector<uint8_t> ihdr(13);
  auto put_be32 = [&](size_t off, uint32_t v) {
    ihdr[off] = static_cast<uint8_t>(v >> 24);
    ihdr[off + 1] = static_cast<uint8_t>(v >> 16);
    ihdr[off + 2] = static_cast<uint8_t>(v >> 8);
    ihdr[off + 3] = static_cast<uint8_t>(v);
  };
  put_be32(0, static_cast<uint32_t>(img.width));
  put_be32(4, static_cast<uint32_t>(img.height));
  ihdr[8] = 8;   // bit depth
  ihdr[9] = 2;   // color type: truecolor RGB
  ihdr[10] = 0;  // compression
  ihdr[11] = 0;  // filter method
  ihdr[12] = 0;  // interlace
  png_chunk(out, "IHDR", ihdr);

  // Scanlines with filter byte 0 (no per-row filtering).
  const size_t row_bytes = static_cast<size_t>(img.width) * 3;
  std::vector<uint8_t> raw((row_bytes + 1) * static_cast<size_t>(img.height));
  for (int y = 0; y < img.height; ++y) {
    uint8_t *row = raw.data() + static_cast<size_t>(y) * (row_bytes + 1);
    row[0] = 0;
    std::copy_n(img.pixels.data() + static_cast<size_t>(y) * row_bytes,
                row_bytes, row + 1);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<uint8_t> idat(bound);
  if (compress2(idat.data(), &bound, raw.data(),
                static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw std::runtime_error("zlib compression failed for " + path);
  idat.resize(bound);
  png_chunk(out, "IDAT", idat);
  png_chunk(out, "IEND", {});
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace designet
