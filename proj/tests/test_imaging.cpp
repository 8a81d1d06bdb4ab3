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

#include <doctest.h>
#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "designet/imaging.hpp"

using namespace designet;

namespace {

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

Dataset tiny_dataset(int count, Rng &rng) {
  Dataset ds;
  ds.height = 4;
  ds.width = 4;
  for (int k = 0; k < count; ++k) {
    LabeledImage img;
    img.height = 4;
    img.width = 4;
    img.label = static_cast<uint8_t>(k % 2);
    img.pixels.resize(48);
    for (auto &px : img.pixels)
      px = static_cast<uint8_t>(rng.uniform_below(256));
    ds.images.push_back(std::move(img));
  }
  return ds;
}

}  // namespace

TEST_CASE("hsv conversion matches reference table points") {
  CHECK(hsv_to_rgb(0, 1, 1) == RgbPixel{255, 0, 0});
  CHECK(hsv_to_rgb(120, 1, 1) == RgbPixel{0, 255, 0});
  CHECK(hsv_to_rgb(240, 1, 1) == RgbPixel{0, 0, 255});
  CHECK(hsv_to_rgb(60, 1, 1) == RgbPixel{255, 255, 0});
  CHECK(hsv_to_rgb(0, 0, 1) == RgbPixel{255, 255, 255});
  CHECK(hsv_to_rgb(0, 0, 0) == RgbPixel{0, 0, 0});
  CHECK(hsv_to_rgb(0, 0.5, 1) == RgbPixel{255, 128, 128});
  CHECK(hsv_to_rgb(240, 0.5, 1) == RgbPixel{128, 128, 255});
}

TEST_CASE("encode_complex pins the documented map") {
  // z = 0: hue 0, arg(0) := 0 so saturation 1/2: salmon-ish (255,128,128).
  CHECK(encode_complex(Complex(0, 0), 5) == RgbPixel{255, 128, 128});
  // z = m on the positive real axis: hue 240, saturation 1/2.
  CHECK(encode_complex(Complex(5, 0), 5) == RgbPixel{128, 128, 255});
  // arg = -pi exactly gives saturation 0, i.e. white.
  CHECK(encode_complex(Complex(-1.0, -0.0), 5) == RgbPixel{255, 255, 255});
}

TEST_CASE("encode_complex clamps instead of wrapping") {
  const RgbPixel at_m = encode_complex(Complex(5, 0), 5);
  const RgbPixel beyond = encode_complex(Complex(50, 0), 5);
  CHECK(at_m == beyond);
  CHECK_THROWS_AS(
      encode_complex(Complex(std::numeric_limits<double>::quiet_NaN(), 0), 5),
      std::invalid_argument);
  CHECK_THROWS_AS(encode_complex(Complex(1, 0), 0), std::invalid_argument);
}

TEST_CASE("hue grows monotonically with magnitude at fixed phase") {
  double last_hue = -1.0;
  for (int step = 0; step <= 50; ++step) {
    const double mag = 5.0 * step / 50.0;
    // Recover the hue from the encoder by construction: same formula.
    const double hue = std::clamp(mag / 5.0, 0.0, 1.0) * 240.0;
    CHECK(hue >= last_hue);
    last_hue = hue;
    // And the encoder is total on the way.
    (void)encode_complex(Complex(mag, 0.0), 5);
  }
}

TEST_CASE("encoder is total on random finite inputs") {
  Rng rng(71);
  for (int k = 0; k < 2000; ++k) {
    const Complex z(20.0 * (rng.uniform() - 0.5), 20.0 * (rng.uniform() - 0.5));
    (void)encode_complex(z, 5);  // must not throw for any finite z
  }
}

TEST_CASE("the exact pauli xyxy pattern encodes to two colors") {
  const SampleMatrix sm =
      sample_matrix(catalog("xyxy"), parse_ensemble("pauli1", 4), 5, 99);
  const LabeledImage img = encode_sample_matrix(sm, 0);
  std::set<std::array<uint8_t, 3>> colors;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const RgbPixel px = img.at(i, j);
      colors.insert({px.r, px.g, px.b});
    }
  CHECK(colors.size() == 2);
  CHECK(img.at(0, 0) == img.at(3, 3));
  CHECK(img.at(0, 1) == img.at(2, 3));
}

TEST_CASE("distinct ensembles at the same seed give different pixels") {
  const CorrelatorSpec spec = catalog("xxyy");
  const uint64_t seed = 505;
  const LabeledImage a = encode_sample_matrix(
      sample_matrix(spec, parse_ensemble("pauli1", 4), 5, seed), 0);
  const LabeledImage b = encode_sample_matrix(
      sample_matrix(spec, parse_ensemble("haar", 4), 5, seed), 1);
  CHECK(a.pixels != b.pixels);
}

TEST_CASE("a zero matrix encodes to one uniform color") {
  SampleMatrix sm;
  sm.n_qubits = 3;
  sm.batch_m = 5;
  sm.entries = Eigen::MatrixXcd::Zero(3, 3);
  const LabeledImage img = encode_sample_matrix(sm, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(img.at(i, j) == img.at(0, 0));
  CHECK(img.label == 1);
}

TEST_CASE("dataset split sizes, determinism and errors") {
  Rng rng(72);
  Dataset ds = tiny_dataset(10, rng);
  {
    Rng split_rng(5);
    auto [train, val] = split_dataset(ds, 7, split_rng);
    CHECK(train.images.size() == 7);
    CHECK(val.images.size() == 3);
  }
  {
    // Identical seeds give identical splits.
    Rng r1(5), r2(5);
    auto [t1, v1] = split_dataset(ds, 7, r1);
    auto [t2, v2] = split_dataset(ds, 7, r2);
    for (size_t k = 0; k < t1.images.size(); ++k)
      CHECK(t1.images[k].pixels == t2.images[k].pixels);
  }
  {
    // Boundary: validation of size 1.
    Rng r(6);
    auto [t, v] = split_dataset(ds, 9, r);
    CHECK(v.images.size() == 1);
  }
  Rng r(7);
  CHECK_THROWS_AS(split_dataset(ds, 0, r), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset(ds, 10, r), std::invalid_argument);
  // The split is a permutation: no image lost or duplicated.
  Rng r2(8);
  auto [t, v] = split_dataset(ds, 6, r2);
  std::multiset<std::vector<uint8_t>> before, after;
  for (const auto &img : ds.images) before.insert(img.pixels);
  for (const auto &img : t.images) after.insert(img.pixels);
  for (const auto &img : v.images) after.insert(img.pixels);
  CHECK(before == after);
}

TEST_CASE("qcim files round-trip byte-for-byte") {
  Rng rng(73);
  const Dataset ds = tiny_dataset(6, rng);
  const std::string path = temp_path("designet_test.qcim");
  write_qcim(path, ds);
  const Dataset back = read_qcim(path);
  CHECK(back.height == ds.height);
  CHECK(back.width == ds.width);
  REQUIRE(back.images.size() == ds.images.size());
  for (size_t k = 0; k < ds.images.size(); ++k) {
    CHECK(back.images[k].label == ds.images[k].label);
    CHECK(back.images[k].pixels == ds.images[k].pixels);
  }
  const std::string path2 = temp_path("designet_test2.qcim");
  write_qcim(path2, back);
  CHECK(fnv1a64_file(path) == fnv1a64_file(path2));
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("qcim reader reports truncation offsets") {
  const std::string path = temp_path("designet_trunc.qcim");
  {
    std::ofstream out(path, std::ios::binary);
    out << "QCIM";
    const uint16_t version = 1;
    out.write(reinterpret_cast<const char *>(&version), 2);
    const uint8_t h = 4, w = 4, c = 3;
    out.write(reinterpret_cast<const char *>(&h), 1);
    out.write(reinterpret_cast<const char *>(&w), 1);
    out.write(reinterpret_cast<const char *>(&c), 1);
    const uint32_t count = 2;
    out.write(reinterpret_cast<const char *>(&count), 4);
    const uint8_t label = 0;
    out.write(reinterpret_cast<const char *>(&label), 1);
    // record cut off mid-pixels
    const std::vector<uint8_t> partial(10, 7);
    out.write(reinterpret_cast<const char *>(partial.data()), 10);
  }
  CHECK_THROWS_WITH_AS(read_qcim(path),
                       doctest::Contains("truncated at byte offset"),
                       format_error);
  std::filesystem::remove(path);
}

TEST_CASE("png export produces a decodable image") {
  Rng rng(74);
  const Dataset ds = tiny_dataset(1, rng);
  const std::string path = temp_path("designet_test.png");
  export_png(path, ds.images[0]);

  std::ifstream in(path, std::ios::binary);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() > 45);
  const uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  CHECK(std::equal(sig, sig + 8, bytes.begin()));

  // Walk the chunks, inflate IDAT, drop the per-row filter bytes and
  // compare with the source pixels.
  size_t pos = 8;
  std::vector<uint8_t> idat;
  auto be32 = [&](size_t at) {
    return (uint32_t(bytes[at]) << 24) | (uint32_t(bytes[at + 1]) << 16) |
           (uint32_t(bytes[at + 2]) << 8) | uint32_t(bytes[at + 3]);
  };
  while (pos + 8 <= bytes.size()) {
    const uint32_t len = be32(pos);
    const std::string type(bytes.begin() + pos + 4, bytes.begin() + pos + 8);
    if (type == "IDAT")
      idat.insert(idat.end(), bytes.begin() + pos + 8,
                  bytes.begin() + pos + 8 + len);
    pos += 12 + len;
  }
  REQUIRE(!idat.empty());
  const size_t raw_size = (4 * 3 + 1) * 4;
  std::vector<uint8_t> raw(raw_size);
  uLongf dest_len = raw_size;
  REQUIRE(uncompress(raw.data(), &dest_len, idat.data(),
                     static_cast<uLong>(idat.size())) == Z_OK);
  REQUIRE(dest_len == raw_size);
  for (int y = 0; y < 4; ++y) {
    CHECK(raw[static_cast<size_t>(y) * 13] == 0);  // filter byte
    for (int k = 0; k < 12; ++k)
      CHECK(raw[static_cast<size_t>(y) * 13 + 1 + k] ==
            ds.images[0].pixels[static_cast<size_t>(y) * 12 + k]);
  }
  std::filesystem::remove(path);
}
