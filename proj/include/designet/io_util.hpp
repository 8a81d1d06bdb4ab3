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
//
// Little-endian binary file helpers shared by the QCSM/QCIM/QCNN formats.

#ifndef DESIGNET_IO_UTIL_HPP
#define DESIGNET_IO_UTIL_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace designet {

/// Raised on malformed or truncated data files. Messages carry the byte
/// offset where parsing failed.
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need swaps");

class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string &path)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  }

  void bytes(const void *data, size_t count) {
    out_.write(static_cast<const char *>(data),
               static_cast<std::streamsize>(count));
  }
  void u8(uint8_t v) { bytes(&v, 1); }
  void u16(uint16_t v) { bytes(&v, 2); }
  void u32(uint32_t v) { bytes(&v, 4); }
  void u64(uint64_t v) { bytes(&v, 8); }
  void f32(float v) { bytes(&v, 4); }
  void f64(double v) { bytes(&v, 8); }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed: " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::string &path)
      : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot open for reading: " + path);
  }

  void bytes(void *data, size_t count) {
    in_.read(static_cast<char *>(data), static_cast<std::streamsize>(count));
    if (static_cast<size_t>(in_.gcount()) != count)
      throw format_error(path_ + ": truncated at byte offset " +
                         std::to_string(offset_ + in_.gcount()));
    offset_ += count;
  }
  uint8_t u8() { uint8_t v; bytes(&v, 1); return v; }
  uint16_t u16() { uint16_t v; bytes(&v, 2); return v; }
  uint32_t u32() { uint32_t v; bytes(&v, 4); return v; }
  uint64_t u64() { uint64_t v; bytes(&v, 8); return v; }
  float f32() { float v; bytes(&v, 4); return v; }
  double f64() { double v; bytes(&v, 8); return v; }

  /// Checks a 4-byte magic tag at the current position.
  void expect_magic(const char magic[4]) {
    char buf[4];
    bytes(buf, 4);
    if (std::memcmp(buf, magic, 4) != 0)
      throw format_error(path_ + ": bad magic at byte offset 0 (expected '" +
                         std::string(magic, 4) + "')");
  }

  uint64_t offset() const { return offset_; }

  bool at_eof() {
    in_.peek();
    return in_.eof();
  }

 private:
  std::string path_;
  std::ifstream in_;
  uint64_t offset_ = 0;
};

/// FNV-1a 64-bit digest, used for manifest file fingerprints.
inline uint64_t fnv1a64(const void *data, size_t count,
                        uint64_t state = 0xcbf29ce484222325ull) {
  const auto *p = static_cast<const uint8_t *>(data);
  for (size_t i = 0; i < count; ++i) {
    state ^= p[i];
    state *= 0x100000001b3ull;
  }
  return state;
}

inline uint64_t fnv1a64_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for digest: " + path);
  uint64_t state = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    state = fnv1a64(buf, static_cast<size_t>(in.gcount()), state);
  }
  return state;
}

}  // namespace designet

#endif  // DESIGNET_IO_UTIL_HPP
