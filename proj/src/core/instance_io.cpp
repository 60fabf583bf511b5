// Copyright 2026 The plab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/instance_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "core/error.hpp"

namespace plab {

namespace {

void put_le(std::vector<uint8_t>& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t get_le(const uint8_t* p, int bytes) {
  uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<uint8_t> encode_instance(const StoredInstance& inst) {
  const bool real = inst.kind == PayloadKind::kReal;
  const size_t rows = real ? inst.real.rows() : inst.bits.rows();
  const size_t cols = real ? inst.real.cols() : inst.bits.cols();
  require(rows <= UINT32_MAX && cols <= UINT32_MAX, "instance too large to encode");
  std::vector<uint8_t> out = {'P', 'L', 'A', 'B'};
  put_le(out, kInstanceFormatVersion, 2);
  put_le(out, static_cast<uint16_t>(inst.kind), 2);
  put_le(out, rows, 4);
  put_le(out, cols, 4);
  if (real) {
    for (double x : inst.real.data()) put_le(out, std::bit_cast<uint64_t>(x), 8);
  } else {
    const size_t total = rows * cols;
    std::vector<uint8_t> payload((total + 7) / 8, 0);
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        if (inst.bits.get(i, j)) {
          const size_t b = i * cols + j;
          payload[b / 8] |= static_cast<uint8_t>(1u << (b % 8));
        }
      }
    }
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

StoredInstance decode_instance(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "PLAB", 4) != 0) {
    throw FormatError("instance: bad magic or short header");
  }
  const auto version = get_le(bytes.data() + 4, 2);
  if (version != kInstanceFormatVersion) {
    throw FormatError("instance: unsupported version " + std::to_string(version));
  }
  const auto kind = get_le(bytes.data() + 6, 2);
  const size_t rows = get_le(bytes.data() + 8, 4);
  const size_t cols = get_le(bytes.data() + 12, 4);
  StoredInstance inst;
  const uint8_t* p = bytes.data() + 16;
  const size_t avail = bytes.size() - 16;
  if (kind == static_cast<uint16_t>(PayloadKind::kReal)) {
    inst.kind = PayloadKind::kReal;
    if (avail != rows * cols * 8) throw FormatError("instance: payload size mismatch");
    inst.real = RealMatrix(rows, cols);
    for (size_t i = 0; i < rows * cols; ++i) {
      inst.real.data()[i] = std::bit_cast<double>(get_le(p + 8 * i, 8));
    }
  } else if (kind == static_cast<uint16_t>(PayloadKind::kAdjacency) ||
             kind == static_cast<uint16_t>(PayloadKind::kBipartite)) {
    inst.kind = static_cast<PayloadKind>(kind);
    if (avail != (rows * cols + 7) / 8) throw FormatError("instance: payload size mismatch");
    inst.bits = BitMatrix(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        const size_t b = i * cols + j;
        if ((p[b / 8] >> (b % 8)) & 1u) inst.bits.set(i, j, true);
      }
    }
    if (inst.kind == PayloadKind::kAdjacency && !inst.bits.is_symmetric_adjacency()) {
      throw FormatError("instance: adjacency payload is not symmetric with zero diagonal");
    }
  } else {
    throw FormatError("instance: unknown kind tag " + std::to_string(kind));
  }
  return inst;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed for '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
  write_file(path, std::vector<uint8_t>(text.begin(), text.end()));
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(f), {});
}

std::string read_text_file(const std::string& path) {
  auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

void save_instance(const std::string& path, const StoredInstance& inst) {
  write_file(path, encode_instance(inst));
}

StoredInstance load_instance(const std::string& path) {
  return decode_instance(read_file(path));
}

}  // namespace plab
