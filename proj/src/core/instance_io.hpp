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

#ifndef PLAB_CORE_INSTANCE_IO_HPP_
#define PLAB_CORE_INSTANCE_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace plab {

// Payload tags of the 16-byte instance header:
//   "PLAB" | u16 version | u16 kind | u32 rows | u32 cols   (little endian)
// Bit payloads are a row-major bit stream packed LSB first; real payloads are
// little-endian IEEE doubles.
enum class PayloadKind : uint16_t { kAdjacency = 1, kBipartite = 2, kReal = 3 };

inline constexpr uint16_t kInstanceFormatVersion = 1;

struct StoredInstance {
  PayloadKind kind = PayloadKind::kAdjacency;
  BitMatrix bits;   // kAdjacency, kBipartite
  RealMatrix real;  // kReal
};

std::vector<uint8_t> encode_instance(const StoredInstance& inst);
StoredInstance decode_instance(const std::vector<uint8_t>& bytes);

void write_file(const std::string& path, const std::vector<uint8_t>& bytes);
void write_text_file(const std::string& path, const std::string& text);
std::vector<uint8_t> read_file(const std::string& path);
std::string read_text_file(const std::string& path);

void save_instance(const std::string& path, const StoredInstance& inst);
StoredInstance load_instance(const std::string& path);

}  // namespace plab

#endif  // PLAB_CORE_INSTANCE_IO_HPP_
