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

#include "core/matrix.hpp"

#include <algorithm>

namespace plab {

std::string wide_to_string(Wide x) {
  if (x == 0) return "0";
  const bool neg = x < 0;
  // Work in the negative range so the minimum value does not overflow.
  std::string s;
  Wide y = neg ? x : -x;
  while (y != 0) {
    s.push_back(static_cast<char>('0' - static_cast<int>(y % 10)));
    y /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

size_t BitMatrix::row_count(size_t i) const {
  size_t c = 0;
  const uint64_t* r = row(i);
  for (size_t w = 0; w < stride_; ++w) c += std::popcount(r[w]);
  return c;
}

size_t BitMatrix::count() const {
  size_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool BitMatrix::is_symmetric_adjacency() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i) {
    if (get(i, i)) return false;
    for (size_t j = i + 1; j < cols_; ++j) {
      if (get(i, j) != get(j, i)) return false;
    }
  }
  return true;
}

IntMatrix to_int(const BitMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m.get(i, j) ? 1 : 0;
  }
  return out;
}

RealMatrix to_real(const BitMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m.get(i, j) ? 1.0 : 0.0;
  }
  return out;
}

RealMatrix to_real(const IntMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (size_t i = 0; i < m.data().size(); ++i) {
    out.data()[i] = static_cast<double>(m.data()[i]);
  }
  return out;
}

}  // namespace plab
