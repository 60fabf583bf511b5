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

#ifndef PLAB_CORE_MATRIX_HPP_
#define PLAB_CORE_MATRIX_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace plab {

using Wide = __int128;

std::string wide_to_string(Wide x);

// Dense 0/1 matrix with rows packed into 64-bit words, LSB first.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64),
        words_(rows * stride_, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t stride() const { return stride_; }

  bool get(size_t i, size_t j) const {
    return (words_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(size_t i, size_t j, bool v) {
    uint64_t& w = words_[i * stride_ + j / 64];
    const uint64_t mask = uint64_t{1} << (j % 64);
    w = v ? (w | mask) : (w & ~mask);
  }
  // Sets (i,j) and (j,i).
  void set_sym(size_t i, size_t j, bool v) {
    set(i, j, v);
    set(j, i, v);
  }

  const uint64_t* row(size_t i) const { return words_.data() + i * stride_; }
  uint64_t* row(size_t i) { return words_.data() + i * stride_; }
  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

  size_t row_count(size_t i) const;
  size_t count() const;
  bool is_symmetric_adjacency() const;

  bool operator==(const BitMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  size_t stride_ = 0;
  std::vector<uint64_t> words_;
};

template <class T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(size_t rows, size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  std::span<const T> row(size_t i) const {
    return std::span<const T>(data_.data() + i * cols_, cols_);
  }
  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = DenseMatrix<int64_t>;
using RealMatrix = DenseMatrix<double>;

IntMatrix to_int(const BitMatrix& m);
RealMatrix to_real(const BitMatrix& m);
RealMatrix to_real(const IntMatrix& m);

inline size_t popcount_and(const uint64_t* a, const uint64_t* b, size_t words) {
  size_t c = 0;
  for (size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

}  // namespace plab

#endif  // PLAB_CORE_MATRIX_HPP_
