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

#ifndef PLAB_CORE_ORACLE_HPP_
#define PLAB_CORE_ORACLE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "core/matrix.hpp"

namespace plab {

enum class Model { kEdgeProbe = 0, kMv = 1, kUtMv = 2, kSketch = 3, kF2Sketch = 4 };
inline constexpr size_t kModelCount = 5;

const char* model_name(Model m);
Model model_from_name(const std::string& name);

struct QueryCounts {
  std::array<uint64_t, kModelCount> by_model{};

  uint64_t operator[](Model m) const { return by_model[static_cast<size_t>(m)]; }
  uint64_t total() const;
  QueryCounts operator-(const QueryCounts& o) const;
  bool operator==(const QueryCounts&) const = default;
};

// Sparse linear-sketch query over the row-major vectorization.
struct SparseQuery {
  std::vector<uint64_t> index;
  std::vector<int64_t> weight;
};

struct TranscriptRecord {
  Model model;
  uint64_t digest;
  std::string answer;
};

// Query interface over a hidden matrix. Integer queries are answered exactly
// (128-bit accumulation) when the hidden entries are integers; the *_real
// variants work on any hidden matrix with compensated summation.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual size_t rows() const = 0;
  virtual size_t cols() const = 0;
  virtual bool integral() const = 0;

  virtual double edge_probe(size_t i, size_t j) = 0;
  virtual std::vector<Wide> mv(std::span<const int64_t> v) = 0;
  virtual std::vector<double> mv_real(std::span<const double> v) = 0;
  virtual Wide utmv(std::span<const int64_t> u, std::span<const int64_t> v) = 0;
  virtual double utmv_real(std::span<const double> u, std::span<const double> v) = 0;
  virtual Wide sketch(std::span<const int64_t> w) = 0;
  virtual double sketch_real(std::span<const double> w) = 0;
  virtual int f2_sketch(std::span<const uint8_t> w) = 0;
  // Same model and accounting as sketch(); the default densifies.
  virtual Wide sketch_sparse(const SparseQuery& q);

  virtual QueryCounts counts() const = 0;
};

using HiddenMatrix = std::variant<BitMatrix, IntMatrix, RealMatrix>;

class OracleSession final : public Oracle {
 public:
  explicit OracleSession(HiddenMatrix hidden, int bound_exponent = 10);

  size_t rows() const override;
  size_t cols() const override;
  bool integral() const override;

  double edge_probe(size_t i, size_t j) override;
  std::vector<Wide> mv(std::span<const int64_t> v) override;
  std::vector<double> mv_real(std::span<const double> v) override;
  Wide utmv(std::span<const int64_t> u, std::span<const int64_t> v) override;
  double utmv_real(std::span<const double> u, std::span<const double> v) override;
  Wide sketch(std::span<const int64_t> w) override;
  double sketch_real(std::span<const double> w) override;
  int f2_sketch(std::span<const uint8_t> w) override;
  Wide sketch_sparse(const SparseQuery& q) override;

  QueryCounts counts() const override { return counts_; }

  // Total queries allowed across all models; nullopt means unlimited.
  void set_budget(std::optional<uint64_t> budget) { budget_ = budget; }
  void enable_transcript(bool on) { transcript_on_ = on; }
  const std::vector<TranscriptRecord>& transcript() const { return transcript_; }
  std::string transcript_jsonl() const;
  // Largest accepted |entry| of a query vector: min(n^c, 2^62).
  uint64_t entry_bound() const { return entry_bound_; }

 private:
  void admit(Model m);
  void record(Model m, uint64_t digest, std::string answer);
  void check_int(std::span<const int64_t> v, size_t len, const char* what) const;
  void check_real(std::span<const double> v, size_t len, const char* what) const;

  HiddenMatrix hidden_;
  QueryCounts counts_;
  std::optional<uint64_t> budget_;
  bool transcript_on_ = false;
  std::vector<TranscriptRecord> transcript_;
  uint64_t entry_bound_;
};

// Exact-arithmetic helpers shared with the transform layer.
Wide checked_add(Wide a, Wide b);
Wide checked_mul(Wide a, Wide b);
int64_t narrow_int64(Wide x);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace plab

#endif  // PLAB_CORE_ORACLE_HPP_
