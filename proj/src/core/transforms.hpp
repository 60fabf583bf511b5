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

#ifndef PLAB_CORE_TRANSFORMS_HPP_
#define PLAB_CORE_TRANSFORMS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "core/matrix.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"

namespace plab {

// Each op maps the current matrix M to a new matrix M'.
struct InsertRow {  // M' has `values` as row `pos`; later rows shift down
  size_t pos;
  std::vector<double> values;
};
struct InsertCol {
  size_t pos;
  std::vector<double> values;
};
struct PermuteRows {  // M'[perm[r]] = M[r]
  std::vector<size_t> perm;
};
struct PermuteCols {  // M'[:, perm[c]] = M[:, c]
  std::vector<size_t> perm;
};
struct AffineRow {  // M'[index] = a * M[index] + b
  size_t index;
  double a, b;
};
struct AffineCol {
  size_t index;
  double a, b;
};
struct SelectRows {  // M'[i] = M[keep[i]], keep distinct
  std::vector<size_t> keep;
};
struct SelectCols {
  std::vector<size_t> keep;
};

using TransformOp = std::variant<InsertRow, InsertCol, PermuteRows, PermuteCols,
                                 AffineRow, AffineCol, SelectRows, SelectCols>;

class TransformStack {
 public:
  TransformStack(size_t source_rows, size_t source_cols);

  // Validates `op` against the current derived dims.
  void push(TransformOp op);

  size_t source_rows() const { return dims_.front().first; }
  size_t source_cols() const { return dims_.front().second; }
  size_t rows() const { return dims_.back().first; }
  size_t cols() const { return dims_.back().second; }
  const std::vector<TransformOp>& ops() const { return ops_; }
  // Dims of the matrix that op k is applied to.
  std::pair<size_t, size_t> dims_before(size_t k) const { return dims_[k]; }
  // True when every constant (inserted values, a, b) is an integer.
  bool integral() const;

  // This stack followed by `next`; next's source dims must equal our derived dims.
  TransformStack then(const TransformStack& next) const;

 private:
  std::vector<TransformOp> ops_;
  std::vector<std::pair<size_t, size_t>> dims_;
};

IntMatrix materialize(const TransformStack& s, const IntMatrix& y);
IntMatrix materialize(const TransformStack& s, const BitMatrix& y);
RealMatrix materialize(const TransformStack& s, const RealMatrix& y);

// X[i][j] = a * Y[source] + b, or the constant b when source is empty.
struct ProbeRewrite {
  std::optional<std::pair<size_t, size_t>> source;
  double a = 1.0;
  double b = 0.0;
};
ProbeRewrite rewrite_edge_probe(const TransformStack& s, size_t i, size_t j);

struct SketchRewrite {
  std::vector<int64_t> w;
  Wide offset = 0;
};
struct SketchRewriteReal {
  std::vector<double> w;
  double offset = 0.0;
};
struct F2Rewrite {
  std::vector<uint8_t> w;
  int offset = 0;
};
SketchRewrite rewrite_sketch(const TransformStack& s, std::span<const int64_t> w);
SketchRewriteReal rewrite_sketch(const TransformStack& s, std::span<const double> w);
// Supports affine ops with a = 1, b in {0, 1} and 0/1 inserted values only.
F2Rewrite rewrite_f2_sketch(const TransformStack& s, std::span<const uint8_t> w);

// X v is recovered from the single source answer y = Y v' as
// out[r] = scale[r] * y[source[r]] + add[r]   (source[r] < 0: constant add[r]).
struct MvRewrite {
  std::vector<int64_t> v;
  std::vector<int64_t> source;
  std::vector<int64_t> scale;
  std::vector<Wide> add;
  bool needs_query = false;
};
struct MvRewriteReal {
  std::vector<double> v;
  std::vector<int64_t> source;
  std::vector<double> scale;
  std::vector<double> add;
  bool needs_query = false;
};
MvRewrite rewrite_mv(const TransformStack& s, std::span<const int64_t> v);
MvRewriteReal rewrite_mv(const TransformStack& s, std::span<const double> v);

// u^T X v = u'^T Y v' + offset.
struct UtMvRewrite {
  std::vector<int64_t> u, v;
  Wide offset = 0;
  bool needs_query = false;
};
struct UtMvRewriteReal {
  std::vector<double> u, v;
  double offset = 0.0;
  bool needs_query = false;
};
UtMvRewrite rewrite_utmv(const TransformStack& s, std::span<const int64_t> u,
                         std::span<const int64_t> v);
UtMvRewriteReal rewrite_utmv(const TransformStack& s, std::span<const double> u,
                             std::span<const double> v);

// Presents the derived matrix X = stack(Y) as an oracle; every query on X is
// answered with at most one query of the same model on the source oracle.
class SimulatedOracle final : public Oracle {
 public:
  SimulatedOracle(Oracle& source, TransformStack stack);

  size_t rows() const override { return stack_.rows(); }
  size_t cols() const override { return stack_.cols(); }
  bool integral() const override { return source_.integral() && stack_.integral(); }

  double edge_probe(size_t i, size_t j) override;
  std::vector<Wide> mv(std::span<const int64_t> v) override;
  std::vector<double> mv_real(std::span<const double> v) override;
  Wide utmv(std::span<const int64_t> u, std::span<const int64_t> v) override;
  double utmv_real(std::span<const double> u, std::span<const double> v) override;
  Wide sketch(std::span<const int64_t> w) override;
  double sketch_real(std::span<const double> w) override;
  int f2_sketch(std::span<const uint8_t> w) override;

  QueryCounts counts() const override { return counts_; }
  const TransformStack& stack() const { return stack_; }

 private:
  void count(Model m) { ++counts_.by_model[static_cast<size_t>(m)]; }

  Oracle& source_;
  TransformStack stack_;
  QueryCounts counts_;
};

enum class StackFlavor { kInteger, kReal, kF2 };

// Random stack of up to max_ops ops over a rows x cols source. Integer stacks
// use small integer constants; F2 stacks keep a = 1, b and inserted values in
// {0, 1}.
TransformStack random_stack(size_t rows, size_t cols, size_t max_ops, Rng& rng,
                            StackFlavor flavor);

struct EquivalenceReport {
  Model model = Model::kEdgeProbe;
  uint64_t trials = 0;
  uint64_t mismatches = 0;
  uint64_t max_source_queries = 0;
  std::string counterexample;  // first mismatch, empty when none
};

// Compares simulated answers against direct answers on materialize(stack, Y)
// for random (stack, Y, query) triples with dims <= max_dim. Integer cases
// must match exactly; real cases within 1e-9 relative to the query scale.
EquivalenceReport check_transform_equivalence(Model model, uint64_t trials, Seed seed,
                                              size_t max_dim = 16, size_t max_ops = 6);

}  // namespace plab

#endif  // PLAB_CORE_TRANSFORMS_HPP_
