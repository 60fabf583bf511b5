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

#include "core/transforms.hpp"

#include <gtest/gtest.h>

#include "core/error.hpp"
#include "core/instances.hpp"

namespace plab {
namespace {

BitMatrix sample_bits(size_t r, size_t c, Seed seed) {
  Rng rng(seed);
  BitMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < c; ++j) m.set(i, j, rng.bit());
  }
  return m;
}

TEST(MaterializeTest, Examples) {
  const auto y = sample_bits(4, 5, Seed(1));
  TransformStack empty(4, 5);
  EXPECT_EQ(materialize(empty, y), to_int(y));

  TransformStack swap(4, 5);
  swap.push(PermuteRows{{1, 0, 2, 3}});
  const auto x = materialize(swap, y);
  for (size_t j = 0; j < 5; ++j) {
    EXPECT_EQ(x(0, j), y.get(1, j));
    EXPECT_EQ(x(1, j), y.get(0, j));
  }

  TransformStack aff(4, 5);
  aff.push(AffineRow{0, 2, 1});
  const auto z = materialize(aff, y);
  for (size_t j = 0; j < 5; ++j) EXPECT_TRUE(z(0, j) == 1 || z(0, j) == 3);

  EXPECT_THROW(materialize(aff, sample_bits(3, 5, Seed(2))), ParameterError);
}

TEST(MaterializeTest, InsertAndSelect) {
  IntMatrix y(2, 2);
  y(0, 0) = 1;
  y(0, 1) = 2;
  y(1, 0) = 3;
  y(1, 1) = 4;
  TransformStack s(2, 2);
  s.push(InsertRow{1, {7, 8}});
  s.push(InsertCol{0, {-1, -2, -3}});
  s.push(SelectRows{{2, 0}});
  const auto x = materialize(s, y);
  ASSERT_EQ(x.rows(), 2u);
  ASSERT_EQ(x.cols(), 3u);
  EXPECT_EQ(x(0, 0), -3);
  EXPECT_EQ(x(0, 1), 3);
  EXPECT_EQ(x(0, 2), 4);
  EXPECT_EQ(x(1, 0), -1);
  EXPECT_EQ(x(1, 1), 1);
}

TEST(StackTest, RejectsInconsistentOps) {
  TransformStack s(3, 3);
  EXPECT_THROW(s.push(PermuteRows{{0, 0, 1}}), ParameterError);
  EXPECT_THROW(s.push(InsertRow{4, {0, 0, 0}}), ParameterError);
  EXPECT_THROW(s.push(InsertCol{0, {0, 0}}), ParameterError);
  EXPECT_THROW(s.push(SelectCols{{0, 3}}), ParameterError);
  EXPECT_THROW(s.push(AffineCol{3, 1, 0}), ParameterError);
}

TEST(RewriteSketchTest, Examples) {
  TransformStack id(3, 3);
  std::vector<int64_t> w = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto rw = rewrite_sketch(id, w);
  EXPECT_EQ(rw.w, w);
  EXPECT_EQ(rw.offset, 0);

  // Probe (i,j) after PermuteRows(pi) reads Y at (pi^{-1}(i), j).
  TransformStack perm(3, 3);
  perm.push(PermuteRows{{2, 0, 1}});
  std::vector<int64_t> probe(9, 0);
  probe[0 * 3 + 1] = 1;  // X(0,1) = Y(1,1) since pi(1) = 0
  rw = rewrite_sketch(perm, probe);
  std::vector<int64_t> want(9, 0);
  want[1 * 3 + 1] = 1;
  EXPECT_EQ(rw.w, want);
  EXPECT_EQ(rw.offset, 0);

  TransformStack aff(3, 3);
  aff.push(AffineRow{0, 2, 1});
  std::vector<int64_t> e00(9, 0);
  e00[0] = 1;
  rw = rewrite_sketch(aff, e00);
  std::vector<int64_t> twice(9, 0);
  twice[0] = 2;
  EXPECT_EQ(rw.w, twice);
  EXPECT_EQ(rw.offset, 1);
}

TEST(RewriteEdgeProbeTest, Examples) {
  TransformStack id(3, 3);
  auto p = rewrite_edge_probe(id, 1, 2);
  ASSERT_TRUE(p.source);
  EXPECT_EQ(*p.source, std::make_pair(size_t{1}, size_t{2}));

  TransformStack ins(3, 3);
  ins.push(InsertRow{0, {5, 6, 7}});
  p = rewrite_edge_probe(ins, 0, 2);
  EXPECT_FALSE(p.source);
  EXPECT_EQ(p.b, 7.0);

  // Zero source queries for a probe into an inserted row.
  OracleSession src(sample_bits(3, 3, Seed(1)));
  SimulatedOracle sim(src, ins);
  EXPECT_EQ(sim.edge_probe(0, 1), 6.0);
  EXPECT_EQ(src.counts().total(), 0u);
  EXPECT_EQ(sim.counts().total(), 1u);
}

TEST(RewriteMvTest, ColumnPermutationAndInsert) {
  TransformStack perm(3, 3);
  perm.push(PermuteCols{{1, 2, 0}});
  const std::vector<int64_t> v = {10, 20, 30};
  const auto rw = rewrite_mv(perm, v);
  // X[:, perm[c]] = Y[:, c] so v'[c] = v[perm[c]].
  EXPECT_EQ(rw.v, (std::vector<int64_t>{20, 30, 10}));

  for (uint64_t t = 0; t < 100; ++t) {
    const auto y = sample_bits(8, 8, Seed(3).child(t));
    TransformStack s(8, 8);
    Rng rng(Seed(4).child(t));
    std::vector<double> col(8);
    for (double& c : col) c = static_cast<double>(rng.below(5));
    s.push(InsertCol{static_cast<size_t>(rng.below(9)), col});
    OracleSession src(y), direct(materialize(s, y));
    SimulatedOracle sim(src, s);
    std::vector<int64_t> q(9);
    for (auto& e : q) e = static_cast<int64_t>(rng.below(100));
    ASSERT_EQ(sim.mv(q), direct.mv(q));
    ASSERT_EQ(src.counts()[Model::kMv], 1u);
  }
}

TEST(F2RewriteTest, RejectsNonBinaryAffine) {
  TransformStack s(2, 2);
  s.push(AffineRow{0, 2, 0});
  EXPECT_THROW(rewrite_f2_sketch(s, std::vector<uint8_t>(4, 1)), CapabilityError);
  TransformStack t(2, 2);
  t.push(AffineCol{1, 1, 1});
  const auto rw = rewrite_f2_sketch(t, std::vector<uint8_t>{0, 1, 0, 1});
  EXPECT_EQ(rw.offset, 0);  // two touched cells, each +1
  EXPECT_EQ(rw.w, (std::vector<uint8_t>{0, 1, 0, 1}));
}

TEST(EquivalenceTest, AllModelsAgreeWithMaterialization) {
  for (size_t m = 0; m < kModelCount; ++m) {
    const auto rep = check_transform_equivalence(static_cast<Model>(m), 2000, Seed(100 + m));
    EXPECT_EQ(rep.mismatches, 0u) << model_name(rep.model) << ": " << rep.counterexample;
    EXPECT_LE(rep.max_source_queries, 1u);
  }
}

TEST(EquivalenceTest, CompositionMatchesConcatenation) {
  for (uint64_t t = 0; t < 300; ++t) {
    Rng rng(Seed(7).child(t));
    const auto s1 = random_stack(6, 5, 3, rng, StackFlavor::kInteger);
    const auto s2 = random_stack(s1.rows(), s1.cols(), 3, rng, StackFlavor::kInteger);
    const auto both = s1.then(s2);
    const auto y = sample_bits(6, 5, Seed(8).child(t));
    ASSERT_EQ(materialize(both, y), materialize(s2, materialize(s1, y)));

    std::vector<int64_t> w(both.rows() * both.cols());
    for (auto& e : w) e = static_cast<int64_t>(rng.below(21)) - 10;
    // Rewriting through s2 then s1 equals rewriting through s1 ++ s2.
    const auto inner = rewrite_sketch(s2, w);
    const auto outer = rewrite_sketch(s1, inner.w);
    const auto direct = rewrite_sketch(both, w);
    ASSERT_EQ(outer.w, direct.w);
    ASSERT_EQ(outer.offset + inner.offset, direct.offset);

    // Nested simulation costs one source query as well.
    OracleSession src(y);
    SimulatedOracle mid(src, s1);
    SimulatedOracle top(mid, s2);
    OracleSession ref(materialize(both, y));
    std::vector<int64_t> v(both.cols());
    for (auto& e : v) e = static_cast<int64_t>(rng.below(21)) - 10;
    ASSERT_EQ(top.mv(v), ref.mv(v));
    ASSERT_LE(src.counts().total(), 1u);
  }
}

}  // namespace
}  // namespace plab
