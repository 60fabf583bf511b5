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

#ifndef PLAB_CORE_REDUCTIONS_HPP_
#define PLAB_CORE_REDUCTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/designs.hpp"
#include "core/instances.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"
#include "core/transforms.hpp"

namespace plab {

enum class GameMode { kUnion, kXor };

struct PlayerShares {
  GameMode mode = GameMode::kUnion;
  std::vector<BitMatrix> bits;   // graph games
  std::vector<RealMatrix> real;  // Gaussian games (summed)
  Seed public_coins;             // everything shared was drawn from this
  std::vector<size_t> relabel;   // design vertex -> output vertex; empty = identity
  size_t players() const { return bits.empty() ? real.size() : bits.size(); }
};

struct SharePair {
  BitMatrix first, second;
  // Design row/col -> output row/col (equal for graphs).
  std::vector<size_t> row_relabel, col_relabel;
};

// Two-party XOR construction over a clique design: per block, a uniform
// 4-colouring of the block's edges; colours {1,3} / {1,2} to the first party
// by x_i, {1,4} / {3,4} to the second by y_i. Uncovered pairs go to the first
// party as fair coins. Vertex labels are permuted first.
SharePair xor_ud_to_pc(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                       size_t n, size_t k, const CliqueDesign& design, Seed seed);

// Same scheme over the full r x s blocks of the biclique grid, with random
// row and column relabelling.
SharePair xor_ud_to_bpc(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                        size_t n, size_t r, size_t s, Seed seed);

// Union game: each block edge is red or blue by a fair coin; player 0 holds
// the red edges of blocks with x_i = 1 plus all uncovered coins, player 1 the
// blue edges of blocks with y_i = 1.
PlayerShares ud_to_srpc(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                        size_t n, size_t k, const CliqueDesign& design, Seed seed);

struct Sandwich {
  BitMatrix g_min, g_max;
};
// Recovers, from the same public coins, a G_max ~ G(n, 1/2) (plus the witness
// clique) and G_min (the witness clique or empty) sandwiching the union.
Sandwich srpc_sandwich(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                       size_t n, size_t k, const CliqueDesign& design, Seed seed);

// One player per edge slot of a k-clique (lexicographic pair order inside each
// block). inputs is C(k,2) x blocks.
PlayerShares pe_to_pc(const BitMatrix& inputs, size_t n, size_t k,
                      const CliqueDesign& design, Seed seed);

struct HhCells {
  size_t w = 0;
  // cells[i * w + j] lists the k^2 flat entries (row * n + col) of U_ij in
  // player order.
  std::vector<std::vector<size_t>> cells;
};
HhCells hh_cells(size_t n, size_t k, Seed seed);

// inputs is k^2 x w^2 with w = floor(n / k); coordinate (i, j) fills U_ij.
// Entries outside all cells are N(0, sigma0^2) and belong to player 0.
PlayerShares pe_to_hh(const RealMatrix& inputs, size_t n, size_t k, double sigma0,
                      Seed seed);

struct FindBpcEmbedding {
  BitMatrix matrix;
  BitMatrix known;  // publicly known entries
  PlantedTruth truth;
};
// inputs is r x (n - s + 1) with exactly one all-ones column.
FindBpcEmbedding findpe_to_findbpc(const BitMatrix& inputs, size_t n, size_t r, size_t s,
                                   Seed seed);

struct BlParams {
  size_t d = 0, t = 0, k = 0, m = 0, kappa = 0;
  double delta = 0.05;
  // Region checks; the structural constraints t <= m < d, k <= kappa <= m
  // are always enforced.
  bool check_r0 = true;
  std::optional<double> gamma;  // adds k >= t^gamma and t < d
};

// Empty string when (d, t, k) lies in the region, otherwise the failed
// inequality with its value.
std::string bl_region_violation(const BlParams& p);

struct BlReduction {
  BlParams params;
  TransformStack stack{0, 0};
  std::vector<int> eta;
  std::vector<int64_t> row_source;  // source vertex of each output row, -1 if new
  std::vector<int64_t> col_source;
};

BlReduction bl_build(const BitMatrix& g, const BlParams& p, Seed seed);
IntMatrix bl_materialize(const BlReduction& red, const BitMatrix& g);
// Unit vector on the output rows whose source vertex is in `vertices`.
std::vector<double> bl_support_direction(const BlReduction& red,
                                         const std::vector<size_t>& vertices);

BitMatrix reconstruct(const PlayerShares& shares, GameMode mode);
BitMatrix reconstruct(const PlayerShares& shares);
RealMatrix reconstruct_real(const PlayerShares& shares);
BitMatrix xor_combine(const SharePair& pair);

// Writes player_<i>.plab files plus manifest.json into `dir`.
void save_shares(const std::string& dir, const PlayerShares& shares);
PlayerShares load_shares(const std::string& dir);

}  // namespace plab

#endif  // PLAB_CORE_REDUCTIONS_HPP_
