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

#ifndef PLAB_CORE_DESIGNS_HPP_
#define PLAB_CORE_DESIGNS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plab {

enum class DesignKind { kTransversal, kDisjoint };

// Family of k-subsets of [0, n) pairwise meeting in at most one vertex.
struct CliqueDesign {
  size_t n = 0;
  size_t k = 0;
  // Order of the transversal design (blocks = m * m), or the number of
  // vertex-disjoint blocks for DesignKind::kDisjoint.
  size_t m = 0;
  DesignKind kind = DesignKind::kTransversal;
  std::vector<std::vector<size_t>> blocks;

  size_t used_vertices() const { return k * m; }
};

struct BicliqueBlock {
  size_t row_begin, row_end, col_begin, col_end;
  size_t rows() const { return row_end - row_begin; }
  size_t cols() const { return col_end - col_begin; }
};

struct BicliqueDesign {
  size_t n = 0;
  size_t r = 0;
  size_t s = 0;
  std::vector<BicliqueBlock> blocks;

  size_t full_blocks() const;
};

size_t largest_prime_leq(size_t x);

// Needs the largest prime m <= floor(n/k) to satisfy m >= k.
bool transversal_feasible(size_t n, size_t k);
CliqueDesign clique_partition(size_t n, size_t k);
// Transversal design when floor(n/k) >= k, otherwise floor(n/k)
// vertex-disjoint blocks of consecutive vertices.
CliqueDesign make_ppc_design(size_t n, size_t k);
BicliqueDesign biclique_partition(size_t n, size_t r, size_t s);

// Index of the unordered pair {u, v}, u != v, in [0, n(n-1)/2).
inline size_t pair_index(size_t u, size_t v, size_t n) {
  if (u > v) std::swap(u, v);
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

// owner[pair_index(u,v)] = block containing both u and v, or -1.
// Throws ContractError if some pair lies in two blocks.
std::vector<int32_t> pair_owner(const CliqueDesign& d);
size_t covered_pairs(const CliqueDesign& d);

struct DesignCheck {
  bool ok = true;
  std::string message;
  // Set when two blocks share more than one vertex.
  std::optional<size_t> block_a, block_b;
  std::vector<size_t> shared;
};

// Validates sizes, ranges and pairwise intersections (exhaustively, through
// the pair index).
DesignCheck check_design(const CliqueDesign& d);

std::string design_to_json(const CliqueDesign& d);
CliqueDesign design_from_json(const std::string& text);

}  // namespace plab

#endif  // PLAB_CORE_DESIGNS_HPP_
