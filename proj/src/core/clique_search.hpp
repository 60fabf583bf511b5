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

#ifndef PLAB_CORE_CLIQUE_SEARCH_HPP_
#define PLAB_CORE_CLIQUE_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "core/matrix.hpp"

namespace plab {

struct CliqueSearchResult {
  std::vector<size_t> clique;  // sorted local indices; empty if none found
  // True when the search finished: the result is then a maximum clique (max
  // mode) or a proof that no clique of the requested size exists.
  bool certified = false;
  uint64_t nodes = 0;
};

// Any clique of size >= tau in the symmetric graph `adj`. Greedy seeding
// first, then branch and bound with a greedy colouring bound.
CliqueSearchResult find_clique_at_least(const BitMatrix& adj, size_t tau,
                                        uint64_t node_limit);

// Maximum clique among cliques of size >= lower_bound (empty if none).
CliqueSearchResult max_clique(const BitMatrix& adj, size_t lower_bound,
                              uint64_t node_limit);

}  // namespace plab

#endif  // PLAB_CORE_CLIQUE_SEARCH_HPP_
