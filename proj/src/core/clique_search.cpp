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

#include "core/clique_search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "core/error.hpp"

namespace plab {

namespace {

using Bits = std::vector<uint64_t>;

class Searcher {
 public:
  Searcher(const BitMatrix& adj, uint64_t node_limit) : limit_(node_limit) {
    require(adj.rows() == adj.cols(), "clique search: adjacency must be square");
    n_ = adj.rows();
    words_ = (n_ + 63) / 64;
    // Relabel by non-increasing degree so low bit positions are high-degree
    // vertices, which the colouring visits first.
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), size_t{0});
    std::vector<size_t> deg(n_);
    for (size_t v = 0; v < n_; ++v) deg[v] = adj.row_count(v);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](size_t a, size_t b) { return deg[a] > deg[b]; });
    std::vector<size_t> pos(n_);
    for (size_t i = 0; i < n_; ++i) pos[order_[i]] = i;
    nbr_.assign(n_, Bits(words_, 0));
    for (size_t i = 0; i < n_; ++i) {
      const size_t v = order_[i];
      for (size_t j = 0; j < n_; ++j) {
        if (j != i && adj.get(v, order_[j])) set(nbr_[i], j);
      }
    }
  }

  size_t size() const { return n_; }

  // Greedy cliques grown from the best-connected pairs.
  std::vector<size_t> greedy(size_t starts) {
    std::vector<size_t> best;
    for (size_t s = 0; s < std::min(starts, n_); ++s) {
      size_t partner = n_;
      size_t common = 0;
      for (size_t u = 0; u < n_; ++u) {
        if (!test(nbr_[s], u)) continue;
        const size_t c = popcount_and(nbr_[s].data(), nbr_[u].data(), words_);
        if (partner == n_ || c > common) {
          partner = u;
          common = c;
        }
      }
      std::vector<size_t> clique = {s};
      Bits cand = nbr_[s];
      if (partner != n_) {
        clique.push_back(partner);
        and_with(cand, nbr_[partner]);
      }
      while (true) {
        size_t pick = n_, pick_deg = 0;
        for_each(cand, [&](size_t v) {
          const size_t d = popcount_and(cand.data(), nbr_[v].data(), words_);
          if (pick == n_ || d > pick_deg) {
            pick = v;
            pick_deg = d;
          }
        });
        if (pick == n_) break;
        clique.push_back(pick);
        and_with(cand, nbr_[pick]);
      }
      if (clique.size() > best.size()) best = clique;
    }
    return best;
  }

  // Branch and bound looking for cliques larger than `floor`. With stop_at
  // set, returns as soon as a clique of that size is found.
  bool run(size_t floor, size_t stop_at) {
    best_size_ = floor;
    stop_at_ = stop_at;
    aborted_ = false;
    done_ = false;
    Bits p(words_, 0);
    for (size_t v = 0; v < n_; ++v) set(p, v);
    std::vector<size_t> current;
    expand(current, p);
    return !aborted_;
  }

  uint64_t nodes() const { return nodes_; }
  const std::vector<size_t>& best() const { return best_; }
  std::vector<size_t> to_original(const std::vector<size_t>& local) const {
    std::vector<size_t> out;
    for (size_t v : local) out.push_back(order_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static void set(Bits& b, size_t i) { b[i / 64] |= uint64_t{1} << (i % 64); }
  static void reset(Bits& b, size_t i) { b[i / 64] &= ~(uint64_t{1} << (i % 64)); }
  static bool test(const Bits& b, size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
  void and_with(Bits& a, const Bits& b) const {
    for (size_t w = 0; w < words_; ++w) a[w] &= b[w];
  }
  template <class Fn>
  void for_each(const Bits& b, Fn&& fn) const {
    for (size_t w = 0; w < words_; ++w) {
      uint64_t x = b[w];
      while (x) {
        fn(w * 64 + static_cast<size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
  bool empty(const Bits& b) const {
    for (uint64_t w : b) {
      if (w) return false;
    }
    return true;
  }

  void expand(std::vector<size_t>& current, Bits& p) {
    if (done_ || aborted_) return;
    if (++nodes_ > limit_) {
      aborted_ = true;
      return;
    }
    // Greedy colouring of p; vertices listed in colour order.
    std::vector<size_t> verts, colours;
    Bits uncoloured = p;
    size_t colour = 0;
    while (!empty(uncoloured)) {
      ++colour;
      Bits q = uncoloured;
      while (!empty(q)) {
        size_t v = 0;
        for (size_t w = 0; w < words_; ++w) {
          if (q[w]) {
            v = w * 64 + static_cast<size_t>(std::countr_zero(q[w]));
            break;
          }
        }
        reset(uncoloured, v);
        reset(q, v);
        for (size_t w = 0; w < words_; ++w) q[w] &= ~nbr_[v][w];
        verts.push_back(v);
        colours.push_back(colour);
      }
    }
    for (size_t idx = verts.size(); idx-- > 0;) {
      if (current.size() + colours[idx] <= best_size_) return;
      const size_t v = verts[idx];
      current.push_back(v);
      Bits np = p;
      and_with(np, nbr_[v]);
      if (empty(np)) {
        if (current.size() > best_size_) {
          best_size_ = current.size();
          best_ = current;
          if (stop_at_ && best_size_ >= stop_at_) done_ = true;
        }
      } else {
        expand(current, np);
      }
      current.pop_back();
      if (done_ || aborted_) return;
      reset(p, v);
    }
  }

  size_t n_ = 0;
  size_t words_ = 0;
  uint64_t limit_;
  uint64_t nodes_ = 0;
  std::vector<size_t> order_;
  std::vector<Bits> nbr_;
  size_t best_size_ = 0;
  size_t stop_at_ = 0;
  bool aborted_ = false;
  bool done_ = false;
  std::vector<size_t> best_;
};

constexpr size_t kGreedyStarts = 16;

}  // namespace

CliqueSearchResult find_clique_at_least(const BitMatrix& adj, size_t tau,
                                        uint64_t node_limit) {
  CliqueSearchResult out;
  if (tau <= 1) {
    out.certified = true;
    if (tau == 1 && adj.rows() > 0) out.clique = {0};
    return out;
  }
  Searcher s(adj, node_limit);
  const auto seed = s.greedy(kGreedyStarts);
  if (seed.size() >= tau) {
    out.clique = s.to_original(seed);
    out.certified = true;
    return out;
  }
  out.certified = s.run(tau - 1, tau);
  if (!s.best().empty()) {
    out.clique = s.to_original(s.best());
    out.certified = true;
  }
  out.nodes = s.nodes();
  return out;
}

CliqueSearchResult max_clique(const BitMatrix& adj, size_t lower_bound,
                              uint64_t node_limit) {
  CliqueSearchResult out;
  Searcher s(adj, node_limit);
  if (s.size() == 0) {
    out.certified = true;
    return out;
  }
  const auto seed = s.greedy(kGreedyStarts);
  const size_t floor = std::max<size_t>(lower_bound, 1) - 1;
  std::vector<size_t> best;
  if (seed.size() > floor) best = seed;
  out.certified = s.run(std::max(floor, best.size()), 0);
  if (!s.best().empty()) best = s.best();
  out.clique = s.to_original(best);
  out.nodes = s.nodes();
  return out;
}

}  // namespace plab
