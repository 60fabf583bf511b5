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

#include "core/designs.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>

#include "core/error.hpp"

namespace plab {

namespace {

bool is_prime(size_t x) {
  if (x < 2) return false;
  for (size_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

}  // namespace

size_t largest_prime_leq(size_t x) {
  require(x >= 2, "largest_prime_leq: x must be >= 2");
  while (!is_prime(x)) --x;
  return x;
}

bool transversal_feasible(size_t n, size_t k) {
  return k >= 2 && n / k >= k && largest_prime_leq(n / k) >= k;
}

CliqueDesign clique_partition(size_t n, size_t k) {
  require(k >= 2, "clique_partition: k must be >= 2");
  require(n / k >= k, "clique_partition: floor(n/k) must be >= k");
  CliqueDesign d;
  d.n = n;
  d.k = k;
  d.m = largest_prime_leq(n / k);
  require(d.m >= k, "clique_partition: largest prime <= floor(n/k) is " +
                        std::to_string(d.m) + ", below k");
  d.kind = DesignKind::kTransversal;
  const size_t m = d.m;
  d.blocks.reserve(m * m);
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = 0; b < m; ++b) {
      std::vector<size_t> block(k);
      for (size_t i = 0; i < k; ++i) block[i] = i * m + (a * i + b) % m;
      d.blocks.push_back(std::move(block));
    }
  }
  return d;
}

CliqueDesign make_ppc_design(size_t n, size_t k) {
  require(k >= 2 && k <= n, "make_ppc_design: need 2 <= k <= n");
  if (transversal_feasible(n, k)) return clique_partition(n, k);
  CliqueDesign d;
  d.n = n;
  d.k = k;
  d.m = n / k;
  d.kind = DesignKind::kDisjoint;
  for (size_t b = 0; b < d.m; ++b) {
    std::vector<size_t> block(k);
    for (size_t i = 0; i < k; ++i) block[i] = b * k + i;
    d.blocks.push_back(std::move(block));
  }
  return d;
}

size_t BicliqueDesign::full_blocks() const {
  return static_cast<size_t>(std::count_if(
      blocks.begin(), blocks.end(),
      [&](const BicliqueBlock& b) { return b.rows() == r && b.cols() == s; }));
}

BicliqueDesign biclique_partition(size_t n, size_t r, size_t s) {
  require(r >= 1 && s >= 1 && r <= n && s <= n,
          "biclique_partition: need 1 <= r, s <= n");
  BicliqueDesign d;
  d.n = n;
  d.r = r;
  d.s = s;
  for (size_t rb = 0; rb < n; rb += r) {
    for (size_t cb = 0; cb < n; cb += s) {
      d.blocks.push_back({rb, std::min(n, rb + r), cb, std::min(n, cb + s)});
    }
  }
  return d;
}

std::vector<int32_t> pair_owner(const CliqueDesign& d) {
  std::vector<int32_t> owner(d.n * (d.n - 1) / 2, -1);
  for (size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& blk = d.blocks[b];
    for (size_t x = 0; x < blk.size(); ++x) {
      for (size_t y = x + 1; y < blk.size(); ++y) {
        int32_t& o = owner[pair_index(blk[x], blk[y], d.n)];
        if (o >= 0) {
          throw ContractError("pair (" + std::to_string(blk[x]) + "," +
                              std::to_string(blk[y]) + ") lies in blocks " +
                              std::to_string(o) + " and " + std::to_string(b));
        }
        o = static_cast<int32_t>(b);
      }
    }
  }
  return owner;
}

size_t covered_pairs(const CliqueDesign& d) {
  const auto owner = pair_owner(d);
  return static_cast<size_t>(
      std::count_if(owner.begin(), owner.end(), [](int32_t o) { return o >= 0; }));
}

DesignCheck check_design(const CliqueDesign& d) {
  DesignCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.message = std::move(msg);
    return out;
  };
  if (d.n < 2 || d.k < 2) return fail("design needs n >= 2 and k >= 2");
  for (size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& blk = d.blocks[b];
    if (blk.size() != d.k) {
      return fail("block " + std::to_string(b) + " has size " +
                  std::to_string(blk.size()) + ", expected " + std::to_string(d.k));
    }
    std::set<size_t> seen;
    for (size_t v : blk) {
      if (v >= d.n) {
        return fail("block " + std::to_string(b) + " has vertex " +
                    std::to_string(v) + " out of range");
      }
      if (!seen.insert(v).second) {
        return fail("block " + std::to_string(b) + " repeats vertex " +
                    std::to_string(v));
      }
    }
  }
  std::vector<int32_t> owner(d.n * (d.n - 1) / 2, -1);
  for (size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& blk = d.blocks[b];
    for (size_t x = 0; x < blk.size(); ++x) {
      for (size_t y = x + 1; y < blk.size(); ++y) {
        int32_t& o = owner[pair_index(blk[x], blk[y], d.n)];
        if (o >= 0) {
          const auto& other = d.blocks[static_cast<size_t>(o)];
          std::set<size_t> a(other.begin(), other.end());
          for (size_t v : blk) {
            if (a.count(v)) out.shared.push_back(v);
          }
          out.block_a = static_cast<size_t>(o);
          out.block_b = b;
          std::string msg = "blocks " + std::to_string(o) + " and " +
                            std::to_string(b) + " share vertices";
          for (size_t v : out.shared) msg += " " + std::to_string(v);
          out.ok = false;
          out.message = msg;
          return out;
        }
        o = static_cast<int32_t>(b);
      }
    }
  }
  out.message = "ok";
  return out;
}

std::string design_to_json(const CliqueDesign& d) {
  nlohmann::json j;
  j["n"] = d.n;
  j["k"] = d.k;
  j["m"] = d.m;
  j["kind"] = d.kind == DesignKind::kTransversal ? "transversal" : "disjoint";
  j["blocks"] = d.blocks;
  return j.dump();
}

CliqueDesign design_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("design json: ") + e.what());
  }
  CliqueDesign d;
  try {
    d.n = j.at("n").get<size_t>();
    d.k = j.at("k").get<size_t>();
    d.m = j.value("m", size_t{0});
    d.kind = j.value("kind", std::string("transversal")) == "disjoint"
                 ? DesignKind::kDisjoint
                 : DesignKind::kTransversal;
    d.blocks = j.at("blocks").get<std::vector<std::vector<size_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("design json: ") + e.what());
  }
  return d;
}

}  // namespace plab
