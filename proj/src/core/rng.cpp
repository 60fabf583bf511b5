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

#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace plab {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed Seed::derive(std::string_view label) const {
  // FNV-1a of the label, mixed with the parent value.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Seed(splitmix64(value_ ^ splitmix64(h)));
}

Seed Seed::child(uint64_t index) const {
  return Seed(splitmix64(splitmix64(value_) + 0x632be59bd9b4e019ULL * (index + 1)));
}

uint64_t Rng::below(uint64_t n) {
  // Rejection on the top of the range keeps the result unbiased.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

bool Rng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  if (p == 0.5) return bit();
  return uniform01() < p;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::vector<size_t> Rng::permutation(size_t n) {
  std::vector<size_t> p(n);
  std::iota(p.begin(), p.end(), size_t{0});
  shuffle(p);
  return p;
}

std::vector<size_t> Rng::subset(size_t n, size_t k) {
  std::vector<size_t> out;
  out.reserve(k);
  if (2 * k >= n) {
    std::vector<size_t> p = permutation(n);
    out.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    // Floyd's algorithm.
    std::unordered_set<size_t> chosen;
    for (size_t j = n - k; j < n; ++j) {
      size_t t = static_cast<size_t>(below(j + 1));
      if (!chosen.insert(t).second) {
        chosen.insert(j);
        out.push_back(j);
      } else {
        out.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plab
