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

#ifndef PLAB_CORE_RNG_HPP_
#define PLAB_CORE_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace plab {

// 64-bit seed with labelled derivation. Sub-seeds for public and private
// randomness are derived by label so that adding a new consumer never shifts
// an existing stream.
class Seed {
 public:
  constexpr Seed() = default;
  constexpr explicit Seed(uint64_t value) : value_(value) {}

  uint64_t value() const { return value_; }
  Seed derive(std::string_view label) const;
  Seed child(uint64_t index) const;

  Seed public_coins() const { return derive("public"); }
  Seed private_coins() const { return derive("private"); }

  friend bool operator==(Seed a, Seed b) { return a.value_ == b.value_; }

 private:
  uint64_t value_ = 0;
};

uint64_t splitmix64(uint64_t x);

// Deterministic generator. All sampling routines are implemented here rather
// than through <random> distributions so streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(splitmix64(seed.value())) {}

  uint64_t next() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  uint64_t below(uint64_t n);
  bool bit() { return (next() >> 63) != 0; }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p);
  double gaussian();

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::vector<size_t> permutation(size_t n);
  // Uniform k-subset of [0, n), sorted ascending.
  std::vector<size_t> subset(size_t n, size_t k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace plab

#endif  // PLAB_CORE_RNG_HPP_
