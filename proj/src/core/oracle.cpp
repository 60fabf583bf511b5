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

#include "core/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace plab {

namespace {

constexpr const char* kModelNames[kModelCount] = {"edge-probe", "mv", "utmv",
                                                  "sketch", "f2-sketch"};

class Digest {
 public:
  void mix(uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (x >> (8 * i)) & 0xffu;
      h_ *= 0x100000001b3ULL;
    }
  }
  template <class T>
  void vec(std::span<const T> v) {
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] != T{}) {
        mix(i);
        if constexpr (std::is_same_v<T, double>) {
          mix(std::bit_cast<uint64_t>(v[i]));
        } else {
          mix(static_cast<uint64_t>(v[i]));
        }
      }
    }
    mix(~uint64_t{0});
  }
  uint64_t value() const { return h_; }

 private:
  uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string real_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class Fn>
decltype(auto) visit_integral(const HiddenMatrix& h, Fn&& fn) {
  if (const auto* b = std::get_if<BitMatrix>(&h)) return fn(*b);
  if (const auto* m = std::get_if<IntMatrix>(&h)) return fn(*m);
  throw CapabilityError("exact query on a real-valued hidden matrix; use the real variant");
}

inline int64_t entry(const BitMatrix& m, size_t i, size_t j) { return m.get(i, j) ? 1 : 0; }
inline int64_t entry(const IntMatrix& m, size_t i, size_t j) { return m(i, j); }
inline double real_entry(const HiddenMatrix& h, size_t i, size_t j) {
  switch (h.index()) {
    case 0: return std::get<0>(h).get(i, j) ? 1.0 : 0.0;
    case 1: return static_cast<double>(std::get<1>(h)(i, j));
    default: return std::get<2>(h)(i, j);
  }
}

// Row-times-vector over the nonzero structure of a bit row.
Wide bit_row_dot(const BitMatrix& m, size_t i, std::span<const int64_t> v) {
  Wide s = 0;
  const uint64_t* row = m.row(i);
  for (size_t w = 0; w < m.stride(); ++w) {
    uint64_t bits = row[w];
    while (bits) {
      s += v[w * 64 + static_cast<size_t>(std::countr_zero(bits))];
      bits &= bits - 1;
    }
  }
  return s;
}

Wide int_row_dot(const IntMatrix& m, size_t i, std::span<const int64_t> v) {
  Wide s = 0;
  auto r = m.row(i);
  for (size_t j = 0; j < r.size(); ++j) {
    if (r[j] != 0 && v[j] != 0) s = checked_add(s, static_cast<Wide>(r[j]) * v[j]);
  }
  return s;
}

}  // namespace

const char* model_name(Model m) { return kModelNames[static_cast<size_t>(m)]; }

Model model_from_name(const std::string& name) {
  for (size_t i = 0; i < kModelCount; ++i) {
    if (name == kModelNames[i]) return static_cast<Model>(i);
  }
  if (name == "edge") return Model::kEdgeProbe;
  throw ParameterError("unknown query model '" + name + "'");
}

uint64_t QueryCounts::total() const {
  uint64_t t = 0;
  for (uint64_t c : by_model) t += c;
  return t;
}

QueryCounts QueryCounts::operator-(const QueryCounts& o) const {
  QueryCounts out;
  for (size_t i = 0; i < kModelCount; ++i) out.by_model[i] = by_model[i] - o.by_model[i];
  return out;
}

Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit accumulation overflow");
  return r;
}

Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit product overflow");
  return r;
}

int64_t narrow_int64(Wide x) {
  if (x > INT64_MAX || x < INT64_MIN) throw OverflowError("value does not fit in int64");
  return static_cast<int64_t>(x);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

Wide Oracle::sketch_sparse(const SparseQuery& q) {
  require(q.index.size() == q.weight.size(), "sparse query: index/weight length mismatch");
  std::vector<int64_t> dense(rows() * cols(), 0);
  for (size_t i = 0; i < q.index.size(); ++i) {
    require(q.index[i] < dense.size(), "sparse query: index out of range");
    dense[q.index[i]] += q.weight[i];
  }
  return sketch(dense);
}

OracleSession::OracleSession(HiddenMatrix hidden, int bound_exponent)
    : hidden_(std::move(hidden)) {
  require(bound_exponent >= 1, "oracle: bound exponent must be >= 1");
  const double n = static_cast<double>(std::max<size_t>(2, std::max(rows(), cols())));
  const double lg = static_cast<double>(bound_exponent) * std::log2(n);
  entry_bound_ = lg >= 62.0 ? (uint64_t{1} << 62)
                            : static_cast<uint64_t>(std::floor(std::pow(n, bound_exponent)));
}

size_t OracleSession::rows() const {
  return std::visit([](const auto& m) { return m.rows(); }, hidden_);
}
size_t OracleSession::cols() const {
  return std::visit([](const auto& m) { return m.cols(); }, hidden_);
}
bool OracleSession::integral() const { return hidden_.index() != 2; }

void OracleSession::admit(Model m) {
  if (budget_ && counts_.total() >= *budget_) {
    throw BudgetError("query budget of " + std::to_string(*budget_) + " exhausted");
  }
  ++counts_.by_model[static_cast<size_t>(m)];
}

void OracleSession::record(Model m, uint64_t digest, std::string answer) {
  if (transcript_on_) transcript_.push_back({m, digest, std::move(answer)});
}

void OracleSession::check_int(std::span<const int64_t> v, size_t len,
                              const char* what) const {
  if (v.size() != len) {
    throw ParameterError(std::string(what) + ": query length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(len));
  }
  for (int64_t x : v) {
    const uint64_t mag = x < 0 ? static_cast<uint64_t>(-(x + 1)) + 1 : static_cast<uint64_t>(x);
    if (mag > entry_bound_) {
      throw ParameterError(std::string(what) + ": query entry exceeds the bound " +
                           std::to_string(entry_bound_));
    }
  }
}

void OracleSession::check_real(std::span<const double> v, size_t len,
                               const char* what) const {
  if (v.size() != len) {
    throw ParameterError(std::string(what) + ": query length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(len));
  }
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > static_cast<double>(entry_bound_)) {
      throw ParameterError(std::string(what) + ": query entry not finite or exceeds the bound");
    }
  }
}

double OracleSession::edge_probe(size_t i, size_t j) {
  require(i < rows() && j < cols(), "edge_probe: index out of range");
  admit(Model::kEdgeProbe);
  const double a = real_entry(hidden_, i, j);
  if (transcript_on_) {
    Digest d;
    d.mix(i);
    d.mix(j);
    record(Model::kEdgeProbe, d.value(), real_string(a));
  }
  return a;
}

std::vector<Wide> OracleSession::mv(std::span<const int64_t> v) {
  check_int(v, cols(), "mv");
  if (!integral()) throw CapabilityError("exact mv on a real-valued hidden matrix");
  admit(Model::kMv);
  std::vector<Wide> out(rows());
  visit_integral(hidden_, [&](const auto& m) {
    for (size_t i = 0; i < m.rows(); ++i) {
      if constexpr (std::is_same_v<std::decay_t<decltype(m)>, BitMatrix>) {
        out[i] = bit_row_dot(m, i, v);
      } else {
        out[i] = int_row_dot(m, i, v);
      }
    }
    return 0;
  });
  if (transcript_on_) {
    Digest d;
    d.vec(v);
    Digest a;
    for (Wide x : out) {
      a.mix(static_cast<uint64_t>(x));
      a.mix(static_cast<uint64_t>(x >> 64));
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "digest:%016llx", static_cast<unsigned long long>(a.value()));
    record(Model::kMv, d.value(), buf);
  }
  return out;
}

std::vector<double> OracleSession::mv_real(std::span<const double> v) {
  check_real(v, cols(), "mv");
  admit(Model::kMv);
  std::vector<double> out(rows());
  for (size_t i = 0; i < rows(); ++i) {
    CompensatedSum s;
    for (size_t j = 0; j < cols(); ++j) {
      if (v[j] != 0.0) s.add(real_entry(hidden_, i, j) * v[j]);
    }
    out[i] = s.value();
  }
  if (transcript_on_) {
    Digest d;
    d.vec(v);
    Digest a;
    for (double x : out) a.mix(std::bit_cast<uint64_t>(x));
    char buf[24];
    std::snprintf(buf, sizeof buf, "digest:%016llx", static_cast<unsigned long long>(a.value()));
    record(Model::kMv, d.value(), buf);
  }
  return out;
}

Wide OracleSession::utmv(std::span<const int64_t> u, std::span<const int64_t> v) {
  check_int(u, rows(), "utmv");
  check_int(v, cols(), "utmv");
  if (!integral()) throw CapabilityError("exact utmv on a real-valued hidden matrix");
  admit(Model::kUtMv);
  Wide total = visit_integral(hidden_, [&](const auto& m) {
    Wide t = 0;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (u[i] == 0) continue;
      Wide s;
      if constexpr (std::is_same_v<std::decay_t<decltype(m)>, BitMatrix>) {
        s = bit_row_dot(m, i, v);
      } else {
        s = int_row_dot(m, i, v);
      }
      t = checked_add(t, checked_mul(u[i], s));
    }
    return t;
  });
  if (transcript_on_) {
    Digest d;
    d.vec(u);
    d.vec(v);
    record(Model::kUtMv, d.value(), wide_to_string(total));
  }
  return total;
}

double OracleSession::utmv_real(std::span<const double> u, std::span<const double> v) {
  check_real(u, rows(), "utmv");
  check_real(v, cols(), "utmv");
  admit(Model::kUtMv);
  CompensatedSum s;
  for (size_t i = 0; i < rows(); ++i) {
    if (u[i] == 0.0) continue;
    for (size_t j = 0; j < cols(); ++j) {
      if (v[j] != 0.0) s.add(u[i] * real_entry(hidden_, i, j) * v[j]);
    }
  }
  const double total = s.value();
  if (transcript_on_) {
    Digest d;
    d.vec(u);
    d.vec(v);
    record(Model::kUtMv, d.value(), real_string(total));
  }
  return total;
}

Wide OracleSession::sketch(std::span<const int64_t> w) {
  check_int(w, rows() * cols(), "sketch");
  if (!integral()) throw CapabilityError("exact sketch on a real-valued hidden matrix");
  admit(Model::kSketch);
  const size_t c = cols();
  Wide total = visit_integral(hidden_, [&](const auto& m) {
    Wide t = 0;
    for (size_t idx = 0; idx < w.size(); ++idx) {
      if (w[idx] == 0) continue;
      const int64_t a = entry(m, idx / c, idx % c);
      if (a != 0) t = checked_add(t, static_cast<Wide>(a) * w[idx]);
    }
    return t;
  });
  if (transcript_on_) {
    Digest d;
    d.vec(w);
    record(Model::kSketch, d.value(), wide_to_string(total));
  }
  return total;
}

Wide OracleSession::sketch_sparse(const SparseQuery& q) {
  require(q.index.size() == q.weight.size(), "sparse query: index/weight length mismatch");
  if (!integral()) throw CapabilityError("exact sketch on a real-valued hidden matrix");
  const size_t c = cols();
  const size_t len = rows() * c;
  for (size_t i = 0; i < q.index.size(); ++i) {
    require(q.index[i] < len, "sparse query: index out of range");
  }
  check_int(q.weight, q.weight.size(), "sketch");
  admit(Model::kSketch);
  Wide total = visit_integral(hidden_, [&](const auto& m) {
    Wide t = 0;
    for (size_t i = 0; i < q.index.size(); ++i) {
      const int64_t a = entry(m, q.index[i] / c, q.index[i] % c);
      if (a != 0) t = checked_add(t, static_cast<Wide>(a) * q.weight[i]);
    }
    return t;
  });
  if (transcript_on_) {
    Digest d;
    for (size_t i = 0; i < q.index.size(); ++i) {
      if (q.weight[i] != 0) {
        d.mix(q.index[i]);
        d.mix(static_cast<uint64_t>(q.weight[i]));
      }
    }
    d.mix(~uint64_t{0});
    record(Model::kSketch, d.value(), wide_to_string(total));
  }
  return total;
}

double OracleSession::sketch_real(std::span<const double> w) {
  check_real(w, rows() * cols(), "sketch");
  admit(Model::kSketch);
  const size_t c = cols();
  CompensatedSum s;
  for (size_t idx = 0; idx < w.size(); ++idx) {
    if (w[idx] != 0.0) s.add(w[idx] * real_entry(hidden_, idx / c, idx % c));
  }
  const double total = s.value();
  if (transcript_on_) {
    Digest d;
    d.vec(w);
    record(Model::kSketch, d.value(), real_string(total));
  }
  return total;
}

int OracleSession::f2_sketch(std::span<const uint8_t> w) {
  require(w.size() == rows() * cols(), "f2_sketch: query length must be rows*cols");
  for (uint8_t b : w) require(b <= 1, "f2_sketch: query entries must be bits");
  if (!integral()) throw CapabilityError("f2_sketch on a real-valued hidden matrix");
  admit(Model::kF2Sketch);
  const size_t c = cols();
  int parity = visit_integral(hidden_, [&](const auto& m) {
    int p = 0;
    for (size_t idx = 0; idx < w.size(); ++idx) {
      if (w[idx]) p ^= static_cast<int>(entry(m, idx / c, idx % c) & 1);
    }
    return p;
  });
  if (transcript_on_) {
    Digest d;
    d.vec(w);
    record(Model::kF2Sketch, d.value(), parity ? "1" : "0");
  }
  return parity;
}

std::string OracleSession::transcript_jsonl() const {
  std::string out;
  for (const auto& r : transcript_) {
    nlohmann::ordered_json j;
    j["model"] = model_name(r.model);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(r.digest));
    j["digest"] = buf;
    j["answer"] = r.answer;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace plab
