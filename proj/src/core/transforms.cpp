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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace plab {

namespace {

struct ExactNum {
  using Q = int64_t;
  using Acc = Wide;
  static Q konst(double x) {
    if (!std::isfinite(x) || x != std::floor(x) || std::abs(x) > 0x1.0p62) {
      throw CapabilityError("non-integral transform constant in an exact query rewrite");
    }
    return static_cast<Q>(x);
  }
  static Q mul(Q a, Q b) { return narrow_int64(checked_mul(a, b)); }
  static Q add(Q a, Q b) { return narrow_int64(static_cast<Wide>(a) + b); }
  static Acc fma(Acc s, Acc a, Acc b) { return checked_add(s, checked_mul(a, b)); }
};

struct RealNum {
  using Q = double;
  using Acc = double;
  static Q konst(double x) { return x; }
  static Q mul(Q a, Q b) { return a * b; }
  static Q add(Q a, Q b) { return a + b; }
  static Acc fma(Acc s, Acc a, Acc b) { return s + a * b; }
};

std::vector<size_t> inverse(const std::vector<size_t>& perm) {
  std::vector<size_t> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

bool is_permutation(const std::vector<size_t>& p, size_t n) {
  if (p.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (size_t x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

bool is_selection(const std::vector<size_t>& keep, size_t n) {
  std::vector<char> seen(n, 0);
  for (size_t x : keep) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

template <class T, class Konst>
DenseMatrix<T> apply_ops(const TransformStack& s, DenseMatrix<T> m, Konst konst) {
  for (const auto& opv : s.ops()) {
    const size_t r = m.rows(), c = m.cols();
    if (const auto* op = std::get_if<InsertRow>(&opv)) {
      DenseMatrix<T> out(r + 1, c);
      for (size_t i = 0, src = 0; i <= r; ++i) {
        for (size_t j = 0; j < c; ++j) {
          out(i, j) = i == op->pos ? konst(op->values[j]) : m(src, j);
        }
        if (i != op->pos) ++src;
      }
      m = std::move(out);
    } else if (const auto* op = std::get_if<InsertCol>(&opv)) {
      DenseMatrix<T> out(r, c + 1);
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0, src = 0; j <= c; ++j) {
          if (j == op->pos) {
            out(i, j) = konst(op->values[i]);
          } else {
            out(i, j) = m(i, src++);
          }
        }
      }
      m = std::move(out);
    } else if (const auto* op = std::get_if<PermuteRows>(&opv)) {
      DenseMatrix<T> out(r, c);
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < c; ++j) out(op->perm[i], j) = m(i, j);
      }
      m = std::move(out);
    } else if (const auto* op = std::get_if<PermuteCols>(&opv)) {
      DenseMatrix<T> out(r, c);
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < c; ++j) out(i, op->perm[j]) = m(i, j);
      }
      m = std::move(out);
    } else if (const auto* op = std::get_if<AffineRow>(&opv)) {
      const T a = konst(op->a), b = konst(op->b);
      for (size_t j = 0; j < c; ++j) m(op->index, j) = a * m(op->index, j) + b;
    } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
      const T a = konst(op->a), b = konst(op->b);
      for (size_t i = 0; i < r; ++i) m(i, op->index) = a * m(i, op->index) + b;
    } else if (const auto* op = std::get_if<SelectRows>(&opv)) {
      DenseMatrix<T> out(op->keep.size(), c);
      for (size_t i = 0; i < op->keep.size(); ++i) {
        for (size_t j = 0; j < c; ++j) out(i, j) = m(op->keep[i], j);
      }
      m = std::move(out);
    } else if (const auto* op = std::get_if<SelectCols>(&opv)) {
      DenseMatrix<T> out(r, op->keep.size());
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < op->keep.size(); ++j) out(i, j) = m(i, op->keep[j]);
      }
      m = std::move(out);
    }
  }
  return m;
}

// Walks the stack backwards, turning a sketch over X into one over Y.
template <class N>
void sketch_back(const TransformStack& s, std::vector<typename N::Q>& w,
                 typename N::Acc& offset) {
  using Q = typename N::Q;
  for (size_t k = s.ops().size(); k-- > 0;) {
    const auto& opv = s.ops()[k];
    const auto [r0, c0] = s.dims_before(k);
    const auto [r1, c1] = s.dims_before(k + 1);
    std::vector<Q> out;
    if (const auto* op = std::get_if<InsertRow>(&opv)) {
      out.reserve(r0 * c0);
      for (size_t i = 0; i < r1; ++i) {
        for (size_t j = 0; j < c1; ++j) {
          const Q x = w[i * c1 + j];
          if (i == op->pos) {
            if (x != Q{}) offset = N::fma(offset, x, N::konst(op->values[j]));
          } else {
            out.push_back(x);
          }
        }
      }
    } else if (const auto* op = std::get_if<InsertCol>(&opv)) {
      out.reserve(r0 * c0);
      for (size_t i = 0; i < r1; ++i) {
        for (size_t j = 0; j < c1; ++j) {
          const Q x = w[i * c1 + j];
          if (j == op->pos) {
            if (x != Q{}) offset = N::fma(offset, x, N::konst(op->values[i]));
          } else {
            out.push_back(x);
          }
        }
      }
    } else if (const auto* op = std::get_if<PermuteRows>(&opv)) {
      out.resize(r0 * c0);
      for (size_t i = 0; i < r0; ++i) {
        for (size_t j = 0; j < c0; ++j) out[i * c0 + j] = w[op->perm[i] * c1 + j];
      }
    } else if (const auto* op = std::get_if<PermuteCols>(&opv)) {
      out.resize(r0 * c0);
      for (size_t i = 0; i < r0; ++i) {
        for (size_t j = 0; j < c0; ++j) out[i * c0 + j] = w[i * c1 + op->perm[j]];
      }
    } else if (const auto* op = std::get_if<AffineRow>(&opv)) {
      const Q a = N::konst(op->a), b = N::konst(op->b);
      for (size_t j = 0; j < c1; ++j) {
        Q& x = w[op->index * c1 + j];
        if (x == Q{}) continue;
        offset = N::fma(offset, x, b);
        x = N::mul(x, a);
      }
      continue;
    } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
      const Q a = N::konst(op->a), b = N::konst(op->b);
      for (size_t i = 0; i < r1; ++i) {
        Q& x = w[i * c1 + op->index];
        if (x == Q{}) continue;
        offset = N::fma(offset, x, b);
        x = N::mul(x, a);
      }
      continue;
    } else if (const auto* op = std::get_if<SelectRows>(&opv)) {
      out.assign(r0 * c0, Q{});
      for (size_t i = 0; i < r1; ++i) {
        for (size_t j = 0; j < c1; ++j) out[op->keep[i] * c0 + j] = w[i * c1 + j];
      }
    } else if (const auto* op = std::get_if<SelectCols>(&opv)) {
      out.assign(r0 * c0, Q{});
      for (size_t i = 0; i < r1; ++i) {
        for (size_t j = 0; j < c1; ++j) out[i * c0 + op->keep[j]] = w[i * c1 + j];
      }
    }
    w = std::move(out);
  }
}

// Backward walk for Mv: v is rewritten in place, the recipe maps each X row
// to a row of the current matrix.
template <class N>
struct MvState {
  std::vector<typename N::Q> v;
  std::vector<int64_t> source;
  std::vector<typename N::Q> scale;
  std::vector<typename N::Acc> add;
};

template <class N>
MvState<N> mv_back(const TransformStack& s, std::span<const typename N::Q> v_in) {
  using Q = typename N::Q;
  using Acc = typename N::Acc;
  MvState<N> st;
  st.v.assign(v_in.begin(), v_in.end());
  const size_t xr = s.rows();
  st.source.resize(xr);
  std::iota(st.source.begin(), st.source.end(), int64_t{0});
  st.scale.assign(xr, Q{1});
  st.add.assign(xr, Acc{});
  for (size_t k = s.ops().size(); k-- > 0;) {
    const auto& opv = s.ops()[k];
    const auto [r0, c0] = s.dims_before(k);
    const auto [r1, c1] = s.dims_before(k + 1);
    (void)r1;
    if (const auto* op = std::get_if<InsertCol>(&opv)) {
      const Q vp = st.v[op->pos];
      if (vp != Q{}) {
        for (size_t r = 0; r < xr; ++r) {
          if (st.source[r] < 0) continue;
          const Q col = N::konst(op->values[static_cast<size_t>(st.source[r])]);
          st.add[r] = N::fma(st.add[r], st.scale[r], N::mul(col, vp));
        }
      }
      st.v.erase(st.v.begin() + static_cast<std::ptrdiff_t>(op->pos));
    } else if (const auto* op = std::get_if<PermuteCols>(&opv)) {
      std::vector<Q> nv(c0);
      for (size_t c = 0; c < c0; ++c) nv[c] = st.v[op->perm[c]];
      st.v = std::move(nv);
    } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
      const Q a = N::konst(op->a), b = N::konst(op->b);
      const Q vc = st.v[op->index];
      if (vc != Q{} && b != Q{}) {
        const Q shift = N::mul(b, vc);
        for (size_t r = 0; r < xr; ++r) {
          if (st.source[r] >= 0) st.add[r] = N::fma(st.add[r], st.scale[r], shift);
        }
      }
      st.v[op->index] = N::mul(vc, a);
    } else if (const auto* op = std::get_if<SelectCols>(&opv)) {
      std::vector<Q> nv(c0, Q{});
      for (size_t j = 0; j < c1; ++j) nv[op->keep[j]] = st.v[j];
      st.v = std::move(nv);
    } else if (const auto* op = std::get_if<InsertRow>(&opv)) {
      Acc dot{};
      bool dot_ready = false;
      for (size_t r = 0; r < xr; ++r) {
        int64_t& src = st.source[r];
        if (src < 0) continue;
        if (static_cast<size_t>(src) == op->pos) {
          if (!dot_ready) {
            for (size_t j = 0; j < c1; ++j) {
              if (st.v[j] != Q{}) dot = N::fma(dot, N::konst(op->values[j]), st.v[j]);
            }
            dot_ready = true;
          }
          st.add[r] = N::fma(st.add[r], st.scale[r], dot);
          src = -1;
        } else if (static_cast<size_t>(src) > op->pos) {
          --src;
        }
      }
    } else if (const auto* op = std::get_if<PermuteRows>(&opv)) {
      const auto inv = inverse(op->perm);
      for (int64_t& src : st.source) {
        if (src >= 0) src = static_cast<int64_t>(inv[static_cast<size_t>(src)]);
      }
    } else if (const auto* op = std::get_if<AffineRow>(&opv)) {
      const Q a = N::konst(op->a), b = N::konst(op->b);
      Acc vsum{};
      if (b != Q{}) {
        for (const Q& x : st.v) vsum = N::fma(vsum, x, Q{1});
      }
      for (size_t r = 0; r < xr; ++r) {
        if (st.source[r] != static_cast<int64_t>(op->index)) continue;
        if (b != Q{}) st.add[r] = N::fma(st.add[r], N::mul(st.scale[r], b), vsum);
        st.scale[r] = N::mul(st.scale[r], a);
      }
    } else if (const auto* op = std::get_if<SelectRows>(&opv)) {
      for (int64_t& src : st.source) {
        if (src >= 0) src = static_cast<int64_t>(op->keep[static_cast<size_t>(src)]);
      }
    }
    (void)r0;
  }
  return st;
}

template <class N>
bool any_source(const MvState<N>& st) {
  for (size_t r = 0; r < st.source.size(); ++r) {
    if (st.source[r] >= 0 && st.scale[r] != typename N::Q{}) return true;
  }
  return false;
}

void check_len(size_t got, size_t want, const char* what) {
  if (got != want) {
    throw ParameterError(std::string(what) + ": query length " + std::to_string(got) +
                         ", expected " + std::to_string(want));
  }
}

}  // namespace

TransformStack::TransformStack(size_t source_rows, size_t source_cols) {
  dims_.push_back({source_rows, source_cols});
}

void TransformStack::push(TransformOp opv) {
  auto [r, c] = dims_.back();
  if (const auto* op = std::get_if<InsertRow>(&opv)) {
    require(op->pos <= r && op->values.size() == c, "InsertRow: bad position or row length");
    ++r;
  } else if (const auto* op = std::get_if<InsertCol>(&opv)) {
    require(op->pos <= c && op->values.size() == r, "InsertCol: bad position or column length");
    ++c;
  } else if (const auto* op = std::get_if<PermuteRows>(&opv)) {
    require(is_permutation(op->perm, r), "PermuteRows: not a permutation of the rows");
  } else if (const auto* op = std::get_if<PermuteCols>(&opv)) {
    require(is_permutation(op->perm, c), "PermuteCols: not a permutation of the columns");
  } else if (const auto* op = std::get_if<AffineRow>(&opv)) {
    require(op->index < r && std::isfinite(op->a) && std::isfinite(op->b),
            "AffineRow: bad row or non-finite constants");
  } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
    require(op->index < c && std::isfinite(op->a) && std::isfinite(op->b),
            "AffineCol: bad column or non-finite constants");
  } else if (const auto* op = std::get_if<SelectRows>(&opv)) {
    require(is_selection(op->keep, r), "SelectRows: indices must be distinct and in range");
    r = op->keep.size();
  } else if (const auto* op = std::get_if<SelectCols>(&opv)) {
    require(is_selection(op->keep, c), "SelectCols: indices must be distinct and in range");
    c = op->keep.size();
  }
  ops_.push_back(std::move(opv));
  dims_.push_back({r, c});
}

bool TransformStack::integral() const {
  auto whole = [](double x) { return std::isfinite(x) && x == std::floor(x); };
  for (const auto& opv : ops_) {
    if (const auto* op = std::get_if<InsertRow>(&opv)) {
      for (double x : op->values) {
        if (!whole(x)) return false;
      }
    } else if (const auto* op = std::get_if<InsertCol>(&opv)) {
      for (double x : op->values) {
        if (!whole(x)) return false;
      }
    } else if (const auto* op = std::get_if<AffineRow>(&opv)) {
      if (!whole(op->a) || !whole(op->b)) return false;
    } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
      if (!whole(op->a) || !whole(op->b)) return false;
    }
  }
  return true;
}

TransformStack TransformStack::then(const TransformStack& next) const {
  require(next.source_rows() == rows() && next.source_cols() == cols(),
          "TransformStack::then: dims do not chain");
  TransformStack out = *this;
  for (const auto& op : next.ops()) out.push(op);
  return out;
}

IntMatrix materialize(const TransformStack& s, const IntMatrix& y) {
  require(y.rows() == s.source_rows() && y.cols() == s.source_cols(),
          "materialize: source dims mismatch");
  return apply_ops(s, y, [](double x) { return ExactNum::konst(x); });
}

IntMatrix materialize(const TransformStack& s, const BitMatrix& y) {
  return materialize(s, to_int(y));
}

RealMatrix materialize(const TransformStack& s, const RealMatrix& y) {
  require(y.rows() == s.source_rows() && y.cols() == s.source_cols(),
          "materialize: source dims mismatch");
  return apply_ops(s, y, [](double x) { return x; });
}

ProbeRewrite rewrite_edge_probe(const TransformStack& s, size_t i, size_t j) {
  require(i < s.rows() && j < s.cols(), "rewrite_edge_probe: index out of range");
  ProbeRewrite out;
  for (size_t k = s.ops().size(); k-- > 0;) {
    const auto& opv = s.ops()[k];
    if (const auto* op = std::get_if<InsertRow>(&opv)) {
      if (i == op->pos) {
        out.b += out.a * op->values[j];
        out.a = 0.0;
        return out;
      }
      if (i > op->pos) --i;
    } else if (const auto* op = std::get_if<InsertCol>(&opv)) {
      if (j == op->pos) {
        out.b += out.a * op->values[i];
        out.a = 0.0;
        return out;
      }
      if (j > op->pos) --j;
    } else if (const auto* op = std::get_if<PermuteRows>(&opv)) {
      i = static_cast<size_t>(std::find(op->perm.begin(), op->perm.end(), i) - op->perm.begin());
    } else if (const auto* op = std::get_if<PermuteCols>(&opv)) {
      j = static_cast<size_t>(std::find(op->perm.begin(), op->perm.end(), j) - op->perm.begin());
    } else if (const auto* op = std::get_if<AffineRow>(&opv)) {
      if (i == op->index) {
        out.b += out.a * op->b;
        out.a *= op->a;
      }
    } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
      if (j == op->index) {
        out.b += out.a * op->b;
        out.a *= op->a;
      }
    } else if (const auto* op = std::get_if<SelectRows>(&opv)) {
      i = op->keep[i];
    } else if (const auto* op = std::get_if<SelectCols>(&opv)) {
      j = op->keep[j];
    }
  }
  out.source = std::make_pair(i, j);
  return out;
}

SketchRewrite rewrite_sketch(const TransformStack& s, std::span<const int64_t> w) {
  check_len(w.size(), s.rows() * s.cols(), "rewrite_sketch");
  SketchRewrite out;
  out.w.assign(w.begin(), w.end());
  sketch_back<ExactNum>(s, out.w, out.offset);
  return out;
}

SketchRewriteReal rewrite_sketch(const TransformStack& s, std::span<const double> w) {
  check_len(w.size(), s.rows() * s.cols(), "rewrite_sketch");
  SketchRewriteReal out;
  out.w.assign(w.begin(), w.end());
  sketch_back<RealNum>(s, out.w, out.offset);
  return out;
}

F2Rewrite rewrite_f2_sketch(const TransformStack& s, std::span<const uint8_t> w) {
  check_len(w.size(), s.rows() * s.cols(), "rewrite_f2_sketch");
  for (const auto& opv : s.ops()) {
    auto bit_const = [](double x) { return x == 0.0 || x == 1.0; };
    if (const auto* op = std::get_if<AffineRow>(&opv)) {
      if (op->a != 1.0 || !bit_const(op->b)) {
        throw CapabilityError("f2 rewrite supports affine maps x -> x + b with b in {0,1} only");
      }
    } else if (const auto* op = std::get_if<AffineCol>(&opv)) {
      if (op->a != 1.0 || !bit_const(op->b)) {
        throw CapabilityError("f2 rewrite supports affine maps x -> x + b with b in {0,1} only");
      }
    } else if (const auto* op = std::get_if<InsertRow>(&opv)) {
      for (double x : op->values) {
        if (!bit_const(x)) throw CapabilityError("f2 rewrite needs 0/1 inserted values");
      }
    } else if (const auto* op = std::get_if<InsertCol>(&opv)) {
      for (double x : op->values) {
        if (!bit_const(x)) throw CapabilityError("f2 rewrite needs 0/1 inserted values");
      }
    }
  }
  // Over GF(2) with a = 1 the exact integer rewrite reduces mod 2.
  std::vector<int64_t> iw(w.begin(), w.end());
  Wide offset = 0;
  sketch_back<ExactNum>(s, iw, offset);
  F2Rewrite out;
  out.w.resize(iw.size());
  for (size_t i = 0; i < iw.size(); ++i) out.w[i] = static_cast<uint8_t>(iw[i] & 1);
  out.offset = static_cast<int>(offset & 1);
  return out;
}

MvRewrite rewrite_mv(const TransformStack& s, std::span<const int64_t> v) {
  check_len(v.size(), s.cols(), "rewrite_mv");
  auto st = mv_back<ExactNum>(s, v);
  MvRewrite out;
  out.needs_query = any_source(st);
  out.v = std::move(st.v);
  out.source = std::move(st.source);
  out.scale = std::move(st.scale);
  out.add = std::move(st.add);
  return out;
}

MvRewriteReal rewrite_mv(const TransformStack& s, std::span<const double> v) {
  check_len(v.size(), s.cols(), "rewrite_mv");
  auto st = mv_back<RealNum>(s, v);
  MvRewriteReal out;
  out.needs_query = any_source(st);
  out.v = std::move(st.v);
  out.source = std::move(st.source);
  out.scale = std::move(st.scale);
  out.add = std::move(st.add);
  return out;
}

UtMvRewrite rewrite_utmv(const TransformStack& s, std::span<const int64_t> u,
                         std::span<const int64_t> v) {
  check_len(u.size(), s.rows(), "rewrite_utmv");
  auto st = mv_back<ExactNum>(s, v);
  UtMvRewrite out;
  std::vector<Wide> uy(s.source_rows(), 0);
  for (size_t r = 0; r < u.size(); ++r) {
    if (u[r] == 0) continue;
    out.offset = checked_add(out.offset, checked_mul(u[r], st.add[r]));
    if (st.source[r] >= 0) {
      Wide& slot = uy[static_cast<size_t>(st.source[r])];
      slot = checked_add(slot, checked_mul(u[r], st.scale[r]));
    }
  }
  out.u.resize(uy.size());
  for (size_t i = 0; i < uy.size(); ++i) {
    out.u[i] = narrow_int64(uy[i]);
    if (out.u[i] != 0) out.needs_query = true;
  }
  out.v = std::move(st.v);
  return out;
}

UtMvRewriteReal rewrite_utmv(const TransformStack& s, std::span<const double> u,
                             std::span<const double> v) {
  check_len(u.size(), s.rows(), "rewrite_utmv");
  auto st = mv_back<RealNum>(s, v);
  UtMvRewriteReal out;
  out.u.assign(s.source_rows(), 0.0);
  for (size_t r = 0; r < u.size(); ++r) {
    if (u[r] == 0.0) continue;
    out.offset += u[r] * st.add[r];
    if (st.source[r] >= 0) out.u[static_cast<size_t>(st.source[r])] += u[r] * st.scale[r];
  }
  for (double x : out.u) {
    if (x != 0.0) out.needs_query = true;
  }
  out.v = std::move(st.v);
  return out;
}

SimulatedOracle::SimulatedOracle(Oracle& source, TransformStack stack)
    : source_(source), stack_(std::move(stack)) {
  require(source.rows() == stack_.source_rows() && source.cols() == stack_.source_cols(),
          "SimulatedOracle: source dims do not match the stack");
}

double SimulatedOracle::edge_probe(size_t i, size_t j) {
  const auto rw = rewrite_edge_probe(stack_, i, j);
  count(Model::kEdgeProbe);
  if (!rw.source) return rw.b;
  return rw.a * source_.edge_probe(rw.source->first, rw.source->second) + rw.b;
}

std::vector<Wide> SimulatedOracle::mv(std::span<const int64_t> v) {
  const auto rw = rewrite_mv(stack_, v);
  count(Model::kMv);
  std::vector<Wide> y;
  if (rw.needs_query) y = source_.mv(rw.v);
  std::vector<Wide> out(rw.source.size());
  for (size_t r = 0; r < out.size(); ++r) {
    out[r] = rw.add[r];
    if (rw.source[r] >= 0 && rw.needs_query) {
      out[r] = checked_add(out[r], checked_mul(rw.scale[r], y[static_cast<size_t>(rw.source[r])]));
    }
  }
  return out;
}

std::vector<double> SimulatedOracle::mv_real(std::span<const double> v) {
  const auto rw = rewrite_mv(stack_, v);
  count(Model::kMv);
  std::vector<double> y;
  if (rw.needs_query) y = source_.mv_real(rw.v);
  std::vector<double> out(rw.source.size());
  for (size_t r = 0; r < out.size(); ++r) {
    out[r] = rw.add[r];
    if (rw.source[r] >= 0 && rw.needs_query) {
      out[r] += rw.scale[r] * y[static_cast<size_t>(rw.source[r])];
    }
  }
  return out;
}

Wide SimulatedOracle::utmv(std::span<const int64_t> u, std::span<const int64_t> v) {
  const auto rw = rewrite_utmv(stack_, u, v);
  count(Model::kUtMv);
  Wide out = rw.offset;
  if (rw.needs_query) out = checked_add(out, source_.utmv(rw.u, rw.v));
  return out;
}

double SimulatedOracle::utmv_real(std::span<const double> u, std::span<const double> v) {
  const auto rw = rewrite_utmv(stack_, u, v);
  count(Model::kUtMv);
  double out = rw.offset;
  if (rw.needs_query) out += source_.utmv_real(rw.u, rw.v);
  return out;
}

Wide SimulatedOracle::sketch(std::span<const int64_t> w) {
  const auto rw = rewrite_sketch(stack_, w);
  count(Model::kSketch);
  return checked_add(rw.offset, source_.sketch(rw.w));
}

double SimulatedOracle::sketch_real(std::span<const double> w) {
  const auto rw = rewrite_sketch(stack_, w);
  count(Model::kSketch);
  return rw.offset + source_.sketch_real(rw.w);
}

int SimulatedOracle::f2_sketch(std::span<const uint8_t> w) {
  const auto rw = rewrite_f2_sketch(stack_, w);
  count(Model::kF2Sketch);
  return rw.offset ^ source_.f2_sketch(rw.w);
}

}  // namespace plab

namespace plab {

namespace {

double draw_const(Rng& rng, StackFlavor flavor, bool is_scale) {
  switch (flavor) {
    case StackFlavor::kInteger: {
      int64_t x = static_cast<int64_t>(rng.below(7)) - 3;
      if (is_scale && x == 0) x = 1;
      return static_cast<double>(x);
    }
    case StackFlavor::kReal:
      return 4.0 * rng.uniform01() - 2.0;
    case StackFlavor::kF2:
      return is_scale ? 1.0 : static_cast<double>(rng.bit());
  }
  return 0.0;
}

}  // namespace

TransformStack random_stack(size_t rows, size_t cols, size_t max_ops, Rng& rng,
                            StackFlavor flavor) {
  TransformStack s(rows, cols);
  const size_t ops = static_cast<size_t>(rng.below(max_ops + 1));
  for (size_t k = 0; k < ops; ++k) {
    const size_t r = s.rows(), c = s.cols();
    switch (rng.below(8)) {
      case 0: {
        std::vector<double> vals(c);
        for (double& x : vals) x = draw_const(rng, flavor, false);
        s.push(InsertRow{static_cast<size_t>(rng.below(r + 1)), std::move(vals)});
        break;
      }
      case 1: {
        std::vector<double> vals(r);
        for (double& x : vals) x = draw_const(rng, flavor, false);
        s.push(InsertCol{static_cast<size_t>(rng.below(c + 1)), std::move(vals)});
        break;
      }
      case 2:
        s.push(PermuteRows{rng.permutation(r)});
        break;
      case 3:
        s.push(PermuteCols{rng.permutation(c)});
        break;
      case 4:
        s.push(AffineRow{static_cast<size_t>(rng.below(r)), draw_const(rng, flavor, true),
                         draw_const(rng, flavor, false)});
        break;
      case 5:
        s.push(AffineCol{static_cast<size_t>(rng.below(c)), draw_const(rng, flavor, true),
                         draw_const(rng, flavor, false)});
        break;
      case 6: {
        auto keep = rng.permutation(r);
        keep.resize(1 + static_cast<size_t>(rng.below(r)));
        s.push(SelectRows{std::move(keep)});
        break;
      }
      default: {
        auto keep = rng.permutation(c);
        keep.resize(1 + static_cast<size_t>(rng.below(c)));
        s.push(SelectCols{std::move(keep)});
        break;
      }
    }
  }
  return s;
}

namespace {

std::string describe(const TransformStack& s, const char* what) {
  std::string out = std::string(what) + " on stack " + std::to_string(s.source_rows()) + "x" +
                    std::to_string(s.source_cols()) + " ->";
  static const char* names[] = {"InsertRow", "InsertCol", "PermuteRows", "PermuteCols",
                                "AffineRow", "AffineCol", "SelectRows", "SelectCols"};
  for (const auto& op : s.ops()) out += std::string(" ") + names[op.index()];
  out += " -> " + std::to_string(s.rows()) + "x" + std::to_string(s.cols());
  return out;
}

bool close(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(b), scale});
}

}  // namespace

EquivalenceReport check_transform_equivalence(Model model, uint64_t trials, Seed seed,
                                              size_t max_dim, size_t max_ops) {
  require(max_dim >= 2, "check_transform_equivalence: max_dim must be >= 2");
  EquivalenceReport rep;
  rep.model = model;
  rep.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed.child(t));
    const StackFlavor flavor = model == Model::kF2Sketch ? StackFlavor::kF2
                               : (t % 2 == 0)            ? StackFlavor::kInteger
                                                         : StackFlavor::kReal;
    // Leave headroom so inserts keep the derived matrix within max_dim.
    const size_t base = std::max<size_t>(1, max_dim - max_ops);
    const size_t yr = 1 + static_cast<size_t>(rng.below(base));
    const size_t yc = 1 + static_cast<size_t>(rng.below(base));
    const TransformStack stack = random_stack(yr, yc, max_ops, rng, flavor);
    const size_t xr = stack.rows(), xc = stack.cols();

    HiddenMatrix y;
    HiddenMatrix x;
    double xmax = 1.0;
    if (flavor == StackFlavor::kReal) {
      RealMatrix m(yr, yc);
      for (double& v : m.data()) v = 2.0 * rng.uniform01() - 1.0;
      const RealMatrix mx = materialize(stack, m);
      for (double v : mx.data()) xmax = std::max(xmax, std::abs(v));
      y = m;
      x = mx;
    } else {
      BitMatrix m(yr, yc);
      for (size_t i = 0; i < yr; ++i) {
        for (size_t j = 0; j < yc; ++j) m.set(i, j, rng.bit());
      }
      x = materialize(stack, m);
      y = m;
    }
    // Tiny sources have a tiny n^c bound; affine rescaling may exceed it.
    OracleSession source(y, 62), direct(x, 62);
    SimulatedOracle sim(source, stack);
    const bool real = flavor == StackFlavor::kReal;
    auto int_vec = [&](size_t n) {
      std::vector<int64_t> v(n);
      for (auto& e : v) e = static_cast<int64_t>(rng.below(2001)) - 1000;
      return v;
    };
    auto real_vec = [&](size_t n) {
      std::vector<double> v(n);
      for (auto& e : v) e = 2.0 * rng.uniform01() - 1.0;
      return v;
    };
    bool ok = true;
    std::string what;
    switch (model) {
      case Model::kEdgeProbe: {
        const size_t i = static_cast<size_t>(rng.below(xr));
        const size_t j = static_cast<size_t>(rng.below(xc));
        const double a = sim.edge_probe(i, j), b = direct.edge_probe(i, j);
        ok = real ? close(a, b, xmax) : a == b;
        what = "edge_probe(" + std::to_string(i) + "," + std::to_string(j) + ")";
        break;
      }
      case Model::kMv: {
        if (real) {
          const auto v = real_vec(xc);
          const auto a = sim.mv_real(v), b = direct.mv_real(v);
          for (size_t i = 0; i < xr; ++i) ok = ok && close(a[i], b[i], xmax * xc);
        } else {
          const auto v = int_vec(xc);
          ok = sim.mv(v) == direct.mv(v);
        }
        what = "mv";
        break;
      }
      case Model::kUtMv: {
        if (real) {
          const auto u = real_vec(xr), v = real_vec(xc);
          ok = close(sim.utmv_real(u, v), direct.utmv_real(u, v), xmax * xr * xc);
        } else {
          const auto u = int_vec(xr), v = int_vec(xc);
          ok = sim.utmv(u, v) == direct.utmv(u, v);
        }
        what = "utmv";
        break;
      }
      case Model::kSketch: {
        if (real) {
          const auto w = real_vec(xr * xc);
          ok = close(sim.sketch_real(w), direct.sketch_real(w), xmax * xr * xc);
        } else {
          const auto w = int_vec(xr * xc);
          ok = sim.sketch(w) == direct.sketch(w);
        }
        what = "sketch";
        break;
      }
      case Model::kF2Sketch: {
        std::vector<uint8_t> w(xr * xc);
        for (auto& e : w) e = rng.bit();
        ok = sim.f2_sketch(w) == direct.f2_sketch(w);
        what = "f2_sketch";
        break;
      }
    }
    const uint64_t used = source.counts().total();
    rep.max_source_queries = std::max(rep.max_source_queries, used);
    if (used > 1) ok = false;
    if (!ok) {
      ++rep.mismatches;
      if (rep.counterexample.empty()) {
        rep.counterexample = "trial " + std::to_string(t) + ": " + describe(stack, what.c_str()) +
                             ", source queries " + std::to_string(used);
      }
    }
  }
  return rep;
}

}  // namespace plab
