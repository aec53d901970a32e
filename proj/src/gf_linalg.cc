// Copyright 2026 The dsc-crypt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsc/gf_linalg.h"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace dsc {

bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(unsigned q) : q_(q) {
  if (q > kMaxFieldOrder || !is_prime(q)) {
    throw std::invalid_argument("field order must be a prime <= 251, got " +
                                std::to_string(q));
  }
}

Residue FieldSpec::inv(Residue a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // a^(q-2) by square-and-multiply.
  unsigned result = 1, base = a, e = q_ - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

Residue field_add(Residue a, Residue b, const FieldSpec& f) { return f.add(a, b); }
Residue field_sub(Residue a, Residue b, const FieldSpec& f) { return f.sub(a, b); }
Residue field_mul(Residue a, Residue b, const FieldSpec& f) { return f.mul(a, b); }

Word word_space_size(const FieldSpec& f, std::size_t len) {
  Word size = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (size > std::numeric_limits<Word>::max() / f.q()) {
      throw std::overflow_error("word space q^len does not fit 64 bits");
    }
    size *= f.q();
  }
  return size;
}

FieldVector::FieldVector(FieldSpec field, std::size_t len)
    : field_(field), elems_(len, 0) {}

FieldVector::FieldVector(FieldSpec field, std::vector<Residue> elems)
    : field_(field), elems_(std::move(elems)) {
  for (Residue e : elems_) {
    if (e >= field_.q()) {
      throw std::invalid_argument("vector element out of range for GF(" +
                                  std::to_string(field_.q()) + ")");
    }
  }
}

FieldVector FieldVector::unpack(FieldSpec field, std::size_t len, Word w) {
  FieldVector v(field, len);
  for (std::size_t i = len; i-- > 0;) {
    v.elems_[i] = static_cast<Residue>(w % field.q());
    w /= field.q();
  }
  if (w != 0) throw std::invalid_argument("packed word out of range");
  return v;
}

Word FieldVector::pack() const {
  (void)word_space_size(field_, elems_.size());
  Word w = 0;
  for (Residue e : elems_) w = w * field_.q() + e;
  return w;
}

void FieldVector::set(std::size_t i, Residue v) {
  if (v >= field_.q()) throw std::invalid_argument("element out of range");
  elems_.at(i) = v;
}

bool FieldVector::is_zero() const {
  for (Residue e : elems_) {
    if (e != 0) return false;
  }
  return true;
}

namespace {

void require_same_shape(const FieldVector& a, const FieldVector& b) {
  if (!(a.field() == b.field()) || a.size() != b.size()) {
    throw std::invalid_argument("vector field or length mismatch");
  }
}

}  // namespace

FieldVector operator+(const FieldVector& a, const FieldVector& b) {
  require_same_shape(a, b);
  FieldVector out(a.field_, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.elems_[i] = a.field_.add(a.elems_[i], b.elems_[i]);
  }
  return out;
}

FieldVector operator-(const FieldVector& a, const FieldVector& b) {
  require_same_shape(a, b);
  FieldVector out(a.field_, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.elems_[i] = a.field_.sub(a.elems_[i], b.elems_[i]);
  }
  return out;
}

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols,
                         std::vector<Residue> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count does not match shape");
  }
  for (Residue e : entries_) {
    if (e >= field_.q()) throw std::invalid_argument("matrix entry out of range");
  }
}

FieldMatrix FieldMatrix::identity(FieldSpec field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(
    FieldSpec field, const std::vector<std::vector<unsigned>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Residue> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (unsigned v : r) {
      if (v >= field.q()) throw std::invalid_argument("matrix entry out of range");
      entries.push_back(static_cast<Residue>(v));
    }
  }
  return FieldMatrix(field, rows.size(), cols, std::move(entries));
}

void FieldMatrix::set(std::size_t r, std::size_t c, Residue v) {
  if (v >= field_.q()) throw std::invalid_argument("matrix entry out of range");
  entries_.at(r * cols_ + c) = v;
}

FieldVector vec_mat_mul(const FieldVector& x, const FieldMatrix& a) {
  if (!(x.field() == a.field()) || x.size() != a.rows()) {
    throw std::invalid_argument("vec_mat_mul: dimension or field mismatch");
  }
  const FieldSpec& f = a.field();
  std::vector<unsigned> acc(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const unsigned xr = x[r];
    if (xr == 0) continue;
    auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) {
      acc[c] = (acc[c] + xr * row[c]) % f.q();
    }
  }
  std::vector<Residue> out(acc.begin(), acc.end());
  return FieldVector(f, std::move(out));
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(const FieldSpec& f, std::size_t rows,
                                    std::size_t cols,
                                    std::vector<Residue>& m) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t sel = pr;
    while (sel < rows && m[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pr) {
      for (std::size_t k = 0; k < cols; ++k) {
        std::swap(m[sel * cols + k], m[pr * cols + k]);
      }
    }
    const Residue inv = f.inv(m[pr * cols + c]);
    for (std::size_t k = 0; k < cols; ++k) {
      m[pr * cols + k] = f.mul(m[pr * cols + k], inv);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || m[r * cols + c] == 0) continue;
      const Residue factor = m[r * cols + c];
      for (std::size_t k = 0; k < cols; ++k) {
        m[r * cols + k] = f.sub(m[r * cols + k], f.mul(factor, m[pr * cols + k]));
      }
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

// A^T as a row-major m x n buffer, optionally augmented with column s.
std::vector<Residue> transpose_augmented(const FieldMatrix& a,
                                         const FieldVector* s) {
  const std::size_t n = a.rows(), m = a.cols(), w = n + (s ? 1 : 0);
  std::vector<Residue> t(m * w, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) t[c * w + r] = a.at(r, c);
  }
  if (s) {
    for (std::size_t c = 0; c < m; ++c) t[c * w + n] = (*s)[c];
  }
  return t;
}

}  // namespace

std::size_t rank(const FieldMatrix& a) {
  std::vector<Residue> m(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m[r * a.cols() + c] = a.at(r, c);
  }
  return row_reduce(a.field(), a.rows(), a.cols(), m).size();
}

std::optional<FieldVector> solve_left(const FieldMatrix& a,
                                      const FieldVector& s) {
  if (!(s.field() == a.field()) || s.size() != a.cols()) {
    throw std::invalid_argument("solve_left: dimension or field mismatch");
  }
  const std::size_t n = a.rows(), m = a.cols(), w = n + 1;
  // xA = s  <=>  A^T x^T = s^T.
  std::vector<Residue> t = transpose_augmented(a, &s);
  const auto pivots = row_reduce(a.field(), m, w, t);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  FieldVector x(a.field(), n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x.set(pivots[r], t[r * w + n]);
  return x;
}

std::vector<FieldVector> left_kernel_basis(const FieldMatrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  std::vector<Residue> t = transpose_augmented(a, nullptr);
  const auto pivots = row_reduce(a.field(), m, n, t);
  const FieldSpec& f = a.field();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<FieldVector> basis;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    FieldVector v(f, n);
    v.set(free_col, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v.set(pivots[r], f.neg(t[r * n + free_col]));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FieldMatrix sample_surjective_matrix(std::mt19937_64& rng, std::size_t n,
                                     std::size_t m, const FieldSpec& f) {
  if (m > n) {
    throw std::invalid_argument(
        "sample_surjective_matrix: m > n, x -> xA cannot be onto");
  }
  std::uniform_int_distribution<unsigned> symbol(0, f.q() - 1);
  for (;;) {
    std::vector<Residue> entries(n * m);
    for (auto& e : entries) e = static_cast<Residue>(symbol(rng));
    FieldMatrix a(f, n, m, std::move(entries));
    if (rank(a) == m) return a;
  }
}

}  // namespace dsc
