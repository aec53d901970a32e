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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace dsc {

using Residue = std::uint8_t;

// A word over GF(q) packed as a base-q integer with the first symbol most
// significant, so numeric order on packed words is lexicographic order.
using Word = std::uint64_t;

inline constexpr unsigned kMaxFieldOrder = 251;

// Prime field GF(q), q <= 251.
class FieldSpec {
 public:
  // Throws std::invalid_argument unless q is a prime no larger than 251.
  explicit FieldSpec(unsigned q);

  unsigned q() const { return q_; }

  Residue add(Residue a, Residue b) const {
    return static_cast<Residue>((unsigned{a} + b) % q_);
  }
  Residue sub(Residue a, Residue b) const {
    return static_cast<Residue>((unsigned{a} + q_ - b) % q_);
  }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((unsigned{a} * b) % q_);
  }
  Residue neg(Residue a) const { return static_cast<Residue>((q_ - a) % q_); }
  // Multiplicative inverse of a nonzero residue.
  Residue inv(Residue a) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  unsigned q_;
};

bool is_prime(unsigned v);

Residue field_add(Residue a, Residue b, const FieldSpec& f);
Residue field_sub(Residue a, Residue b, const FieldSpec& f);
Residue field_mul(Residue a, Residue b, const FieldSpec& f);

// q^len; throws std::overflow_error if it does not fit a Word.
Word word_space_size(const FieldSpec& f, std::size_t len);

class FieldVector {
 public:
  FieldVector(FieldSpec field, std::size_t len);
  // Throws std::invalid_argument if any element is >= q.
  FieldVector(FieldSpec field, std::vector<Residue> elems);

  static FieldVector unpack(FieldSpec field, std::size_t len, Word w);
  Word pack() const;

  const FieldSpec& field() const { return field_; }
  std::size_t size() const { return elems_.size(); }
  Residue operator[](std::size_t i) const { return elems_[i]; }
  void set(std::size_t i, Residue v);
  std::span<const Residue> elems() const { return elems_; }

  bool is_zero() const;

  friend FieldVector operator+(const FieldVector& a, const FieldVector& b);
  friend FieldVector operator-(const FieldVector& a, const FieldVector& b);
  friend bool operator==(const FieldVector&, const FieldVector&) = default;

 private:
  FieldSpec field_;
  std::vector<Residue> elems_;
};

// Row-major n x m matrix over GF(q).
class FieldMatrix {
 public:
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols);
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols,
              std::vector<Residue> entries);
  static FieldMatrix identity(FieldSpec field, std::size_t n);
  static FieldMatrix from_rows(FieldSpec field,
                               const std::vector<std::vector<unsigned>>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, Residue v);
  std::span<const Residue> row(std::size_t r) const {
    return std::span<const Residue>(entries_).subspan(r * cols_, cols_);
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> entries_;
};

// Row vector times matrix, xA. Throws std::invalid_argument on a field or
// length mismatch.
FieldVector vec_mat_mul(const FieldVector& x, const FieldMatrix& a);

std::size_t rank(const FieldMatrix& a);

// Some x with xA == s, or nothing if s is outside the image of A.
std::optional<FieldVector> solve_left(const FieldMatrix& a,
                                      const FieldVector& s);

// Basis of the left kernel {x : xA = 0}, as rows of length a.rows().
std::vector<FieldVector> left_kernel_basis(const FieldMatrix& a);

// Uniform n x m matrix conditioned on rank m, so x -> xA is onto GF(q)^m.
// Requires m <= n.
FieldMatrix sample_surjective_matrix(std::mt19937_64& rng, std::size_t n,
                                     std::size_t m, const FieldSpec& f);

}  // namespace dsc
