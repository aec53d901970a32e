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
#include <functional>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dsc/gf_linalg.h"

namespace dsc {

// Enumeration caps for decoder construction.
inline constexpr Word kMaxCosetProduct = Word{1} << 20;  // q1^(n-m1) q2^(n-m2)
inline constexpr Word kMaxTableSize = Word{1} << 20;     // q1^m1 q2^m2
inline constexpr Word kMaxTableWork = Word{1} << 26;     // q1^n q2^n
inline constexpr std::size_t kMaxDecoderBlocklength = 26;

// Compression matrices A1 (n x m1), A2 (n x m2) and offsets b1, b2. Each
// A_i has full column rank so x -> x A_i is onto. Terminals are numbered 1
// and 2.
class AffineEncoderPair {
 public:
  AffineEncoderPair(FieldMatrix a1, FieldMatrix a2, FieldVector b1,
                    FieldVector b2);

  // Zero offsets.
  AffineEncoderPair(FieldMatrix a1, FieldMatrix a2);

  // n = m1 = m2 with A_i = I and b_i = 0: a plain one-time pad.
  static AffineEncoderPair identity(FieldSpec f1, FieldSpec f2, std::size_t n);

  // Fresh surjective matrices; offsets uniform when `random_offsets`.
  static AffineEncoderPair sample(std::mt19937_64& rng, FieldSpec f1,
                                  FieldSpec f2, std::size_t n, std::size_t m1,
                                  std::size_t m2, bool random_offsets);

  AffineEncoderPair with_offsets(FieldVector b1, FieldVector b2) const;

  std::size_t n() const { return a1_.rows(); }
  std::size_t m1() const { return a1_.cols(); }
  std::size_t m2() const { return a2_.cols(); }
  std::size_t m(int terminal) const { return matrix(terminal).cols(); }
  const FieldSpec& field(int terminal) const { return matrix(terminal).field(); }
  const FieldMatrix& matrix(int terminal) const;
  const FieldVector& offset(int terminal) const;

 private:
  FieldMatrix a1_;
  FieldMatrix a2_;
  FieldVector b1_;
  FieldVector b2_;
};

// x A.
FieldVector linear_encode(const FieldVector& x, const FieldMatrix& a);

// k A + b.
FieldVector affine_encode(const FieldVector& k, const FieldMatrix& a,
                          const FieldVector& b);

// Entropy in bits of the empirical joint type of ((x1_t, x2_t))_t.
double pairwise_empirical_entropy(const FieldVector& x1, const FieldVector& x2);

struct WordPair {
  Word first = 0;
  Word second = 0;
  friend auto operator<=>(const WordPair&, const WordPair&) = default;
};

struct WordPairHash {
  std::size_t operator()(const WordPair& p) const noexcept {
    return std::hash<Word>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
  }
};

// The joint decoder psi as a lookup table from syndrome pairs to block pairs.
// Entry for (s1, s2) sits at s1 * q2^m2 + s2.
class DecoderTable {
 public:
  DecoderTable(FieldSpec f1, FieldSpec f2, std::size_t n, std::size_t m1,
               std::size_t m2, std::vector<WordPair> entries);

  const FieldSpec& field1() const { return f1_; }
  const FieldSpec& field2() const { return f2_; }
  std::size_t n() const { return n_; }
  std::size_t m1() const { return m1_; }
  std::size_t m2() const { return m2_; }
  std::size_t size() const { return entries_.size(); }
  Word syndrome_space2() const { return space2_; }

  const WordPair& lookup(Word s1, Word s2) const {
    return entries_[s1 * space2_ + s2];
  }
  const std::vector<WordPair>& entries() const { return entries_; }

  // Copy with the entry for (s1, s2) replaced. Used to build invalid decoders
  // for negative tests.
  DecoderTable with_entry(Word s1, Word s2, WordPair value) const;

 private:
  FieldSpec f1_;
  FieldSpec f2_;
  std::size_t n_, m1_, m2_;
  Word space2_;
  std::vector<WordPair> entries_;
};

struct TableCheck {
  std::size_t distinct_values = 0;
  bool injective = false;  // all values distinct
  bool reencodes = false;  // phi_i(value_i) == s_i for every entry
};

TableCheck check_decoder_table(const DecoderTable& t,
                               const AffineEncoderPair& enc);

// Minimum-entropy decoder: for every syndrome pair, the member of the coset
// product whose joint type has least entropy; ties go to the
// lexicographically smallest concatenated pair (x1, x2). Throws
// ResourceError when the caps above are exceeded. `workers` partitions the
// syndromes of terminal 1.
DecoderTable build_decoder_table(const AffineEncoderPair& enc,
                                 unsigned workers = 1);

// Same rule for a single syndrome pair, enumerating the cosets through a
// particular solution and a kernel basis. No table needed.
WordPair min_entropy_decode(const AffineEncoderPair& enc, Word s1, Word s2);

std::pair<FieldVector, FieldVector> decode(const DecoderTable& t,
                                           const FieldVector& s1,
                                           const FieldVector& s2);

// Plaintext pairs that the coding system reproduces: the value set of the
// decoder table.
class DecodingSet {
 public:
  explicit DecodingSet(std::vector<WordPair> members);

  bool contains(const WordPair& p) const { return index_.contains(p); }
  std::size_t size() const { return members_.size(); }
  // Sorted ascending.
  const std::vector<WordPair>& members() const { return members_; }

 private:
  std::vector<WordPair> members_;
  std::unordered_set<WordPair, WordPairHash> index_;
};

DecodingSet decoding_set(const DecoderTable& t);

}  // namespace dsc
