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

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dsc/gf_linalg.h"

namespace dsc {

// Probability table over a product of two finite alphabets, row-major:
// entry (a, b) lives at a * q2 + b. Entries are nonnegative and sum to one
// within 1e-12; the table is renormalized once at construction.
class JointPmf {
 public:
  JointPmf(std::size_t q1, std::size_t q2, std::vector<double> table);
  static JointPmf from_rows(const std::vector<std::vector<double>>& rows);
  static JointPmf uniform(std::size_t q1, std::size_t q2);
  static JointPmf product(std::span<const double> p1, std::span<const double> p2);

  std::size_t q1() const { return q1_; }
  std::size_t q2() const { return q2_; }
  double operator()(std::size_t a, std::size_t b) const {
    return table_[a * q2_ + b];
  }
  std::span<const double> table() const { return table_; }

  std::vector<double> marginal1() const;
  std::vector<double> marginal2() const;

 private:
  std::size_t q1_;
  std::size_t q2_;
  std::vector<double> table_;
};

// All entropies in bits.
struct EntropySet {
  double h12;   // H(X1 X2)
  double h1;    // H(X1)
  double h2;    // H(X2)
  double h1g2;  // H(X1 | X2)
  double h2g1;  // H(X2 | X1)
  double mi;    // I(X1; X2)
};

// Shannon entropy in bits with 0 log 0 = 0.
double entropy_bits(std::span<const double> p);

EntropySet entropy_set(const JointPmf& p);

// D(p || r) in bits. Returns +infinity when p puts mass outside the support
// of r. Throws std::invalid_argument on a size mismatch.
double kl_divergence(std::span<const double> p, std::span<const double> r);

// Memoryless blocklength-n extension of a JointPmf. Never materialized unless
// full_table() is asked for.
class BlockDistribution {
 public:
  // Both alphabet sizes must be prime; they double as the symbol fields.
  BlockDistribution(JointPmf base, std::size_t n);

  const JointPmf& base() const { return base_; }
  std::size_t n() const { return n_; }
  const FieldSpec& field1() const { return f1_; }
  const FieldSpec& field2() const { return f2_; }

  // Number of block pairs, q1^n * q2^n.
  Word space_size() const;

  // Probability of every block pair, indexed w1 * q2^n + w2 for packed words.
  // Throws ResourceError beyond `cap` entries.
  std::vector<double> full_table(Word cap) const;

  // p(x1, .) over every packed terminal-2 block, for one terminal-1 block.
  std::vector<double> row_table(Word x1) const;

  // Marginal law of terminal 1 (or 2) blocks, indexed by packed word.
  std::vector<double> marginal_table(int terminal, Word cap) const;

 private:
  JointPmf base_;
  std::size_t n_;
  FieldSpec f1_;
  FieldSpec f2_;
};

std::pair<FieldVector, FieldVector> sample_block(const BlockDistribution& d,
                                                 std::mt19937_64& rng);

double block_prob(const BlockDistribution& d, const FieldVector& x1,
                  const FieldVector& x2);
double block_prob(const BlockDistribution& d, Word x1, Word x2);

}  // namespace dsc
