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

#include "dsc/prob_core.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dsc/errors.h"

namespace dsc {

namespace {

constexpr double kPmfTolerance = 1e-12;

}  // namespace

JointPmf::JointPmf(std::size_t q1, std::size_t q2, std::vector<double> table)
    : q1_(q1), q2_(q2), table_(std::move(table)) {
  if (q1 == 0 || q2 == 0 || table_.size() != q1 * q2) {
    throw std::invalid_argument("pmf table shape does not match alphabets");
  }
  double sum = 0.0;
  for (double v : table_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("pmf entries must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kPmfTolerance) {
    throw std::invalid_argument("pmf entries sum to " + std::to_string(sum) +
                                ", not 1");
  }
  for (double& v : table_) v /= sum;
}

JointPmf JointPmf::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty pmf");
  const std::size_t q2 = rows.front().size();
  std::vector<double> table;
  for (const auto& r : rows) {
    if (r.size() != q2) throw std::invalid_argument("ragged pmf rows");
    table.insert(table.end(), r.begin(), r.end());
  }
  return JointPmf(rows.size(), q2, std::move(table));
}

JointPmf JointPmf::uniform(std::size_t q1, std::size_t q2) {
  return JointPmf(q1, q2, std::vector<double>(q1 * q2, 1.0 / double(q1 * q2)));
}

JointPmf JointPmf::product(std::span<const double> p1,
                           std::span<const double> p2) {
  std::vector<double> table;
  table.reserve(p1.size() * p2.size());
  for (double a : p1) {
    for (double b : p2) table.push_back(a * b);
  }
  return JointPmf(p1.size(), p2.size(), std::move(table));
}

std::vector<double> JointPmf::marginal1() const {
  std::vector<double> m(q1_, 0.0);
  for (std::size_t a = 0; a < q1_; ++a) {
    for (std::size_t b = 0; b < q2_; ++b) m[a] += (*this)(a, b);
  }
  return m;
}

std::vector<double> JointPmf::marginal2() const {
  std::vector<double> m(q2_, 0.0);
  for (std::size_t a = 0; a < q1_; ++a) {
    for (std::size_t b = 0; b < q2_; ++b) m[b] += (*this)(a, b);
  }
  return m;
}

double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

EntropySet entropy_set(const JointPmf& p) {
  EntropySet e{};
  e.h12 = entropy_bits(p.table());
  const auto m1 = p.marginal1();
  const auto m2 = p.marginal2();
  e.h1 = entropy_bits(m1);
  e.h2 = entropy_bits(m2);
  e.h1g2 = e.h12 - e.h2;
  e.h2g1 = e.h12 - e.h1;
  e.mi = e.h1 + e.h2 - e.h12;
  return e;
}

double kl_divergence(std::span<const double> p, std::span<const double> r) {
  if (p.size() != r.size()) {
    throw std::invalid_argument("kl_divergence: distributions differ in size");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (r[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / r[i]);
  }
  // Rounding can leave a tiny negative value when p == r.
  return d < 0.0 ? 0.0 : d;
}

BlockDistribution::BlockDistribution(JointPmf base, std::size_t n)
    : base_(std::move(base)),
      n_(n),
      f1_(static_cast<unsigned>(base_.q1())),
      f2_(static_cast<unsigned>(base_.q2())) {
  if (n == 0) throw std::invalid_argument("blocklength must be >= 1");
  (void)space_size();
}

Word BlockDistribution::space_size() const {
  const Word s1 = word_space_size(f1_, n_);
  const Word s2 = word_space_size(f2_, n_);
  if (s1 > std::numeric_limits<Word>::max() / s2) {
    throw std::overflow_error("block pair space does not fit 64 bits");
  }
  return s1 * s2;
}

std::vector<double> BlockDistribution::full_table(Word cap) const {
  if (space_size() > cap) {
    throw ResourceError("block table of " + std::to_string(space_size()) +
                        " entries exceeds cap " + std::to_string(cap));
  }
  const std::size_t q1 = base_.q1(), q2 = base_.q2();
  // Extend one coordinate at a time: (w1, w2) -> (w1 q1 + a, w2 q2 + b).
  std::vector<double> t{1.0};
  std::size_t s1 = 1, s2 = 1;
  for (std::size_t step = 0; step < n_; ++step) {
    std::vector<double> next(s1 * q1 * s2 * q2);
    const std::size_t ns2 = s2 * q2;
    for (std::size_t w1 = 0; w1 < s1; ++w1) {
      for (std::size_t w2 = 0; w2 < s2; ++w2) {
        const double pw = t[w1 * s2 + w2];
        for (std::size_t a = 0; a < q1; ++a) {
          for (std::size_t b = 0; b < q2; ++b) {
            next[(w1 * q1 + a) * ns2 + (w2 * q2 + b)] = pw * base_(a, b);
          }
        }
      }
    }
    t = std::move(next);
    s1 *= q1;
    s2 *= q2;
  }
  return t;
}

std::vector<double> BlockDistribution::row_table(Word x1) const {
  const unsigned q1 = f1_.q(), q2 = f2_.q();
  std::vector<Residue> digits(n_);
  for (std::size_t t = n_; t-- > 0;) {
    digits[t] = static_cast<Residue>(x1 % q1);
    x1 /= q1;
  }
  std::vector<double> row{1.0};
  for (std::size_t t = 0; t < n_; ++t) {
    std::vector<double> next(row.size() * q2);
    for (std::size_t w = 0; w < row.size(); ++w) {
      for (unsigned b = 0; b < q2; ++b) {
        next[w * q2 + b] = row[w] * base_(digits[t], b);
      }
    }
    row = std::move(next);
  }
  return row;
}

std::vector<double> BlockDistribution::marginal_table(int terminal,
                                                      Word cap) const {
  if (terminal != 1 && terminal != 2) {
    throw std::invalid_argument("terminal must be 1 or 2");
  }
  const FieldSpec& f = terminal == 1 ? f1_ : f2_;
  const Word size = word_space_size(f, n_);
  if (size > cap) {
    throw ResourceError("marginal block table exceeds cap");
  }
  const auto base = terminal == 1 ? base_.marginal1() : base_.marginal2();
  std::vector<double> t{1.0};
  for (std::size_t step = 0; step < n_; ++step) {
    std::vector<double> next(t.size() * f.q());
    for (std::size_t w = 0; w < t.size(); ++w) {
      for (unsigned a = 0; a < f.q(); ++a) next[w * f.q() + a] = t[w] * base[a];
    }
    t = std::move(next);
  }
  return t;
}

std::pair<FieldVector, FieldVector> sample_block(const BlockDistribution& d,
                                                 std::mt19937_64& rng) {
  const JointPmf& p = d.base();
  std::discrete_distribution<std::size_t> pair(p.table().begin(),
                                               p.table().end());
  std::vector<Residue> x1(d.n()), x2(d.n());
  for (std::size_t t = 0; t < d.n(); ++t) {
    const std::size_t idx = pair(rng);
    x1[t] = static_cast<Residue>(idx / p.q2());
    x2[t] = static_cast<Residue>(idx % p.q2());
  }
  return {FieldVector(d.field1(), std::move(x1)),
          FieldVector(d.field2(), std::move(x2))};
}

double block_prob(const BlockDistribution& d, const FieldVector& x1,
                  const FieldVector& x2) {
  if (x1.size() != d.n() || x2.size() != d.n() || !(x1.field() == d.field1()) ||
      !(x2.field() == d.field2())) {
    throw std::invalid_argument("block_prob: block shape mismatch");
  }
  double prob = 1.0;
  for (std::size_t t = 0; t < d.n(); ++t) prob *= d.base()(x1[t], x2[t]);
  return prob;
}

double block_prob(const BlockDistribution& d, Word x1, Word x2) {
  const unsigned q1 = d.field1().q(), q2 = d.field2().q();
  double prob = 1.0;
  for (std::size_t t = 0; t < d.n(); ++t) {
    prob *= d.base()(x1 % q1, x2 % q2);
    x1 /= q1;
    x2 /= q2;
  }
  return prob;
}

}  // namespace dsc
