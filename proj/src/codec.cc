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

#include "dsc/codec.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "dsc/errors.h"
#include "dsc/parallel.h"

namespace dsc {

namespace {

void require_terminal(int terminal) {
  if (terminal != 1 && terminal != 2) {
    throw std::invalid_argument("terminal must be 1 or 2");
  }
}

Word checked_product(Word a, Word b, const char* what) {
  if (a != 0 && b > std::numeric_limits<Word>::max() / a) {
    throw ResourceError(std::string(what) + " overflows 64 bits");
  }
  return a * b;
}

// Digits of every word in GF(q)^n, word-major.
std::vector<Residue> all_digits(const FieldSpec& f, std::size_t n, Word count) {
  std::vector<Residue> d(count * n);
  for (Word w = 0; w < count; ++w) {
    Word v = w;
    for (std::size_t t = n; t-- > 0;) {
      d[w * n + t] = static_cast<Residue>(v % f.q());
      v /= f.q();
    }
  }
  return d;
}

Word syndrome_of(const Residue* digits, const FieldMatrix& a) {
  const unsigned q = a.field().q();
  Word s = 0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    unsigned acc = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) acc += unsigned{digits[r]} * a.at(r, c);
    s = s * q + acc % q;
  }
  return s;
}

// Minimizing type entropy H = log n - (1/n) sum c log c is maximizing the
// integer prod c^c over the cell counts, which compares exactly. prod c^c <=
// n^n < 2^128 for n <= 26.
using TypeWeight = unsigned __int128;

class TypeWeigher {
 public:
  TypeWeigher(unsigned q1, unsigned q2, std::size_t n)
      : q2_(q2), counts_(std::size_t{q1} * q2, 0), self_powers_(n + 1, 1) {
    for (std::size_t c = 1; c <= n; ++c) {
      TypeWeight p = 1;
      for (std::size_t k = 0; k < c; ++k) p *= c;
      self_powers_[c] = p;
    }
    touched_.reserve(n);
  }

  TypeWeight weight(const Residue* x1, const Residue* x2, std::size_t n) {
    touched_.clear();
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t cell = std::size_t{x1[t]} * q2_ + x2[t];
      if (counts_[cell]++ == 0) touched_.push_back(cell);
    }
    TypeWeight w = 1;
    for (std::size_t cell : touched_) {
      w *= self_powers_[counts_[cell]];
      counts_[cell] = 0;
    }
    return w;
  }

 private:
  std::size_t q2_;
  std::vector<std::uint8_t> counts_;
  std::vector<TypeWeight> self_powers_;
  std::vector<std::size_t> touched_;
};

// Members of each coset list are ascending, so scanning x1-major and keeping
// only strict improvements yields the lexicographically smallest optimum.
WordPair search_coset_product(std::span<const Word> coset1,
                              const std::vector<Residue>& digits1,
                              std::span<const Word> coset2,
                              const std::vector<Residue>& digits2,
                              std::size_t n, TypeWeigher& weigher,
                              bool digits_by_position) {
  WordPair best{};
  TypeWeight best_weight = 0;
  for (std::size_t i = 0; i < coset1.size(); ++i) {
    const Residue* d1 =
        digits1.data() + (digits_by_position ? i : coset1[i]) * n;
    for (std::size_t j = 0; j < coset2.size(); ++j) {
      const Residue* d2 =
          digits2.data() + (digits_by_position ? j : coset2[j]) * n;
      const TypeWeight w = weigher.weight(d1, d2, n);
      if (w > best_weight) {
        best_weight = w;
        best = {coset1[i], coset2[j]};
      }
    }
  }
  return best;
}

void check_decoder_caps(const AffineEncoderPair& enc) {
  const std::size_t n = enc.n();
  if (n > kMaxDecoderBlocklength) {
    throw ResourceError("decoder blocklength " + std::to_string(n) +
                        " exceeds " + std::to_string(kMaxDecoderBlocklength));
  }
  const Word coset = checked_product(
      word_space_size(enc.field(1), n - enc.m1()),
      word_space_size(enc.field(2), n - enc.m2()), "coset product");
  if (coset > kMaxCosetProduct) {
    throw ResourceError("coset product of " + std::to_string(coset) +
                        " pairs exceeds cap " + std::to_string(kMaxCosetProduct));
  }
}

}  // namespace

AffineEncoderPair::AffineEncoderPair(FieldMatrix a1, FieldMatrix a2,
                                     FieldVector b1, FieldVector b2)
    : a1_(std::move(a1)), a2_(std::move(a2)), b1_(std::move(b1)), b2_(std::move(b2)) {
  if (a1_.rows() != a2_.rows()) {
    throw std::invalid_argument("encoder matrices disagree on blocklength");
  }
  if (a1_.rows() == 0) throw std::invalid_argument("blocklength must be >= 1");
  for (int i : {1, 2}) {
    const FieldMatrix& a = matrix(i);
    const FieldVector& b = offset(i);
    if (a.cols() == 0 || a.cols() > a.rows()) {
      throw std::invalid_argument("need 1 <= m_i <= n for terminal " +
                                  std::to_string(i));
    }
    if (!(b.field() == a.field()) || b.size() != a.cols()) {
      throw std::invalid_argument("offset shape mismatch for terminal " +
                                  std::to_string(i));
    }
    if (rank(a) != a.cols()) {
      throw std::invalid_argument("encoder matrix of terminal " +
                                  std::to_string(i) + " is not surjective");
    }
  }
}

AffineEncoderPair::AffineEncoderPair(FieldMatrix a1, FieldMatrix a2)
    : AffineEncoderPair(a1, a2, FieldVector(a1.field(), a1.cols()),
                        FieldVector(a2.field(), a2.cols())) {}

AffineEncoderPair AffineEncoderPair::identity(FieldSpec f1, FieldSpec f2,
                                              std::size_t n) {
  return AffineEncoderPair(FieldMatrix::identity(f1, n),
                           FieldMatrix::identity(f2, n));
}

AffineEncoderPair AffineEncoderPair::sample(std::mt19937_64& rng, FieldSpec f1,
                                            FieldSpec f2, std::size_t n,
                                            std::size_t m1, std::size_t m2,
                                            bool random_offsets) {
  FieldMatrix a1 = sample_surjective_matrix(rng, n, m1, f1);
  FieldMatrix a2 = sample_surjective_matrix(rng, n, m2, f2);
  FieldVector b1(f1, m1), b2(f2, m2);
  if (random_offsets) {
    std::uniform_int_distribution<unsigned> s1(0, f1.q() - 1), s2(0, f2.q() - 1);
    for (std::size_t j = 0; j < m1; ++j) b1.set(j, static_cast<Residue>(s1(rng)));
    for (std::size_t j = 0; j < m2; ++j) b2.set(j, static_cast<Residue>(s2(rng)));
  }
  return AffineEncoderPair(std::move(a1), std::move(a2), std::move(b1),
                           std::move(b2));
}

AffineEncoderPair AffineEncoderPair::with_offsets(FieldVector b1,
                                                  FieldVector b2) const {
  return AffineEncoderPair(a1_, a2_, std::move(b1), std::move(b2));
}

const FieldMatrix& AffineEncoderPair::matrix(int terminal) const {
  require_terminal(terminal);
  return terminal == 1 ? a1_ : a2_;
}

const FieldVector& AffineEncoderPair::offset(int terminal) const {
  require_terminal(terminal);
  return terminal == 1 ? b1_ : b2_;
}

FieldVector linear_encode(const FieldVector& x, const FieldMatrix& a) {
  return vec_mat_mul(x, a);
}

FieldVector affine_encode(const FieldVector& k, const FieldMatrix& a,
                          const FieldVector& b) {
  return vec_mat_mul(k, a) + b;
}

double pairwise_empirical_entropy(const FieldVector& x1, const FieldVector& x2) {
  if (x1.size() != x2.size()) {
    throw std::invalid_argument("pairwise_empirical_entropy: length mismatch");
  }
  if (x1.size() == 0) return 0.0;
  std::map<std::pair<Residue, Residue>, std::size_t> counts;
  for (std::size_t t = 0; t < x1.size(); ++t) ++counts[{x1[t], x2[t]}];
  const double n = static_cast<double>(x1.size());
  double h = 0.0;
  for (const auto& [cell, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

DecoderTable::DecoderTable(FieldSpec f1, FieldSpec f2, std::size_t n,
                           std::size_t m1, std::size_t m2,
                           std::vector<WordPair> entries)
    : f1_(f1),
      f2_(f2),
      n_(n),
      m1_(m1),
      m2_(m2),
      space2_(word_space_size(f2, m2)),
      entries_(std::move(entries)) {
  if (entries_.size() != word_space_size(f1, m1) * space2_) {
    throw std::invalid_argument("decoder table size must be q1^m1 q2^m2");
  }
}

DecoderTable DecoderTable::with_entry(Word s1, Word s2, WordPair value) const {
  DecoderTable copy = *this;
  copy.entries_.at(s1 * space2_ + s2) = value;
  return copy;
}

TableCheck check_decoder_table(const DecoderTable& t,
                               const AffineEncoderPair& enc) {
  TableCheck check;
  std::unordered_set<WordPair, WordPairHash> seen;
  check.reencodes = true;
  const Word space2 = t.syndrome_space2();
  for (std::size_t idx = 0; idx < t.size(); ++idx) {
    const WordPair& v = t.entries()[idx];
    seen.insert(v);
    const FieldVector x1 = FieldVector::unpack(t.field1(), t.n(), v.first);
    const FieldVector x2 = FieldVector::unpack(t.field2(), t.n(), v.second);
    if (linear_encode(x1, enc.matrix(1)).pack() != idx / space2 ||
        linear_encode(x2, enc.matrix(2)).pack() != idx % space2) {
      check.reencodes = false;
    }
  }
  check.distinct_values = seen.size();
  check.injective = seen.size() == t.size();
  return check;
}

DecoderTable build_decoder_table(const AffineEncoderPair& enc,
                                 unsigned workers) {
  check_decoder_caps(enc);
  const std::size_t n = enc.n();
  const FieldSpec& f1 = enc.field(1);
  const FieldSpec& f2 = enc.field(2);
  const Word syn1 = word_space_size(f1, enc.m1());
  const Word syn2 = word_space_size(f2, enc.m2());
  if (checked_product(syn1, syn2, "syndrome space") > kMaxTableSize) {
    throw ResourceError("decoder table exceeds cap " +
                        std::to_string(kMaxTableSize));
  }
  const Word words1 = word_space_size(f1, n);
  const Word words2 = word_space_size(f2, n);
  if (checked_product(words1, words2, "block pair space") > kMaxTableWork) {
    throw ResourceError("decoder construction over " +
                        std::to_string(words1 * words2) +
                        " block pairs exceeds cap " +
                        std::to_string(kMaxTableWork));
  }

  const std::vector<Residue> digits1 = all_digits(f1, n, words1);
  const std::vector<Residue> digits2 = all_digits(f2, n, words2);
  // Cosets in ascending word order.
  std::vector<std::vector<Word>> cosets1(syn1), cosets2(syn2);
  for (Word w = 0; w < words1; ++w) {
    cosets1[syndrome_of(&digits1[w * n], enc.matrix(1))].push_back(w);
  }
  for (Word w = 0; w < words2; ++w) {
    cosets2[syndrome_of(&digits2[w * n], enc.matrix(2))].push_back(w);
  }

  std::vector<WordPair> entries(syn1 * syn2);
  parallel_for(syn1, workers, [&](std::size_t s1) {
    TypeWeigher weigher(f1.q(), f2.q(), n);
    for (Word s2 = 0; s2 < syn2; ++s2) {
      entries[s1 * syn2 + s2] = search_coset_product(
          cosets1[s1], digits1, cosets2[s2], digits2, n, weigher, false);
    }
  });
  return DecoderTable(f1, f2, n, enc.m1(), enc.m2(), std::move(entries));
}

namespace {

// Ascending members of {x : x A = s} and their digits.
std::pair<std::vector<Word>, std::vector<Residue>> enumerate_coset(
    const FieldMatrix& a, Word s) {
  const FieldSpec& f = a.field();
  const std::size_t n = a.rows();
  const auto particular = solve_left(a, FieldVector::unpack(f, a.cols(), s));
  if (!particular) throw std::invalid_argument("syndrome outside the image");
  const auto basis = left_kernel_basis(a);
  const Word count = word_space_size(f, basis.size());
  std::vector<Word> members;
  members.reserve(count);
  std::vector<Residue> coeff(basis.size(), 0);
  for (Word c = 0; c < count; ++c) {
    FieldVector x = *particular;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (Residue k = 0; k < coeff[j]; ++k) x = x + basis[j];
    }
    members.push_back(x.pack());
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      if (++coeff[j] < f.q()) break;
      coeff[j] = 0;
    }
  }
  std::sort(members.begin(), members.end());
  std::vector<Residue> digits(members.size() * n);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const FieldVector x = FieldVector::unpack(f, n, members[i]);
    std::copy(x.elems().begin(), x.elems().end(), digits.begin() + i * n);
  }
  return {std::move(members), std::move(digits)};
}

}  // namespace

WordPair min_entropy_decode(const AffineEncoderPair& enc, Word s1, Word s2) {
  check_decoder_caps(enc);
  const auto [c1, d1] = enumerate_coset(enc.matrix(1), s1);
  const auto [c2, d2] = enumerate_coset(enc.matrix(2), s2);
  TypeWeigher weigher(enc.field(1).q(), enc.field(2).q(), enc.n());
  return search_coset_product(c1, d1, c2, d2, enc.n(), weigher, true);
}

std::pair<FieldVector, FieldVector> decode(const DecoderTable& t,
                                           const FieldVector& s1,
                                           const FieldVector& s2) {
  if (s1.size() != t.m1() || s2.size() != t.m2() ||
      !(s1.field() == t.field1()) || !(s2.field() == t.field2())) {
    throw std::invalid_argument("decode: syndrome shape mismatch");
  }
  const WordPair& v = t.lookup(s1.pack(), s2.pack());
  return {FieldVector::unpack(t.field1(), t.n(), v.first),
          FieldVector::unpack(t.field2(), t.n(), v.second)};
}

DecodingSet::DecodingSet(std::vector<WordPair> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  index_.reserve(members_.size());
  index_.insert(members_.begin(), members_.end());
}

DecodingSet decoding_set(const DecoderTable& t) {
  return DecodingSet(t.entries());
}

}  // namespace dsc
