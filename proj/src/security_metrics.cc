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

#include "dsc/security_metrics.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "dsc/errors.h"
#include "dsc/parallel.h"

namespace dsc {

namespace {

double uniform_bits(std::size_t m1, std::size_t m2, unsigned q1, unsigned q2) {
  return double(m1) * std::log2(double(q1)) + double(m2) * std::log2(double(q2));
}

double clamp_nonnegative(double v) { return v < 0.0 ? 0.0 : v; }

Word checked_space(Word a, Word b) {
  if (a != 0 && b > std::numeric_limits<Word>::max() / a) {
    throw ResourceError("enumeration space overflows 64 bits");
  }
  return a * b;
}

std::vector<Word> distinct_firsts(const DecodingSet& d) {
  std::vector<Word> v;
  for (const auto& p : d.members()) v.push_back(p.first);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Word> distinct_seconds(const DecodingSet& d) {
  std::vector<Word> v;
  for (const auto& p : d.members()) v.push_back(p.second);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t index_of(const std::vector<Word>& sorted, Word w) {
  return static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), w) - sorted.begin());
}

}  // namespace

EncryptionOracle make_oracle(const Cryptosystem& sys) {
  auto terminal = [&sys](int i) {
    const FieldSpec f = sys.encoders().field(i);
    const std::size_t n = sys.n();
    return TerminalCipher{
        f, n, sys.encoders().m(i), [sys, f, n, i](Word key, Word plain) {
          return encrypt(sys, i, FieldVector::unpack(f, n, key),
                         FieldVector::unpack(f, n, plain))
              .word.pack();
        }};
  };
  return EncryptionOracle{terminal(1), terminal(2)};
}

CipherModel::CipherModel(EncryptionOracle oracle, BlockDistribution keys)
    : oracle_(std::move(oracle)), keys_(std::move(keys)) {
  if (oracle_.first.n != keys_.n() || oracle_.second.n != keys_.n() ||
      !(oracle_.first.field == keys_.field1()) ||
      !(oracle_.second.field == keys_.field2())) {
    throw std::invalid_argument("oracle and key distribution disagree on shape");
  }
  key_space1_ = word_space_size(keys_.field1(), keys_.n());
  key_space2_ = word_space_size(keys_.field2(), keys_.n());
  cipher_space1_ = word_space_size(oracle_.first.field, oracle_.first.m);
  cipher_space2_ = word_space_size(oracle_.second.field, oracle_.second.m);
  key_table_ = keys_.full_table(kMaxGenericKeySpace);
}

void CipherModel::conditional(Word x1, Word x2, std::vector<double>& out) const {
  out.assign(cipher_space(), 0.0);
  std::vector<Word> c1(key_space1_), c2(key_space2_);
  for (Word k = 0; k < key_space1_; ++k) c1[k] = oracle_.first.encrypt(k, x1);
  for (Word k = 0; k < key_space2_; ++k) c2[k] = oracle_.second.encrypt(k, x2);
  for (Word k1 = 0; k1 < key_space1_; ++k1) {
    double* row_out = out.data() + c1[k1] * cipher_space2_;
    const double* row = key_table_.data() + k1 * key_space2_;
    for (Word k2 = 0; k2 < key_space2_; ++k2) row_out[c2[k2]] += row[k2];
  }
}

void CipherModel::conditional_marginal(int terminal, Word x,
                                       std::vector<double>& out) const {
  const TerminalCipher& t = oracle_.terminal(terminal);
  const auto key_marginal = keys_.marginal_table(terminal, kMaxGenericKeySpace);
  out.assign(terminal == 1 ? cipher_space1_ : cipher_space2_, 0.0);
  for (Word k = 0; k < key_marginal.size(); ++k) {
    out[t.encrypt(k, x)] += key_marginal[k];
  }
}

ConditionalCipherDist conditional_cipher_dist(const CipherModel& model, Word x1,
                                              Word x2) {
  ConditionalCipherDist dist;
  dist.space1 = model.cipher_space1();
  dist.space2 = model.cipher_space2();
  model.conditional(x1, x2, dist.probs);
  return dist;
}

ConditionalCipherDist conditional_cipher_dist(const EncryptionOracle& oracle,
                                              const BlockDistribution& keys,
                                              Word x1, Word x2) {
  return conditional_cipher_dist(CipherModel(oracle, keys), x1, x2);
}

CheckDistribution check_distribution(const CipherModel& model,
                                     const DecodingSet& d) {
  CheckDistribution check;
  check.probs.assign(model.cipher_space(), 0.0);
  std::vector<double> cond;
  for (const WordPair& x : d.members()) {
    model.conditional(x.first, x.second, cond);
    for (std::size_t c = 0; c < cond.size(); ++c) check.probs[c] += cond[c];
  }
  const double weight = d.size() ? 1.0 / double(d.size()) : 0.0;
  const double uniform = 1.0 / double(model.cipher_space());
  for (double& p : check.probs) {
    p *= weight;
    check.max_deviation = std::max(check.max_deviation, std::abs(p - uniform));
  }
  check.valid = check.max_deviation < kUniformityTolerance;
  return check;
}

Lemma1Result lemma1_verify(const CipherModel& model, const DecodingSet& d) {
  std::vector<double> sums(model.cipher_space(), 0.0), cond;
  for (const WordPair& x : d.members()) {
    model.conditional(x.first, x.second, cond);
    for (std::size_t c = 0; c < cond.size(); ++c) sums[c] += cond[c];
  }
  Lemma1Result result;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    const double dev = std::abs(sums[c] - 1.0);
    if (dev > result.max_deviation) {
      result.max_deviation = dev;
      result.worst_cipher = {c / model.cipher_space2(), c % model.cipher_space2()};
    }
  }
  return result;
}

PartitionResult key_preimage_partition_verify(const CipherModel& model,
                                              const DecodingSet& d, Word c1,
                                              Word c2) {
  const auto& o = model.oracle();
  const Word k1s = model.key_space1(), k2s = model.key_space2();
  std::vector<std::uint32_t> hits(k1s * k2s, 0);
  std::vector<Word> a1, a2;
  for (const WordPair& x : d.members()) {
    a1.clear();
    a2.clear();
    for (Word k = 0; k < k1s; ++k) {
      if (o.first.encrypt(k, x.first) == c1) a1.push_back(k);
    }
    for (Word k = 0; k < k2s; ++k) {
      if (o.second.encrypt(k, x.second) == c2) a2.push_back(k);
    }
    for (Word k1 : a1) {
      for (Word k2 : a2) ++hits[k1 * k2s + k2];
    }
  }
  PartitionResult r;
  r.disjoint = std::all_of(hits.begin(), hits.end(), [](auto h) { return h <= 1; });
  r.covering = std::all_of(hits.begin(), hits.end(), [](auto h) { return h >= 1; });
  r.failing_ciphers = (r.disjoint && r.covering) ? 0 : 1;
  return r;
}

PartitionResult key_preimage_partition_verify_all(const CipherModel& model,
                                                  const DecodingSet& d) {
  const auto& o = model.oracle();
  const Word k1s = model.key_space1(), k2s = model.key_space2();
  const Word s2 = model.cipher_space2();
  // Tabulate each terminal map on the blocks that occur in D.
  const auto x1s = distinct_firsts(d), x2s = distinct_seconds(d);
  std::vector<Word> t1(k1s * x1s.size()), t2(k2s * x2s.size());
  for (Word k = 0; k < k1s; ++k) {
    for (std::size_t j = 0; j < x1s.size(); ++j) {
      t1[k * x1s.size() + j] = o.first.encrypt(k, x1s[j]);
    }
  }
  for (Word k = 0; k < k2s; ++k) {
    for (std::size_t j = 0; j < x2s.size(); ++j) {
      t2[k * x2s.size() + j] = o.second.encrypt(k, x2s[j]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> members;
  members.reserve(d.size());
  for (const WordPair& x : d.members()) {
    members.emplace_back(index_of(x1s, x.first), index_of(x2s, x.second));
  }

  std::vector<std::uint32_t> count(model.cipher_space());
  std::vector<bool> overlap(model.cipher_space(), false);
  std::vector<bool> gap(model.cipher_space(), false);
  for (Word k1 = 0; k1 < k1s; ++k1) {
    const Word* row1 = t1.data() + k1 * x1s.size();
    for (Word k2 = 0; k2 < k2s; ++k2) {
      const Word* row2 = t2.data() + k2 * x2s.size();
      std::fill(count.begin(), count.end(), 0);
      for (const auto& [j1, j2] : members) ++count[row1[j1] * s2 + row2[j2]];
      for (std::size_t c = 0; c < count.size(); ++c) {
        if (count[c] > 1) overlap[c] = true;
        if (count[c] == 0) gap[c] = true;
      }
    }
  }
  PartitionResult r;
  r.disjoint = std::none_of(overlap.begin(), overlap.end(), [](bool b) { return b; });
  r.covering = std::none_of(gap.begin(), gap.end(), [](bool b) { return b; });
  for (std::size_t c = 0; c < count.size(); ++c) {
    if (overlap[c] || gap[c]) ++r.failing_ciphers;
  }
  return r;
}

double delta_pointwise(const ConditionalCipherDist& cond,
                       const CheckDistribution& check) {
  return kl_divergence(cond.probs, check.probs);
}

DeltaEstimate delta_exact(const CipherModel& model, const BlockDistribution& src,
                          const DecodingSet& d, std::uint64_t sample_seed) {
  const CheckDistribution check = check_distribution(model, d);
  const Word x1s = word_space_size(src.field1(), src.n());
  const Word x2s = word_space_size(src.field2(), src.n());
  const Word space = checked_space(x1s, x2s);
  DeltaEstimate est;
  std::vector<double> cond;
  auto term = [&](Word x1, Word x2, double p) {
    if (p <= 0.0) return 0.0;
    model.conditional(x1, x2, cond);
    ++est.plaintexts_evaluated;
    return p * kl_divergence(cond, check.probs);
  };

  if (space <= kExactPlaintextSpace) {
    for (Word x1 = 0; x1 < x1s; ++x1) {
      const auto row = src.row_table(x1);
      for (Word x2 = 0; x2 < x2s; ++x2) est.value += term(x1, x2, row[x2]);
    }
    return est;
  }

  est.exact = false;
  for (const WordPair& x : d.members()) {
    est.value += term(x.first, x.second, block_prob(src, x.first, x.second));
  }
  const Word outside = space - d.size();
  if (outside == 0) return est;
  std::mt19937_64 rng(sample_seed);
  std::uniform_int_distribution<Word> pick(0, space - 1);
  double sampled = 0.0;
  for (std::size_t s = 0; s < kNonDecodableSamples;) {
    const Word idx = pick(rng);
    const WordPair x{idx / x2s, idx % x2s};
    if (d.contains(x)) continue;
    sampled += term(x.first, x.second, block_prob(src, x.first, x.second));
    ++s;
  }
  est.value += sampled * double(outside) / double(kNonDecodableSamples);
  return est;
}

namespace {

struct PlaintextPass {
  std::vector<double> cipher;  // p_C
  double conditional_entropy = 0.0;  // H(C | X)
};

PlaintextPass run_plaintext_pass(const CipherModel& model,
                                 const BlockDistribution& src) {
  const Word x1s = word_space_size(src.field1(), src.n());
  const Word x2s = word_space_size(src.field2(), src.n());
  if (checked_space(x1s, x2s) > kMaxGenericPlaintextSpace) {
    throw ResourceError("plaintext space exceeds generic cap");
  }
  PlaintextPass pass;
  pass.cipher.assign(model.cipher_space(), 0.0);
  std::vector<double> cond;
  for (Word x1 = 0; x1 < x1s; ++x1) {
    const auto row = src.row_table(x1);
    for (Word x2 = 0; x2 < x2s; ++x2) {
      const double p = row[x2];
      if (p <= 0.0) continue;
      model.conditional(x1, x2, cond);
      for (std::size_t c = 0; c < cond.size(); ++c) pass.cipher[c] += p * cond[c];
      pass.conditional_entropy += p * entropy_bits(cond);
    }
  }
  return pass;
}

}  // namespace

double delta_mi(const CipherModel& model, const BlockDistribution& src) {
  const PlaintextPass pass = run_plaintext_pass(model, src);
  return clamp_nonnegative(entropy_bits(pass.cipher) - pass.conditional_entropy);
}

std::vector<double> cipher_distribution(const CipherModel& model,
                                        const BlockDistribution& src) {
  return run_plaintext_pass(model, src).cipher;
}

double cipher_divergence_from_uniform(const CipherModel& model,
                                      const BlockDistribution& src) {
  const auto pc = cipher_distribution(model, src);
  const std::vector<double> uniform(pc.size(), 1.0 / double(pc.size()));
  return kl_divergence(pc, uniform);
}

double delta_marginal(const CipherModel& model, const BlockDistribution& src,
                      const CheckDistribution& check, int terminal) {
  if (terminal != 1 && terminal != 2) {
    throw std::invalid_argument("terminal must be 1 or 2");
  }
  const Word s1 = model.cipher_space1(), s2 = model.cipher_space2();
  std::vector<double> check_marginal(terminal == 1 ? s1 : s2, 0.0);
  for (Word c1 = 0; c1 < s1; ++c1) {
    for (Word c2 = 0; c2 < s2; ++c2) {
      check_marginal[terminal == 1 ? c1 : c2] += check.probs[c1 * s2 + c2];
    }
  }
  const auto px = src.marginal_table(terminal, kMaxGenericPlaintextSpace);
  double total = 0.0;
  std::vector<double> cond;
  for (Word x = 0; x < px.size(); ++x) {
    if (px[x] <= 0.0) continue;
    model.conditional_marginal(terminal, x, cond);
    total += px[x] * kl_divergence(cond, check_marginal);
  }
  return total;
}

namespace {

std::vector<Word> affine_images(const FieldMatrix& a, const FieldVector& b,
                                Word count) {
  std::vector<Word> images(count);
  for (Word w = 0; w < count; ++w) {
    images[w] = affine_encode(FieldVector::unpack(a.field(), a.rows(), w), a, b)
                    .pack();
  }
  return images;
}

// Pushforward of a block distribution through (w1, w2) -> (img1[w1], img2[w2]).
std::vector<double> pushforward(const BlockDistribution& d,
                                const std::vector<Word>& img1,
                                const std::vector<Word>& img2, Word out1,
                                Word out2) {
  if (checked_space(img1.size(), img2.size()) > kMaxAffineKeySpace) {
    throw ResourceError("block space exceeds affine enumeration cap");
  }
  std::vector<double> out(out1 * out2, 0.0);
  for (Word w1 = 0; w1 < img1.size(); ++w1) {
    const auto row = d.row_table(w1);
    double* dst = out.data() + img1[w1] * out2;
    for (Word w2 = 0; w2 < img2.size(); ++w2) dst[img2[w2]] += row[w2];
  }
  return out;
}

std::vector<double> affine_pushforward(const AffineEncoderPair& enc,
                                       const BlockDistribution& d,
                                       bool with_offsets) {
  const Word n1 = word_space_size(enc.field(1), enc.n());
  const Word n2 = word_space_size(enc.field(2), enc.n());
  if (checked_space(n1, n2) > kMaxAffineKeySpace) {
    throw ResourceError("block space exceeds affine enumeration cap");
  }
  const FieldVector zero1(enc.field(1), enc.m1()), zero2(enc.field(2), enc.m2());
  const auto img1 =
      affine_images(enc.matrix(1), with_offsets ? enc.offset(1) : zero1, n1);
  const auto img2 =
      affine_images(enc.matrix(2), with_offsets ? enc.offset(2) : zero2, n2);
  return pushforward(d, img1, img2, word_space_size(enc.field(1), enc.m1()),
                     word_space_size(enc.field(2), enc.m2()));
}

void require_matching(const AffineEncoderPair& enc, const BlockDistribution& d) {
  if (d.n() != enc.n() || !(d.field1() == enc.field(1)) ||
      !(d.field2() == enc.field(2))) {
    throw std::invalid_argument("encoders and distribution disagree on shape");
  }
}

}  // namespace

std::vector<double> compressed_key_distribution(const AffineEncoderPair& enc,
                                                const BlockDistribution& keys) {
  require_matching(enc, keys);
  return affine_pushforward(enc, keys, true);
}

double delta_affine(const AffineEncoderPair& enc, const BlockDistribution& keys) {
  const auto pk = compressed_key_distribution(enc, keys);
  return clamp_nonnegative(
      uniform_bits(enc.m1(), enc.m2(), enc.field(1).q(), enc.field(2).q()) -
      entropy_bits(pk));
}

double delta_marginal_affine(const AffineEncoderPair& enc,
                             const BlockDistribution& keys, int terminal) {
  require_matching(enc, keys);
  const FieldMatrix& a = enc.matrix(terminal);
  const Word count = word_space_size(a.field(), enc.n());
  if (count > kMaxAffineKeySpace) {
    throw ResourceError("key block space exceeds affine enumeration cap");
  }
  const auto pk = keys.marginal_table(terminal, kMaxAffineKeySpace);
  const auto img = affine_images(a, enc.offset(terminal), count);
  std::vector<double> out(word_space_size(a.field(), a.cols()), 0.0);
  for (Word w = 0; w < count; ++w) out[img[w]] += pk[w];
  return clamp_nonnegative(double(a.cols()) * std::log2(double(a.field().q())) -
                           entropy_bits(out));
}

namespace {

using Complex = std::complex<double>;

// In-place multidimensional DFT over Z_{r_0} x ... x Z_{r_{k-1}}.
void group_dft(std::vector<Complex>& v, const std::vector<unsigned>& radices,
               bool inverse) {
  const std::size_t total = v.size();
  std::size_t inner = total;
  std::vector<Complex> line, out;
  for (unsigned r : radices) {
    inner /= r;
    std::vector<Complex> twiddle(r);
    for (unsigned j = 0; j < r; ++j) {
      const double angle =
          (inverse ? 2.0 : -2.0) * std::numbers::pi * double(j) / double(r);
      twiddle[j] = j == 0 ? Complex(1.0, 0.0) : std::polar(1.0, angle);
    }
    line.resize(r);
    out.resize(r);
    for (std::size_t outer = 0; outer < total; outer += inner * r) {
      for (std::size_t off = 0; off < inner; ++off) {
        for (unsigned t = 0; t < r; ++t) line[t] = v[outer + off + t * inner];
        for (unsigned f = 0; f < r; ++f) {
          Complex acc = 0.0;
          for (unsigned t = 0; t < r; ++t) acc += line[t] * twiddle[(f * t) % r];
          out[f] = acc;
        }
        for (unsigned f = 0; f < r; ++f) v[outer + off + f * inner] = out[f];
      }
    }
  }
}

}  // namespace

std::vector<double> group_convolve(const std::vector<double>& a,
                                   const std::vector<double>& b,
                                   const std::vector<unsigned>& radices) {
  std::size_t total = 1;
  for (unsigned r : radices) total *= r;
  if (a.size() != total || b.size() != total) {
    throw std::invalid_argument("group_convolve: size does not match radices");
  }
  std::vector<Complex> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  group_dft(fa, radices, false);
  group_dft(fb, radices, false);
  for (std::size_t i = 0; i < total; ++i) fa[i] *= fb[i];
  group_dft(fa, radices, true);
  std::vector<double> out(total);
  for (std::size_t i = 0; i < total; ++i) {
    out[i] = clamp_nonnegative(fa[i].real() / double(total));
  }
  return out;
}

AffineLeakage affine_leakage(const AffineEncoderPair& enc,
                             const BlockDistribution& src,
                             const BlockDistribution& keys) {
  require_matching(enc, src);
  require_matching(enc, keys);
  const auto pk = affine_pushforward(enc, keys, true);
  const auto px = affine_pushforward(enc, src, false);
  std::vector<unsigned> radices(enc.m1(), enc.field(1).q());
  radices.insert(radices.end(), enc.m2(), enc.field(2).q());
  const auto pc = group_convolve(px, pk, radices);
  const double full =
      uniform_bits(enc.m1(), enc.m2(), enc.field(1).q(), enc.field(2).q());
  const double hk = entropy_bits(pk);
  const double hc = entropy_bits(pc);
  return {clamp_nonnegative(full - hk), clamp_nonnegative(hc - hk),
          clamp_nonnegative(full - hc)};
}

Lemma2Bound lemma2_bound(std::size_t n, std::size_t m1, std::size_t m2,
                         unsigned q1, unsigned q2, const EntropySet& keys) {
  const double bits1 = double(m1) * std::log2(double(q1));
  const double bits2 = double(m2) * std::log2(double(q2));
  const double nn = double(n);
  Lemma2Bound b;
  b.raw = std::max({bits1 - nn * keys.h1, bits2 - nn * keys.h2,
                    bits1 + bits2 - nn * keys.h12});
  b.reported = std::max(b.raw, 0.0);
  return b;
}

double error_probability_exact(const BlockDistribution& src,
                               const DecodingSet& d) {
  const Word x1s = word_space_size(src.field1(), src.n());
  const Word x2s = word_space_size(src.field2(), src.n());
  const Word space = checked_space(x1s, x2s);
  if (d.size() == space) return 0.0;
  if (space <= kMaxGenericPlaintextSpace) {
    // Summing the complement avoids cancellation in 1 - P(D).
    double missed = 0.0;
    for (Word x1 = 0; x1 < x1s; ++x1) {
      const auto row = src.row_table(x1);
      for (Word x2 = 0; x2 < x2s; ++x2) {
        if (row[x2] > 0.0 && !d.contains({x1, x2})) missed += row[x2];
      }
    }
    return std::clamp(missed, 0.0, 1.0);
  }
  double covered = 0.0;
  for (const WordPair& x : d.members()) {
    covered += block_prob(src, x.first, x.second);
  }
  return std::clamp(1.0 - covered, 0.0, 1.0);
}

SecurityReport build_report(const Cryptosystem& sys, const BlockDistribution& src,
                            const BlockDistribution& keys, double epsilon,
                            double delta_threshold,
                            const ReportOptions& options) {
  const auto& enc = sys.encoders();
  require_matching(enc, src);
  require_matching(enc, keys);
  SecurityReport r;
  const unsigned q1 = enc.field(1).q(), q2 = enc.field(2).q();
  r.r1 = double(enc.m1()) / double(enc.n()) * std::log2(double(q1));
  r.r2 = double(enc.m2()) / double(enc.n()) * std::log2(double(q2));
  r.epsilon = epsilon;
  r.delta_threshold = delta_threshold;
  const Lemma2Bound bound =
      lemma2_bound(enc.n(), enc.m1(), enc.m2(), q1, q2, entropy_set(keys.base()));
  r.lemma2_raw = bound.raw;
  r.lemma2_bound = bound.reported;
  r.delta_affine = delta_affine(enc, keys);

  const Word key_space = keys.space_size();
  const Word plain_space = src.space_size();
  const bool generic =
      sys.has_table() && key_space <= kMaxGenericKeySpace &&
      plain_space <= kExactPlaintextSpace &&
      checked_space(key_space, plain_space) <= options.generic_work_budget;
  if (generic) {
    const CipherModel model(make_oracle(sys), keys);
    const DecodingSet& d = sys.decoding_set();
    const DeltaEstimate est = delta_exact(model, src, d, options.seed);
    r.generic_path = true;
    r.delta = est.value;
    r.delta_exact = est.exact;
    r.delta_mi = delta_mi(model, src);
    r.div_cipher_uniform = cipher_divergence_from_uniform(model, src);
    const CheckDistribution check = check_distribution(model, d);
    r.delta_1 = delta_marginal(model, src, check, 1);
    r.delta_2 = delta_marginal(model, src, check, 2);
  } else {
    const AffineLeakage leak = affine_leakage(enc, src, keys);
    r.delta = leak.delta;
    r.delta_mi = leak.delta_mi;
    r.div_cipher_uniform = leak.div_cipher_uniform;
    r.delta_1 = delta_marginal_affine(enc, keys, 1);
    r.delta_2 = delta_marginal_affine(enc, keys, 2);
  }

  if (!options.monte_carlo && sys.has_table()) {
    r.p_e = error_probability_exact(src, sys.decoding_set());
  } else {
    std::mt19937_64 rng(options.seed);
    std::size_t failures = 0;
    for (std::size_t t = 0; t < options.monte_carlo_trials; ++t) {
      if (!roundtrip_trial(sys, src, keys, rng).success) ++failures;
    }
    r.p_e = options.monte_carlo_trials
                ? double(failures) / double(options.monte_carlo_trials)
                : 0.0;
    r.p_e_exact = false;
  }
  r.reliable = r.p_e <= delta_threshold;
  r.secure = r.delta <= epsilon;
  return r;
}

}  // namespace dsc
