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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "dsc/errors.h"

namespace dsc {
namespace {

// Direct (x + k) A + b over residues, written out independently of the
// library encoders.
Word cipher_word(const AffineEncoderPair& enc, int i, Word k, Word x) {
  const FieldMatrix& a = enc.matrix(i);
  const unsigned q = a.field().q();
  const std::size_t n = enc.n();
  std::vector<unsigned> kd(n), xd(n);
  for (std::size_t t = n; t-- > 0;) {
    kd[t] = k % q;
    xd[t] = x % q;
    k /= q;
    x /= q;
  }
  Word out = 0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    unsigned acc = enc.offset(i)[c];
    for (std::size_t r = 0; r < n; ++r) acc += ((xd[r] + kd[r]) % q) * a.at(r, c);
    out = out * q + acc % q;
  }
  return out;
}

double pmf_at(const JointPmf& p, Word w1, Word w2, std::size_t n) {
  double prob = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    prob *= p(w1 % p.q1(), w2 % p.q2());
    w1 /= p.q1();
    w2 /= p.q2();
  }
  return prob;
}

double kl_bits(const std::vector<double>& p, const std::vector<double>& r) {
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) d += p[i] * std::log2(p[i] / r[i]);
  }
  return d;
}

double entropy(const std::vector<double>& p) {
  double h = 0;
  for (double v : p) {
    if (v > 0) h -= v * std::log2(v);
  }
  return h;
}

// Every (x1, x2, k1, k2) quadruple enumerated explicitly.
struct BruteForce {
  Word nx1, nx2, s1, s2;
  std::vector<std::vector<double>> cond;  // [x1 * nx2 + x2][c]
  std::vector<double> px;
  std::vector<double> check;
  double delta = 0, delta_mi = 0, div_uniform = 0, p_e = 0;

  BruteForce(const AffineEncoderPair& enc, const DecodingSet& d, const JointPmf& src,
             const JointPmf& keys) {
    const std::size_t n = enc.n();
    nx1 = word_space_size(enc.field(1), n);
    nx2 = word_space_size(enc.field(2), n);
    s1 = word_space_size(enc.field(1), enc.m1());
    s2 = word_space_size(enc.field(2), enc.m2());
    cond.assign(nx1 * nx2, std::vector<double>(s1 * s2, 0.0));
    px.assign(nx1 * nx2, 0.0);
    for (Word x1 = 0; x1 < nx1; ++x1) {
      for (Word x2 = 0; x2 < nx2; ++x2) {
        px[x1 * nx2 + x2] = pmf_at(src, x1, x2, n);
        for (Word k1 = 0; k1 < nx1; ++k1) {
          for (Word k2 = 0; k2 < nx2; ++k2) {
            const Word c = cipher_word(enc, 1, k1, x1) * s2 + cipher_word(enc, 2, k2, x2);
            cond[x1 * nx2 + x2][c] += pmf_at(keys, k1, k2, n);
          }
        }
      }
    }
    check.assign(s1 * s2, 0.0);
    for (const WordPair& x : d.members()) {
      for (Word c = 0; c < s1 * s2; ++c) check[c] += cond[x.first * nx2 + x.second][c] / double(d.size());
    }
    std::vector<double> pc(s1 * s2, 0.0);
    double h_c_given_x = 0;
    for (Word x = 0; x < nx1 * nx2; ++x) {
      if (px[x] == 0) continue;
      delta += px[x] * kl_bits(cond[x], check);
      h_c_given_x += px[x] * entropy(cond[x]);
      for (Word c = 0; c < s1 * s2; ++c) pc[c] += px[x] * cond[x][c];
    }
    delta_mi = entropy(pc) - h_c_given_x;
    div_uniform = std::log2(double(s1 * s2)) - entropy(pc);
    p_e = 1.0;
    for (const WordPair& x : d.members()) p_e -= px[x.first * nx2 + x.second];
  }
};

JointPmf random_pmf(std::mt19937_64& rng, unsigned q) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> t(q * q);
  double s = 0;
  for (double& v : t) s += (v = u(rng));
  for (double& v : t) v /= s;
  return JointPmf(q, q, t);
}

const JointPmf kEqualBits = JointPmf::from_rows({{0.5, 0.0}, {0.0, 0.5}});
const JointPmf kUniformBits = JointPmf::uniform(2, 2);

CipherModel model_for(const Cryptosystem& sys, const JointPmf& keys) {
  return CipherModel(make_oracle(sys), BlockDistribution(keys, sys.n()));
}

TEST(ConditionalCipherDist, IdentityPadWithUniformKeysIsUniform) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  const auto dist = conditional_cipher_dist(make_oracle(sys), BlockDistribution(kUniformBits, 2), 3, 1);
  EXPECT_EQ(dist.space1, 4u);
  EXPECT_EQ(dist.space2, 4u);
  for (double p : dist.probs) EXPECT_NEAR(p, 1.0 / 16, 1e-15);
}

TEST(ConditionalCipherDist, PointMassKeysGivePointMass) {
  std::mt19937_64 rng(1);
  const FieldSpec f(3);
  const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, 2, 1, 2, true));
  const JointPmf point = JointPmf::from_rows({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  const auto dist = conditional_cipher_dist(model_for(sys, point), 5, 7);
  // Keys are the blocks (1 1) and (2 2), packed as 4 and 8.
  const Word c = cipher_word(sys.encoders(), 1, 4, 5) * 9 + cipher_word(sys.encoders(), 2, 8, 7);
  for (Word i = 0; i < dist.probs.size(); ++i) EXPECT_EQ(dist.probs[i], i == c ? 1.0 : 0.0);
}

TEST(ConditionalCipherDist, ParityEncodersWithSharedKeys) {
  const FieldSpec f(2);
  const auto a = FieldMatrix::from_rows(f, {{1}, {1}});
  const Cryptosystem sys(AffineEncoderPair(a, a));
  const CipherModel model = model_for(sys, kEqualBits);
  for (Word x1 = 0; x1 < 4; ++x1) {
    for (Word x2 = 0; x2 < 4; ++x2) {
      const auto dist = conditional_cipher_dist(model, x1, x2);
      const unsigned parity = (std::popcount(x1) + std::popcount(x2)) % 2;
      for (Word c1 = 0; c1 < 2; ++c1) {
        for (Word c2 = 0; c2 < 2; ++c2) {
          const double expected = ((c1 ^ c2) == parity) ? 0.5 : 0.0;
          EXPECT_NEAR(dist.probs[c1 * 2 + c2], expected, 1e-15);
        }
      }
      const CheckDistribution check = check_distribution(model, sys.decoding_set());
      EXPECT_NEAR(delta_pointwise(dist, check), 1.0, 1e-12);
    }
  }
}

TEST(CipherModel, RejectsLargeKeySpaces) {
  const FieldSpec f(2);
  const Cryptosystem sys = Cryptosystem::on_demand(AffineEncoderPair::identity(f, f, 11));
  EXPECT_THROW(model_for(sys, kUniformBits), ResourceError);
}

TEST(CheckDistribution, UniformOnValidSystems) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 12; ++trial) {
    const unsigned q = trial % 3 == 0 ? 3 : 2;
    const FieldSpec f(q);
    const std::size_t n = q == 3 ? 2 : 3;
    const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, n, 1 + rng() % n, 1 + rng() % n, true));
    const CheckDistribution check = check_distribution(model_for(sys, random_pmf(rng, q)), sys.decoding_set());
    EXPECT_TRUE(check.valid);
    EXPECT_LT(check.max_deviation, 1e-12);
  }
  const FieldSpec f(2);
  const Cryptosystem pad(AffineEncoderPair::identity(f, f, 2));
  EXPECT_TRUE(check_distribution(model_for(pad, kUniformBits), pad.decoding_set()).valid);
}

TEST(DecodingSetSums, OneOnRandomSystems) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldSpec f(2);
    const std::size_t n = 1 + rng() % 3;
    const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, n, 1 + rng() % n, 1 + rng() % n, true));
    const Lemma1Result r = lemma1_verify(model_for(sys, random_pmf(rng, 2)), sys.decoding_set());
    EXPECT_LT(r.max_deviation, 1e-12);
  }
}

// Two syndrome pairs share one representative, so D loses a member. With a
// point-mass key every conditional is a point mass and the lost member's
// ciphertext gets no mass at all.
TEST(CorruptedTable, DuplicateEntryIsDetected) {
  std::mt19937_64 rng(4);
  for (unsigned q : {2u, 3u}) {
    const FieldSpec f(q);
    const auto enc = AffineEncoderPair::sample(rng, f, f, 3, 2, 1, true);
    const Cryptosystem good(enc);
    const DecoderTable bad_table = good.table().with_entry(0, 1, good.table().lookup(0, 0));
    const Cryptosystem bad(enc, bad_table);
    const double floor = std::pow(double(q), -3.0);

    std::vector<double> point(q * q, 0.0);
    point[0] = 1.0;
    const CipherModel model = model_for(bad, JointPmf(q, q, point));
    EXPECT_GE(lemma1_verify(model, bad.decoding_set()).max_deviation, 1.0 - 1e-12);
    const CheckDistribution check = check_distribution(model, bad.decoding_set());
    EXPECT_FALSE(check.valid);
    EXPECT_NEAR(check.max_deviation, floor, 1e-12);

    const CipherModel noisy = model_for(bad, random_pmf(rng, q));
    EXPECT_GE(lemma1_verify(noisy, bad.decoding_set()).max_deviation, floor - 1e-12);
    const PartitionResult part = key_preimage_partition_verify_all(noisy, bad.decoding_set());
    EXPECT_FALSE(part.covering);
  }
}

// D holds two members of one coset, so their key-preimage sets coincide.
TEST(CorruptedTable, CosetMateBreaksDisjointness) {
  std::mt19937_64 rng(5);
  const FieldSpec f(2);
  const auto enc = AffineEncoderPair::sample(rng, f, f, 3, 2, 2, false);
  const Cryptosystem good(enc);
  const auto kernel = left_kernel_basis(enc.matrix(1));
  ASSERT_FALSE(kernel.empty());
  const WordPair rep = good.table().lookup(0, 0);
  const Word mate = (FieldVector::unpack(f, 3, rep.first) + kernel[0]).pack();
  const Cryptosystem bad(enc, good.table().with_entry(1, 1, {mate, rep.second}));
  const CipherModel model = model_for(bad, random_pmf(rng, 2));
  const PartitionResult all = key_preimage_partition_verify_all(model, bad.decoding_set());
  EXPECT_FALSE(all.disjoint);
  EXPECT_GT(all.failing_ciphers, 0u);
  EXPECT_FALSE(key_preimage_partition_verify(model, bad.decoding_set(), 0, 0).disjoint);
}

TEST(KeyPartition, IdentityPadHasSingletonPreimages) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  const PartitionResult r = key_preimage_partition_verify_all(model_for(sys, kUniformBits), sys.decoding_set());
  EXPECT_TRUE(r.disjoint);
  EXPECT_TRUE(r.covering);
  EXPECT_EQ(r.failing_ciphers, 0u);
}

TEST(KeyPartition, HoldsForEveryCiphertextOfRandomSystems) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldSpec f(2);
    const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, 2, 1, 1, true));
    const CipherModel model = model_for(sys, random_pmf(rng, 2));
    for (Word c1 = 0; c1 < 2; ++c1) {
      for (Word c2 = 0; c2 < 2; ++c2) {
        const PartitionResult r = key_preimage_partition_verify(model, sys.decoding_set(), c1, c2);
        EXPECT_TRUE(r.disjoint && r.covering);
      }
    }
    EXPECT_EQ(key_preimage_partition_verify_all(model, sys.decoding_set()).failing_ciphers, 0u);
  }
}

TEST(DeltaPointwise, Examples) {
  const CheckDistribution check{std::vector<double>(4, 0.25), 0.0, true};
  ConditionalCipherDist uniform{2, 2, std::vector<double>(4, 0.25)};
  EXPECT_EQ(delta_pointwise(uniform, check), 0.0);
  ConditionalCipherDist point{2, 2, {0, 0, 1, 0}};
  EXPECT_NEAR(delta_pointwise(point, check), 2.0, 1e-12);
}

TEST(Delta, MatchesBruteForceOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const unsigned q = trial % 3 == 0 ? 3 : 2;
    const FieldSpec f(q);
    const std::size_t n = q == 3 ? 2 : 1 + rng() % 3;
    const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, n, 1 + rng() % n, 1 + rng() % n, true));
    const JointPmf src = random_pmf(rng, q), keys = random_pmf(rng, q);
    const BruteForce oracle(sys.encoders(), sys.decoding_set(), src, keys);
    const CipherModel model = model_for(sys, keys);
    const BlockDistribution block_src(src, n);
    const DeltaEstimate est = delta_exact(model, block_src, sys.decoding_set());
    EXPECT_TRUE(est.exact);
    EXPECT_NEAR(est.value, oracle.delta, 1e-10);
    EXPECT_NEAR(delta_mi(model, block_src), oracle.delta_mi, 1e-10);
    EXPECT_NEAR(cipher_divergence_from_uniform(model, block_src), oracle.div_uniform, 1e-10);
    EXPECT_NEAR(error_probability_exact(block_src, sys.decoding_set()), oracle.p_e, 1e-12);
    EXPECT_NEAR(delta_affine(sys.encoders(), BlockDistribution(keys, n)), oracle.delta, 1e-10);
  }
}

TEST(Delta, IdentityPadWithUniformKeysLeaksNothing) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  const CipherModel model = model_for(sys, kUniformBits);
  const BlockDistribution src(JointPmf::from_rows({{0.4, 0.1}, {0.2, 0.3}}), 2);
  EXPECT_LT(delta_exact(model, src, sys.decoding_set()).value, 1e-12);
  EXPECT_LT(delta_mi(model, src), 1e-12);
  EXPECT_LT(delta_affine(sys.encoders(), BlockDistribution(kUniformBits, 2)), 1e-12);
}

TEST(Delta, SharedKeyIdentityPadLeaksTwoBits) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  const CipherModel model = model_for(sys, kEqualBits);
  const BlockDistribution src(JointPmf::from_rows({{0.3, 0.2}, {0.1, 0.4}}), 2);
  const BlockDistribution keys(kEqualBits, 2);
  const BruteForce oracle(sys.encoders(), sys.decoding_set(), src.base(), kEqualBits);
  const double delta = delta_exact(model, src, sys.decoding_set()).value;
  EXPECT_NEAR(oracle.delta, 2.0, 1e-12);
  EXPECT_NEAR(delta, 2.0, 1e-9);
  EXPECT_NEAR(delta_affine(sys.encoders(), keys), 2.0, 1e-9);
  EXPECT_NEAR(delta_mi(model, src), delta - cipher_divergence_from_uniform(model, src), 1e-9);
  EXPECT_NEAR(delta_mi(model, src), oracle.delta_mi, 1e-10);

  const CheckDistribution check = check_distribution(model, sys.decoding_set());
  EXPECT_NEAR(delta_marginal(model, src, check, 1), 0.0, 1e-12);
  EXPECT_NEAR(delta_marginal_affine(sys.encoders(), keys, 1), 0.0, 1e-12);
  EXPECT_NEAR(delta_marginal_affine(sys.encoders(), keys, 2), 0.0, 1e-12);

  const Lemma2Bound b = lemma2_bound(2, 2, 2, 2, 2, entropy_set(kEqualBits));
  EXPECT_NEAR(b.raw, 2.0, 1e-12);
  EXPECT_NEAR(b.reported, 2.0, 1e-12);
}

TEST(DeltaMi, PointMassKeysRevealThePlaintext) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  const JointPmf point = JointPmf::from_rows({{0.0, 0.0}, {1.0, 0.0}});
  const CipherModel model = model_for(sys, point);
  EXPECT_NEAR(delta_mi(model, BlockDistribution(kUniformBits, 2)), 4.0, 1e-12);
  const BlockDistribution keys(point, 2);
  EXPECT_NEAR(delta_marginal_affine(sys.encoders(), keys, 1), 2.0, 1e-12);
  EXPECT_NEAR(delta_marginal_affine(sys.encoders(), keys, 2), 2.0, 1e-12);
  const CheckDistribution check = check_distribution(model, sys.decoding_set());
  EXPECT_NEAR(delta_marginal(model, BlockDistribution(kUniformBits, 2), check, 2), 2.0, 1e-12);
}

TEST(DeltaMarginal, UniformIndependentKeysGiveZero) {
  std::mt19937_64 rng(8);
  const FieldSpec f(3);
  const auto enc = AffineEncoderPair::sample(rng, f, f, 3, 2, 1, true);
  const BlockDistribution keys(JointPmf::uniform(3, 3), 3);
  EXPECT_NEAR(delta_marginal_affine(enc, keys, 1), 0.0, 1e-12);
  EXPECT_NEAR(delta_affine(enc, keys), 0.0, 1e-12);
}

TEST(DeltaAffine, OffsetsDoNotMatter) {
  std::mt19937_64 rng(9);
  for (unsigned q : {2u, 3u}) {
    const FieldSpec f(q);
    const auto enc = AffineEncoderPair::sample(rng, f, f, 3, 2, 2, false);
    const BlockDistribution keys(random_pmf(rng, q), 3);
    const auto shifted = enc.with_offsets(FieldVector(f, std::vector<Residue>{1, 0}),
                                          FieldVector(f, std::vector<Residue>{1, 1}));
    EXPECT_NEAR(delta_affine(enc, keys), delta_affine(shifted, keys), 1e-12);
    const BlockDistribution src(random_pmf(rng, q), 3);
    const Cryptosystem a(enc), b(shifted);
    EXPECT_NEAR(delta_exact(CipherModel(make_oracle(a), keys), src, a.decoding_set()).value,
                delta_exact(CipherModel(make_oracle(b), keys), src, b.decoding_set()).value, 1e-10);
  }
}

TEST(GroupConvolve, MatchesDirectSum) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 1);
  const std::vector<unsigned> radices{3, 2, 5};
  const std::size_t total = 30;
  std::vector<double> a(total), b(total);
  for (double& v : a) v = u(rng);
  for (double& v : b) v = u(rng);
  auto digits = [&](std::size_t i) {
    std::vector<unsigned> d(3);
    for (std::size_t j = 3; j-- > 0;) {
      d[j] = i % radices[j];
      i /= radices[j];
    }
    return d;
  };
  std::vector<double> direct(total, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      const auto di = digits(i), dj = digits(j);
      std::size_t k = 0;
      for (std::size_t t = 0; t < 3; ++t) k = k * radices[t] + (di[t] + dj[t]) % radices[t];
      direct[k] += a[i] * b[j];
    }
  }
  const auto fast = group_convolve(a, b, radices);
  for (std::size_t i = 0; i < total; ++i) EXPECT_NEAR(fast[i], direct[i], 1e-12);
  EXPECT_THROW(group_convolve(a, std::vector<double>(29), radices), std::invalid_argument);
}

TEST(AffineLeakage, AgreesWithGenericPath) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned q = trial % 2 ? 3 : 2;
    const FieldSpec f(q);
    const std::size_t n = q == 3 ? 3 : 4;
    const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, n, 1 + rng() % n, 1 + rng() % n, true));
    const BlockDistribution src(random_pmf(rng, q), n), keys(random_pmf(rng, q), n);
    const CipherModel model(make_oracle(sys), keys);
    const AffineLeakage leak = affine_leakage(sys.encoders(), src, keys);
    EXPECT_NEAR(leak.delta, delta_exact(model, src, sys.decoding_set()).value, 1e-9);
    EXPECT_NEAR(leak.delta_mi, delta_mi(model, src), 1e-9);
    EXPECT_NEAR(leak.div_cipher_uniform, cipher_divergence_from_uniform(model, src), 1e-9);
    const CheckDistribution check = check_distribution(model, sys.decoding_set());
    for (int i : {1, 2}) {
      EXPECT_NEAR(delta_marginal_affine(sys.encoders(), keys, i),
                  delta_marginal(model, src, check, i), 1e-9);
    }
  }
}

TEST(DeltaExact, SamplesOutsideDecodingSetForLargePlaintextSpaces) {
  std::mt19937_64 rng(12);
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, 9, 1, 1, true));
  const BlockDistribution keys(random_pmf(rng, 2), 9);
  const CipherModel model(make_oracle(sys), keys);
  // Uniform plaintexts make the importance weights exact.
  const DeltaEstimate est = delta_exact(model, BlockDistribution(kUniformBits, 9), sys.decoding_set(), 99);
  EXPECT_FALSE(est.exact);
  EXPECT_EQ(est.plaintexts_evaluated, sys.decoding_set().size() + kNonDecodableSamples);
  EXPECT_NEAR(est.value, delta_affine(sys.encoders(), keys), 1e-9);
}

TEST(KeyEntropyBound, Examples) {
  const Lemma2Bound uniform = lemma2_bound(4, 2, 3, 2, 2, entropy_set(kUniformBits));
  EXPECT_LE(uniform.raw, 0.0);
  EXPECT_EQ(uniform.reported, 0.0);
  const JointPmf point = JointPmf::from_rows({{1.0, 0.0, 0.0}, {0, 0, 0}, {0, 0, 0}});
  const Lemma2Bound p = lemma2_bound(3, 2, 1, 3, 3, entropy_set(point));
  EXPECT_NEAR(p.raw, 3 * std::log2(3.0), 1e-12);
}

TEST(KeyEntropyBound, DeltaDominatesOnRandomSystems) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned q = trial % 2 ? 3 : 2;
    const FieldSpec f(q);
    const std::size_t n = 1 + rng() % 4;
    const auto enc = AffineEncoderPair::sample(rng, f, f, n, 1 + rng() % n, 1 + rng() % n, true);
    const JointPmf keys = random_pmf(rng, q);
    const Lemma2Bound b = lemma2_bound(n, enc.m1(), enc.m2(), q, q, entropy_set(keys));
    EXPECT_GE(delta_affine(enc, BlockDistribution(keys, n)), b.raw - 1e-9);
  }
}

TEST(ErrorProbability, Examples) {
  const FieldSpec f(2);
  const Cryptosystem pad(AffineEncoderPair::identity(f, f, 3));
  EXPECT_NEAR(error_probability_exact(BlockDistribution(kUniformBits, 3), pad.decoding_set()), 0.0, 1e-12);
  const auto a = FieldMatrix::from_rows(f, {{1}, {1}});
  const Cryptosystem parity(AffineEncoderPair(a, a));
  EXPECT_NEAR(error_probability_exact(BlockDistribution(kUniformBits, 2), parity.decoding_set()), 0.75, 1e-12);
  // All mass on (00, 00), which is the representative of the zero syndrome.
  const JointPmf zero = JointPmf::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  EXPECT_NEAR(error_probability_exact(BlockDistribution(zero, 2), parity.decoding_set()), 0.0, 1e-12);
}

TEST(ErrorProbability, MonteCarloAgreesWithinThreeStandardErrors) {
  std::mt19937_64 rng(14);
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, 4, 2, 3, true));
  const BlockDistribution src(JointPmf::from_rows({{0.445, 0.055}, {0.055, 0.445}}), 4);
  const BlockDistribution keys(random_pmf(rng, 2), 4);
  const double exact = error_probability_exact(src, sys.decoding_set());
  std::size_t failures = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) failures += !roundtrip_trial(sys, src, keys, rng).success;
  const double se = std::sqrt(exact * (1 - exact) / double(trials));
  EXPECT_NEAR(double(failures) / double(trials), exact, 3 * se);
}

TEST(BuildReport, IdentityPadIsAdmissible) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 3));
  const BlockDistribution src(JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}}), 3);
  const SecurityReport r = build_report(sys, src, BlockDistribution(kUniformBits, 3), 1e-6, 1e-6);
  EXPECT_TRUE(r.generic_path);
  EXPECT_TRUE(r.reliable);
  EXPECT_TRUE(r.secure);
  EXPECT_TRUE(r.admissible());
  EXPECT_NEAR(r.r1, 1.0, 1e-15);
}

TEST(BuildReport, SharedKeysAreInsecureAtEpsilonOne) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  const SecurityReport r = build_report(sys, BlockDistribution(kUniformBits, 2),
                                        BlockDistribution(kEqualBits, 2), 1.0, 0.5);
  EXPECT_NEAR(r.delta, 2.0, 1e-9);
  EXPECT_FALSE(r.secure);
  EXPECT_TRUE(r.reliable);
}

TEST(BuildReport, InvariantsHoldOnRandomSystems) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned q = trial % 2 ? 3 : 2;
    const FieldSpec f(q);
    const std::size_t n = 1 + rng() % (q == 2 ? 6 : 4);
    const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, n, 1 + rng() % n, 1 + rng() % n, true));
    const BlockDistribution src(random_pmf(rng, q), n), keys(random_pmf(rng, q), n);
    const SecurityReport r = build_report(sys, src, keys, 0.5, 0.5);
    EXPECT_NEAR(r.delta, r.delta_mi + r.div_cipher_uniform, 1e-9);
    EXPECT_GE(r.delta, r.lemma2_bound - 1e-9);
    EXPECT_GE(r.delta, std::max(r.delta_1, r.delta_2) - 1e-9);
    EXPECT_NEAR(r.delta, r.delta_affine, 1e-9);
    EXPECT_EQ(r.admissible(), r.p_e <= 0.5 && r.delta <= 0.5);
  }
}

TEST(BuildReport, AffineRouteAndMonteCarloForLargerSystems) {
  std::mt19937_64 rng(16);
  const FieldSpec f(2);
  const auto enc = AffineEncoderPair::sample(rng, f, f, 10, 6, 6, true);
  const Cryptosystem sys(enc);
  const BlockDistribution src(JointPmf::from_rows({{0.445, 0.055}, {0.055, 0.445}}), 10);
  const BlockDistribution keys(JointPmf::from_rows({{0.45, 0.05}, {0.05, 0.45}}), 10);
  ReportOptions options;
  options.monte_carlo = true;
  options.monte_carlo_trials = 2000;
  options.seed = 5;
  const SecurityReport r = build_report(sys, src, keys, 1.0, 0.5, options);
  EXPECT_FALSE(r.generic_path);
  EXPECT_FALSE(r.p_e_exact);
  EXPECT_NEAR(r.delta, r.delta_mi + r.div_cipher_uniform, 1e-9);
  EXPECT_GE(r.delta, r.lemma2_bound - 1e-9);
  const double exact = error_probability_exact(src, sys.decoding_set());
  EXPECT_NEAR(r.p_e, exact, 4 * std::sqrt(exact * (1 - exact) / 2000) + 1e-3);
}

}  // namespace
}  // namespace dsc
