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

#include "dsc/crypto_system.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "dsc/codec.h"

namespace dsc {
namespace {

FieldVector random_vector(std::mt19937_64& rng, const FieldSpec& f, std::size_t len) {
  FieldVector v(f, len);
  for (std::size_t i = 0; i < len; ++i) v.set(i, static_cast<Residue>(rng() % f.q()));
  return v;
}

Cryptosystem random_system(std::mt19937_64& rng, unsigned q, std::size_t n,
                           std::size_t m1, std::size_t m2) {
  const FieldSpec f(q);
  return Cryptosystem(AffineEncoderPair::sample(rng, f, f, n, m1, m2, true));
}

TEST(Encrypt, ReducesToPlainCompressionWithoutKeyOrOffset) {
  std::mt19937_64 rng(1);
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::sample(rng, f, f, 3, 2, 2, false));
  const FieldVector zero(f, 3);
  for (Word w = 0; w < 8; ++w) {
    const auto x = FieldVector::unpack(f, 3, w);
    const CompressedWord c = encrypt(sys, 1, zero, x);
    EXPECT_EQ(c.role, WordRole::kCiphertext);
    EXPECT_EQ(c.word, linear_encode(x, sys.encoders().matrix(1)));
    EXPECT_EQ(encrypt(sys, 2, x, zero).word, compress_key(sys, 2, x).word);
  }
}

TEST(Encrypt, BothEvaluationOrdersAgree) {
  std::mt19937_64 rng(2);
  const Cryptosystem sys = random_system(rng, 2, 3, 2, 1);
  const FieldSpec f(2);
  for (int i : {1, 2}) {
    const auto& a = sys.encoders().matrix(i);
    const auto& b = sys.encoders().offset(i);
    for (Word xw = 0; xw < 8; ++xw) {
      for (Word kw = 0; kw < 8; ++kw) {
        const auto x = FieldVector::unpack(f, 3, xw), k = FieldVector::unpack(f, 3, kw);
        const auto c = encrypt(sys, i, k, x).word;
        EXPECT_EQ(c, linear_encode(x + k, a) + b);
        EXPECT_EQ(c, linear_encode(x, a) + affine_encode(k, a, b));
      }
    }
  }
  EXPECT_THROW(encrypt(sys, 1, FieldVector(f, 2), FieldVector(f, 3)), std::invalid_argument);
  EXPECT_THROW(encrypt(sys, 3, FieldVector(f, 3), FieldVector(f, 3)), std::invalid_argument);
}

TEST(Decrypt, IdentityPadRecoversEverything) {
  const FieldSpec f(3);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 2));
  for (Word x1 = 0; x1 < 9; ++x1) {
    for (Word x2 = 0; x2 < 9; ++x2) {
      const auto a = FieldVector::unpack(f, 2, x1), b = FieldVector::unpack(f, 2, x2);
      const auto k1 = FieldVector::unpack(f, 2, (x1 * 5 + 1) % 9);
      const auto k2 = FieldVector::unpack(f, 2, (x2 * 7 + 4) % 9);
      const auto out = decrypt(sys, k1, k2, encrypt(sys, 1, k1, a), encrypt(sys, 2, k2, b));
      EXPECT_EQ(out, std::make_pair(a, b));
    }
  }
}

TEST(Decrypt, RejectsWrongRolesAndLengths) {
  std::mt19937_64 rng(3);
  const Cryptosystem sys = random_system(rng, 2, 3, 2, 2);
  const FieldSpec f(2);
  const FieldVector k(f, 3);
  const CompressedWord c = encrypt(sys, 1, k, k);
  const CompressedWord key_word = compress_key(sys, 1, k);
  EXPECT_EQ(key_word.role, WordRole::kCompressedKey);
  EXPECT_THROW(decrypt(sys, k, k, key_word, c), std::invalid_argument);
  const CompressedWord short_word{WordRole::kCiphertext, FieldVector(f, 1)};
  EXPECT_THROW(decrypt(sys, k, k, c, short_word), std::invalid_argument);
}

// decrypt(encrypt) is the plain decoder applied to the plain syndromes,
// whatever the keys.
TEST(Condition, DecryptionIgnoresKeysExhaustive) {
  std::mt19937_64 rng(4);
  const FieldSpec f(2);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m1 = 1; m1 <= n; ++m1) {
      const std::size_t m2 = 1 + rng() % n;
      const Cryptosystem sys = random_system(rng, 2, n, m1, m2);
      const DecoderTable& t = sys.table();
      const Word count = word_space_size(f, n);
      for (Word x1 = 0; x1 < count; ++x1) {
        for (Word x2 = 0; x2 < count; ++x2) {
          const auto a = FieldVector::unpack(f, n, x1), b = FieldVector::unpack(f, n, x2);
          const auto plain = decode(t, linear_encode(a, sys.encoders().matrix(1)),
                                    linear_encode(b, sys.encoders().matrix(2)));
          for (Word k1 = 0; k1 < count; ++k1) {
            for (Word k2 = 0; k2 < count; ++k2) {
              const auto ka = FieldVector::unpack(f, n, k1), kb = FieldVector::unpack(f, n, k2);
              EXPECT_EQ(decrypt(sys, ka, kb, encrypt(sys, 1, ka, a), encrypt(sys, 2, kb, b)),
                        plain);
            }
          }
        }
      }
    }
  }
}

TEST(Decrypt, FailsOutsideDecodingSetForEveryKey) {
  std::mt19937_64 rng(5);
  const FieldSpec f(2);
  const Cryptosystem sys = random_system(rng, 2, 2, 1, 1);
  const DecodingSet& d = sys.decoding_set();
  for (Word x1 = 0; x1 < 4; ++x1) {
    for (Word x2 = 0; x2 < 4; ++x2) {
      const auto a = FieldVector::unpack(f, 2, x1), b = FieldVector::unpack(f, 2, x2);
      for (Word k1 = 0; k1 < 4; ++k1) {
        for (Word k2 = 0; k2 < 4; ++k2) {
          const auto ka = FieldVector::unpack(f, 2, k1), kb = FieldVector::unpack(f, 2, k2);
          const bool ok = decrypt(sys, ka, kb, encrypt(sys, 1, ka, a),
                                  encrypt(sys, 2, kb, b)) == std::make_pair(a, b);
          EXPECT_EQ(ok, d.contains({x1, x2}));
        }
      }
    }
  }
}

TEST(Cryptosystem, OnDemandDecoderMatchesTable) {
  std::mt19937_64 rng(6);
  const FieldSpec f(3);
  const auto enc = AffineEncoderPair::sample(rng, f, f, 3, 1, 2, true);
  const Cryptosystem with_table(enc);
  const Cryptosystem lazy = Cryptosystem::on_demand(enc);
  EXPECT_FALSE(lazy.has_table());
  EXPECT_THROW(lazy.table(), std::logic_error);
  for (Word s1 = 0; s1 < 3; ++s1) {
    for (Word s2 = 0; s2 < 9; ++s2) {
      EXPECT_EQ(lazy.decode_syndromes(s1, s2), with_table.decode_syndromes(s1, s2));
    }
  }
}

TEST(Cryptosystem, InjectedTableMustMatchShape) {
  const FieldSpec f(2);
  const auto enc = AffineEncoderPair::identity(f, f, 2);
  const DecoderTable other = build_decoder_table(AffineEncoderPair::identity(f, f, 1));
  EXPECT_THROW(Cryptosystem(enc, other), std::invalid_argument);
}

TEST(RoundtripTrial, IdentitySystemAlwaysSucceeds) {
  const FieldSpec f(2);
  const Cryptosystem sys(AffineEncoderPair::identity(f, f, 4));
  const BlockDistribution src(JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}}), 4);
  const BlockDistribution keys(JointPmf::uniform(2, 2), 4);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const TrialOutcome t = roundtrip_trial(sys, src, keys, rng);
    EXPECT_TRUE(t.success);
    EXPECT_EQ(t.c1.role, WordRole::kCiphertext);
  }
}

TEST(RoundtripTrial, SuccessIsMembershipInDecodingSet) {
  std::mt19937_64 rng(8);
  const FieldSpec f(2);
  const Cryptosystem sys = random_system(rng, 2, 3, 2, 2);
  for (Word x1 = 0; x1 < 8; ++x1) {
    for (Word x2 = 0; x2 < 8; ++x2) {
      const auto a = FieldVector::unpack(f, 3, x1), b = FieldVector::unpack(f, 3, x2);
      const auto ka = FieldVector::unpack(f, 3, rng() % 8), kb = FieldVector::unpack(f, 3, rng() % 8);
      const bool ok = decrypt(sys, ka, kb, encrypt(sys, 1, ka, a), encrypt(sys, 2, kb, b)) ==
                      std::make_pair(a, b);
      EXPECT_EQ(ok, sys.decoding_set().contains({x1, x2}));
    }
  }
  // A point-mass source pins the plaintext block to (111, 111).
  const BlockDistribution point(JointPmf::from_rows({{0.0, 0.0}, {0.0, 1.0}}), 3);
  const BlockDistribution keys(JointPmf::from_rows({{0.3, 0.2}, {0.1, 0.4}}), 3);
  const bool member = sys.decoding_set().contains({7, 7});
  for (int i = 0; i < 20; ++i) EXPECT_EQ(roundtrip_trial(sys, point, keys, rng).success, member);
}

TEST(RoundtripTrial, ReproducibleForFixedSeed) {
  std::mt19937_64 setup(9);
  const Cryptosystem sys = random_system(setup, 3, 3, 2, 2);
  const BlockDistribution src(JointPmf::uniform(3, 3), 3), keys(JointPmf::uniform(3, 3), 3);
  std::mt19937_64 a(10), b(10);
  for (int i = 0; i < 50; ++i) {
    const TrialOutcome x = roundtrip_trial(sys, src, keys, a);
    const TrialOutcome y = roundtrip_trial(sys, src, keys, b);
    EXPECT_EQ(x.success, y.success);
    EXPECT_EQ(x.c1.word, y.c1.word);
    EXPECT_EQ(x.c2.word, y.c2.word);
  }
}

TEST(RoundtripTrial, RejectsMismatchedDistributions) {
  std::mt19937_64 rng(11);
  const Cryptosystem sys = random_system(rng, 2, 3, 2, 2);
  const BlockDistribution wrong_n(JointPmf::uniform(2, 2), 4);
  EXPECT_THROW(roundtrip_trial(sys, wrong_n, wrong_n, rng), std::invalid_argument);
}

}  // namespace
}  // namespace dsc
