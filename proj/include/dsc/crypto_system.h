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
#include <memory>
#include <random>
#include <utility>

#include "dsc/codec.h"
#include "dsc/gf_linalg.h"
#include "dsc/prob_core.h"

namespace dsc {

enum class WordRole { kCiphertext, kCompressedSource, kCompressedKey };

// A length-m_i word on one of the compressed interfaces.
struct CompressedWord {
  WordRole role;
  FieldVector word;
};

// One-time pad with post-encryption affine compression at two terminals and
// a joint decoder at the sink:
//   C_i = (x_i + k_i) A_i + b_i
//   decrypt = psi(C_1 - (k_1 A_1 + b_1), C_2 - (k_2 A_2 + b_2)).
// The decoder is a prebuilt table when one fits the caps, otherwise each
// syndrome pair is decoded on demand by the same minimum-entropy rule.
class Cryptosystem {
 public:
  // Builds the decoder table; throws ResourceError past the codec caps.
  explicit Cryptosystem(AffineEncoderPair enc, unsigned workers = 1);

  // Uses the given table as psi, even if it is not the minimum-entropy one.
  Cryptosystem(AffineEncoderPair enc, DecoderTable table);

  // No table: decrypt searches the coset product per call.
  static Cryptosystem on_demand(AffineEncoderPair enc);

  const AffineEncoderPair& encoders() const { return enc_; }
  std::size_t n() const { return enc_.n(); }
  std::size_t m1() const { return enc_.m1(); }
  std::size_t m2() const { return enc_.m2(); }

  bool has_table() const { return table_ != nullptr; }
  // Requires has_table().
  const DecoderTable& table() const;
  const DecodingSet& decoding_set() const;

  // psi applied to a pair of packed syndromes.
  WordPair decode_syndromes(Word s1, Word s2) const;

 private:
  explicit Cryptosystem(AffineEncoderPair enc, std::nullptr_t);

  AffineEncoderPair enc_;
  std::shared_ptr<const DecoderTable> table_;
  std::shared_ptr<const DecodingSet> decoding_set_;
};

// Compressed key K~_i = k_i A_i + b_i.
CompressedWord compress_key(const Cryptosystem& sys, int terminal,
                            const FieldVector& k);

CompressedWord encrypt(const Cryptosystem& sys, int terminal,
                       const FieldVector& k, const FieldVector& x);

// Throws std::invalid_argument unless both words are ciphertexts of the
// right length.
std::pair<FieldVector, FieldVector> decrypt(const Cryptosystem& sys,
                                            const FieldVector& k1,
                                            const FieldVector& k2,
                                            const CompressedWord& c1,
                                            const CompressedWord& c2);

struct TrialOutcome {
  bool success;
  // What an eavesdropper on the public channel sees.
  CompressedWord c1;
  CompressedWord c2;
};

// Draws a source block and a key block from independent streams seeded off
// `rng`, encrypts, decrypts, and compares.
TrialOutcome roundtrip_trial(const Cryptosystem& sys,
                             const BlockDistribution& src,
                             const BlockDistribution& keys,
                             std::mt19937_64& rng);

}  // namespace dsc
