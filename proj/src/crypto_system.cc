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

#include <stdexcept>

namespace dsc {

Cryptosystem::Cryptosystem(AffineEncoderPair enc, unsigned workers)
    : enc_(std::move(enc)) {
  auto table = std::make_shared<DecoderTable>(build_decoder_table(enc_, workers));
  decoding_set_ = std::make_shared<DecodingSet>(dsc::decoding_set(*table));
  table_ = std::move(table);
}

Cryptosystem::Cryptosystem(AffineEncoderPair enc, DecoderTable table)
    : enc_(std::move(enc)) {
  if (table.n() != enc_.n() || table.m1() != enc_.m1() ||
      table.m2() != enc_.m2() || !(table.field1() == enc_.field(1)) ||
      !(table.field2() == enc_.field(2))) {
    throw std::invalid_argument("decoder table does not match encoders");
  }
  auto t = std::make_shared<DecoderTable>(std::move(table));
  decoding_set_ = std::make_shared<DecodingSet>(dsc::decoding_set(*t));
  table_ = std::move(t);
}

Cryptosystem::Cryptosystem(AffineEncoderPair enc, std::nullptr_t)
    : enc_(std::move(enc)) {}

Cryptosystem Cryptosystem::on_demand(AffineEncoderPair enc) {
  return Cryptosystem(std::move(enc), nullptr);
}

const DecoderTable& Cryptosystem::table() const {
  if (!table_) throw std::logic_error("cryptosystem has no decoder table");
  return *table_;
}

const DecodingSet& Cryptosystem::decoding_set() const {
  if (!decoding_set_) throw std::logic_error("cryptosystem has no decoder table");
  return *decoding_set_;
}

WordPair Cryptosystem::decode_syndromes(Word s1, Word s2) const {
  if (table_) return table_->lookup(s1, s2);
  return min_entropy_decode(enc_, s1, s2);
}

namespace {

void require_block(const Cryptosystem& sys, int terminal, const FieldVector& v) {
  if (v.size() != sys.n() || !(v.field() == sys.encoders().field(terminal))) {
    throw std::invalid_argument("block has wrong length or field");
  }
}

}  // namespace

CompressedWord compress_key(const Cryptosystem& sys, int terminal,
                            const FieldVector& k) {
  require_block(sys, terminal, k);
  const auto& enc = sys.encoders();
  return {WordRole::kCompressedKey,
          affine_encode(k, enc.matrix(terminal), enc.offset(terminal))};
}

CompressedWord encrypt(const Cryptosystem& sys, int terminal,
                       const FieldVector& k, const FieldVector& x) {
  require_block(sys, terminal, k);
  require_block(sys, terminal, x);
  const auto& enc = sys.encoders();
  return {WordRole::kCiphertext,
          affine_encode(x + k, enc.matrix(terminal), enc.offset(terminal))};
}

std::pair<FieldVector, FieldVector> decrypt(const Cryptosystem& sys,
                                            const FieldVector& k1,
                                            const FieldVector& k2,
                                            const CompressedWord& c1,
                                            const CompressedWord& c2) {
  if (c1.role != WordRole::kCiphertext || c2.role != WordRole::kCiphertext) {
    throw std::invalid_argument("decrypt expects ciphertext words");
  }
  if (c1.word.size() != sys.m1() || c2.word.size() != sys.m2()) {
    throw std::invalid_argument("ciphertext length mismatch");
  }
  const FieldVector s1 = c1.word - compress_key(sys, 1, k1).word;
  const FieldVector s2 = c2.word - compress_key(sys, 2, k2).word;
  const WordPair out = sys.decode_syndromes(s1.pack(), s2.pack());
  return {FieldVector::unpack(sys.encoders().field(1), sys.n(), out.first),
          FieldVector::unpack(sys.encoders().field(2), sys.n(), out.second)};
}

TrialOutcome roundtrip_trial(const Cryptosystem& sys,
                             const BlockDistribution& src,
                             const BlockDistribution& keys,
                             std::mt19937_64& rng) {
  if (src.n() != sys.n() || keys.n() != sys.n() ||
      !(src.field1() == keys.field1()) || !(src.field2() == keys.field2())) {
    throw std::invalid_argument("source, keys and system disagree on shape");
  }
  std::mt19937_64 source_stream(rng());
  std::mt19937_64 key_stream(rng());
  const auto [x1, x2] = sample_block(src, source_stream);
  const auto [k1, k2] = sample_block(keys, key_stream);
  CompressedWord c1 = encrypt(sys, 1, k1, x1);
  CompressedWord c2 = encrypt(sys, 2, k2, x2);
  const auto [y1, y2] = decrypt(sys, k1, k2, c1, c2);
  return {y1 == x1 && y2 == x2, std::move(c1), std::move(c2)};
}

}  // namespace dsc
