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
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dsc/codec.h"
#include "dsc/crypto_system.h"
#include "dsc/gf_linalg.h"
#include "dsc/prob_core.h"

namespace dsc {

inline constexpr Word kMaxGenericKeySpace = Word{1} << 20;
inline constexpr Word kMaxGenericPlaintextSpace = Word{1} << 20;
// Above this many plaintext pairs, delta_exact averages over D plus a sample.
inline constexpr Word kExactPlaintextSpace = Word{1} << 16;
inline constexpr std::size_t kNonDecodableSamples = 256;
inline constexpr Word kMaxAffineKeySpace = Word{1} << 24;

// Tolerances for judging a computed system.
inline constexpr double kUniformityTolerance = 1e-9;
inline constexpr double kLemmaTolerance = 1e-9;

// The encryption map of one terminal, (k_i, x_i) -> c_i, on packed words of
// lengths n (key, plaintext) and m (ciphertext).
struct TerminalCipher {
  FieldSpec field;
  std::size_t n;
  std::size_t m;
  std::function<Word(Word key, Word plain)> encrypt;
};

// Any two-terminal encryption scheme; the metrics below hold for every
// scheme that admits a decoder, not only the affine construction.
struct EncryptionOracle {
  TerminalCipher first;
  TerminalCipher second;
  const TerminalCipher& terminal(int i) const { return i == 1 ? first : second; }
};

// Oracle backed by dsc::encrypt on the given system.
EncryptionOracle make_oracle(const Cryptosystem& sys);

// Ciphertext law of an oracle under a key distribution that is independent
// of the plaintext. Ciphertext pairs are indexed c1 * q2^m2 + c2.
class CipherModel {
 public:
  // Throws ResourceError when the key space exceeds kMaxGenericKeySpace.
  CipherModel(EncryptionOracle oracle, BlockDistribution keys);

  const EncryptionOracle& oracle() const { return oracle_; }
  const BlockDistribution& keys() const { return keys_; }
  Word cipher_space() const { return cipher_space1_ * cipher_space2_; }
  Word cipher_space1() const { return cipher_space1_; }
  Word cipher_space2() const { return cipher_space2_; }
  Word key_space1() const { return key_space1_; }
  Word key_space2() const { return key_space2_; }
  double key_prob(Word k1, Word k2) const {
    return key_table_[k1 * key_space2_ + k2];
  }

  // p(. | x1, x2), overwriting `out`.
  void conditional(Word x1, Word x2, std::vector<double>& out) const;

  // p(. | x_i) for one terminal, overwriting `out`.
  void conditional_marginal(int terminal, Word x, std::vector<double>& out) const;

 private:
  EncryptionOracle oracle_;
  BlockDistribution keys_;
  Word key_space1_, key_space2_;
  Word cipher_space1_, cipher_space2_;
  std::vector<double> key_table_;
};

struct ConditionalCipherDist {
  Word space1 = 0;  // q1^m1
  Word space2 = 0;  // q2^m2
  std::vector<double> probs;
};

ConditionalCipherDist conditional_cipher_dist(const EncryptionOracle& oracle,
                                              const BlockDistribution& keys,
                                              Word x1, Word x2);
ConditionalCipherDist conditional_cipher_dist(const CipherModel& model, Word x1,
                                              Word x2);

// Ciphertext law when the plaintext pair is uniform on D.
struct CheckDistribution {
  std::vector<double> probs;
  double max_deviation = 0.0;  // from uniform
  bool valid = false;          // max_deviation < kUniformityTolerance
};

CheckDistribution check_distribution(const CipherModel& model,
                                     const DecodingSet& d);

struct Lemma1Result {
  double max_deviation = 0.0;  // max over c of |sum_{x in D} p(c|x) - 1|
  WordPair worst_cipher;
};

Lemma1Result lemma1_verify(const CipherModel& model, const DecodingSet& d);

// Key-preimage sets A_x(c) = {(k1,k2) : Phi_i(k_i, x_i) = c_i}, x in D.
struct PartitionResult {
  bool disjoint = false;
  bool covering = false;
  std::size_t failing_ciphers = 0;  // ciphertext pairs where either fails
};

PartitionResult key_preimage_partition_verify(const CipherModel& model,
                                              const DecodingSet& d, Word c1,
                                              Word c2);
// Every ciphertext pair at once.
PartitionResult key_preimage_partition_verify_all(const CipherModel& model,
                                                  const DecodingSet& d);

// D(cond || check) in bits.
double delta_pointwise(const ConditionalCipherDist& cond,
                       const CheckDistribution& check);

struct DeltaEstimate {
  double value = 0.0;
  bool exact = true;
  std::size_t plaintexts_evaluated = 0;
};

// Source-weighted average of delta_pointwise. Exact when the plaintext space
// has at most kExactPlaintextSpace pairs; otherwise exact over D plus an
// importance-weighted sample of kNonDecodableSamples pairs outside D.
DeltaEstimate delta_exact(const CipherModel& model, const BlockDistribution& src,
                          const DecodingSet& d, std::uint64_t sample_seed = 0);

// I(C1 C2; X1 X2) in bits.
double delta_mi(const CipherModel& model, const BlockDistribution& src);

// Unconditional ciphertext law p_{C1 C2}.
std::vector<double> cipher_distribution(const CipherModel& model,
                                        const BlockDistribution& src);

// D(p_{C1C2} || uniform).
double cipher_divergence_from_uniform(const CipherModel& model,
                                      const BlockDistribution& src);

// Single-terminal version of delta_exact against the terminal marginal of the
// check distribution.
double delta_marginal(const CipherModel& model, const BlockDistribution& src,
                      const CheckDistribution& check, int terminal);

// Pushforward of the key blocks through both affine encoders, indexed like
// the ciphertext pairs.
std::vector<double> compressed_key_distribution(const AffineEncoderPair& enc,
                                                const BlockDistribution& keys);

// m1 log q1 + m2 log q2 - H(K~1 K~2): the leakage of an affine scheme,
// computed without touching plaintexts.
double delta_affine(const AffineEncoderPair& enc, const BlockDistribution& keys);

// m_i log q_i - H(K~_i).
double delta_marginal_affine(const AffineEncoderPair& enc,
                             const BlockDistribution& keys, int terminal);

// Delta, I(C;X) and D(p_C || U) for an affine scheme via the group
// convolution p_C = p_{X~} * p_{K~}; scales past the generic caps.
struct AffineLeakage {
  double delta = 0.0;
  double delta_mi = 0.0;
  double div_cipher_uniform = 0.0;
};

AffineLeakage affine_leakage(const AffineEncoderPair& enc,
                             const BlockDistribution& src,
                             const BlockDistribution& keys);

// Cyclic convolution on Z_{r_0} x ... x Z_{r_{k-1}} with the first axis most
// significant in the flat index.
std::vector<double> group_convolve(const std::vector<double>& a,
                                   const std::vector<double>& b,
                                   const std::vector<unsigned>& radices);

struct Lemma2Bound {
  double raw = 0.0;       // signed maximum of the three terms
  double reported = 0.0;  // max(raw, 0)
};

Lemma2Bound lemma2_bound(std::size_t n, std::size_t m1, std::size_t m2,
                         unsigned q1, unsigned q2, const EntropySet& keys);

// Pr[(X1, X2) not in D].
double error_probability_exact(const BlockDistribution& src,
                               const DecodingSet& d);

struct ReportOptions {
  // Plaintext-pairs x key-pairs work allowed for the generic (oracle) path,
  // which also needs an exactly enumerable plaintext space and a decoder
  // table. Otherwise Delta and friends come from affine_leakage.
  Word generic_work_budget = Word{1} << 26;
  // Decoding error from roundtrip trials instead of D.
  bool monte_carlo = false;
  std::size_t monte_carlo_trials = 10000;
  std::uint64_t seed = 0;
};

struct SecurityReport {
  double delta = 0.0;
  double delta_mi = 0.0;
  double div_cipher_uniform = 0.0;
  double delta_1 = 0.0;
  double delta_2 = 0.0;
  double lemma2_raw = 0.0;
  double lemma2_bound = 0.0;
  double p_e = 0.0;
  double delta_affine = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double epsilon = 0.0;
  double delta_threshold = 0.0;
  bool generic_path = false;  // Delta from the oracle path, not affine_leakage
  bool delta_exact = true;    // false when delta_exact had to sample
  bool p_e_exact = true;      // false for a Monte Carlo estimate
  bool reliable = false;      // p_e <= delta_threshold
  bool secure = false;        // delta <= epsilon
  bool admissible() const { return reliable && secure; }
};

SecurityReport build_report(const Cryptosystem& sys, const BlockDistribution& src,
                            const BlockDistribution& keys, double epsilon,
                            double delta_threshold,
                            const ReportOptions& options = {});

}  // namespace dsc
