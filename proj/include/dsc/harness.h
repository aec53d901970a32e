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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsc/prob_core.h"
#include "dsc/rate_regions.h"

namespace dsc {

enum class RunMode { kExact, kMonteCarlo };

struct VerifySuite {
  std::size_t systems = 50;
  std::vector<unsigned> fields{2, 3};
  std::vector<std::size_t> blocklengths{2, 3, 4};
  // Plain one-time pads (A_i = I, b_i = 0) with independent uniform keys.
  bool identity_otp = false;
  // Fresh pmfs per system; otherwise the config pmfs and moduli are used.
  bool random_pmfs = true;
};

struct ExperimentConfig {
  unsigned q1 = 2;
  unsigned q2 = 2;
  JointPmf source = JointPmf::uniform(2, 2);
  JointPmf keys = JointPmf::uniform(2, 2);
  std::vector<std::size_t> blocklengths;
  // One (m1, m2) per blocklength; filled from `rates` when only those are set.
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  std::optional<RatePoint> rates;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::kExact;
  double epsilon = 0.1;
  double delta = 0.1;
  std::size_t mc_trials = 10000;
  bool random_offsets = true;
  bool record_runtime = false;
  unsigned workers = 1;
  std::filesystem::path output = "results.csv";
  VerifySuite verify;
};

// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// m_i = round(R_i n / log2 q_i), clamped to [1, n].
std::pair<std::size_t, std::size_t> dims_for_rates(const RatePoint& rates,
                                                   std::size_t n, unsigned q1,
                                                   unsigned q2);

struct ResultRow {
  std::size_t n = 0, m1 = 0, m2 = 0;
  unsigned q1 = 0, q2 = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  double r1 = 0, r2 = 0;
  double p_e = 0, delta = 0, delta_mi = 0, div_cipher_uniform = 0;
  double delta_1 = 0, delta_2 = 0, lemma2_bound = 0;
  bool in_sw = false, in_key = false, admissible = false;
  double runtime_ms = 0;
  // "exact", "montecarlo", or "montecarlo-downgraded" when exact mode hit a
  // decoder cap.
  std::string mode;
};

extern const std::vector<std::string> kResultColumns;

// Writes header plus rows to a temporary file, then renames over `path`.
void write_csv(const std::filesystem::path& path,
               const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(const std::filesystem::path& path);

// Internal-consistency problems of a row set, one message each.
std::vector<std::string> validate_rows(const std::vector<ResultRow>& rows,
                                       const ExperimentConfig& cfg);

// Seed for one (n, trial) cell, independent of the other cells.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

// Rows in (n, trial) order. Throws ResourceError when even the affine path
// exceeds its caps.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);

struct VerifyOptions {
  // Replace one decoder entry by a duplicate so the decoding-set sums fail.
  bool corrupt_table = false;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfigError = 2,
  kExitResourceError = 3,
};

int cmd_analyze(const ExperimentConfig& cfg, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out,
               const VerifyOptions& options = {});
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace dsc
