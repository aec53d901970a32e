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

#include <array>
#include <cstddef>
#include <optional>

#include "dsc/prob_core.h"

namespace dsc {

enum class RegionKind { kSlepianWolf, kKey };

// Three half-plane thresholds, in bits per symbol.
//   kSlepianWolf: R1 >= t1, R2 >= t2, R1 + R2 >= t12
//   kKey:         R1 <= t1, R2 <= t2, R1 + R2 <= t12
class RateRegion {
 public:
  // Throws std::invalid_argument when the thresholds violate the entropy
  // inequalities for the kind (within 1e-9).
  RateRegion(RegionKind kind, double t1, double t2, double t12);

  RegionKind kind() const { return kind_; }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double t12() const { return t12_; }

 private:
  RegionKind kind_;
  double t1_, t2_, t12_;
};

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

RateRegion sw_region(const JointPmf& p);
RateRegion key_region(const JointPmf& p);

struct Membership {
  bool inside = false;
  // Signed slack per constraint (R1, R2, sum); negative means violated.
  std::array<double, 3> slack{};
};

inline constexpr double kRegionSlack = 1e-12;

Membership contains(const RateRegion& r, const RatePoint& pt);

std::optional<RatePoint> intersection_witness(const RateRegion& sw,
                                              const RateRegion& key);

// R_i = (m_i / n) log2 q_i.
RatePoint rates_from_params(std::size_t n, std::size_t m1, std::size_t m2,
                            unsigned q1, unsigned q2);

}  // namespace dsc
