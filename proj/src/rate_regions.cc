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

#include "dsc/rate_regions.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsc {

namespace {
constexpr double kThresholdTolerance = 1e-9;
}  // namespace

RateRegion::RateRegion(RegionKind kind, double t1, double t2, double t12)
    : kind_(kind), t1_(t1), t2_(t2), t12_(t12) {
  if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(t12) ||
      t1 < -kThresholdTolerance || t2 < -kThresholdTolerance) {
    throw std::invalid_argument("rate region thresholds must be finite and nonnegative");
  }
  bool ok = true;
  if (kind == RegionKind::kSlepianWolf) {
    ok = t1 <= t12 + kThresholdTolerance && t2 <= t12 + kThresholdTolerance;
  } else {
    ok = std::max(t1, t2) <= t12 + kThresholdTolerance &&
         t12 <= t1 + t2 + kThresholdTolerance;
  }
  if (!ok) throw std::invalid_argument("rate region thresholds are inconsistent");
}

RateRegion sw_region(const JointPmf& p) {
  const EntropySet h = entropy_set(p);
  return RateRegion(RegionKind::kSlepianWolf, h.h1g2, h.h2g1, h.h12);
}

RateRegion key_region(const JointPmf& p) {
  const EntropySet h = entropy_set(p);
  return RateRegion(RegionKind::kKey, h.h1, h.h2, h.h12);
}

Membership contains(const RateRegion& r, const RatePoint& pt) {
  const double sign = r.kind() == RegionKind::kSlepianWolf ? 1.0 : -1.0;
  Membership m;
  m.slack = {sign * (pt.r1 - r.t1()), sign * (pt.r2 - r.t2()),
             sign * (pt.r1 + pt.r2 - r.t12())};
  m.inside = std::all_of(m.slack.begin(), m.slack.end(),
                         [](double s) { return s >= -kRegionSlack; });
  return m;
}

std::optional<RatePoint> intersection_witness(const RateRegion& sw,
                                              const RateRegion& key) {
  if (sw.kind() != RegionKind::kSlepianWolf || key.kind() != RegionKind::kKey) {
    throw std::invalid_argument("intersection_witness expects (sw, key) regions");
  }
  const double a1 = sw.t1(), a2 = sw.t2(), a12 = sw.t12();
  const double b1 = key.t1(), b2 = key.t2(), b12 = key.t12();
  if (a1 > b1 + kRegionSlack || a2 > b2 + kRegionSlack) return std::nullopt;
  const double sum = std::max(a12, a1 + a2);
  if (sum > std::min(b12, b1 + b2) + kRegionSlack) return std::nullopt;
  const double lo = std::max(a1, sum - b2);
  const double hi = std::min(b1, sum - a2);
  if (lo > hi + kRegionSlack) return std::nullopt;
  const double r1 = 0.5 * (lo + hi);
  return RatePoint{r1, sum - r1};
}

RatePoint rates_from_params(std::size_t n, std::size_t m1, std::size_t m2,
                            unsigned q1, unsigned q2) {
  if (n == 0) throw std::invalid_argument("blocklength must be positive");
  return {double(m1) / double(n) * std::log2(double(q1)),
          double(m2) / double(n) * std::log2(double(q2))};
}

}  // namespace dsc
