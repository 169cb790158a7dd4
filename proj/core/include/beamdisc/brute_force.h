// Copyright 2026 The beamdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BEAMDISC_BRUTE_FORCE_H_
#define BEAMDISC_BRUTE_FORCE_H_

#include "beamdisc/analytics.h"

namespace beamdisc {

inline constexpr int kBruteForceMaxSlots = 64;
inline constexpr int kBruteForceMaxFrames = 512;

// Latency expectations evaluated by explicit summation over the active slot i,
// the location slot j and the attempt frame k, before any closed-form algebra.
// Independent of the closed forms in analytics.h and used to check them.
struct BruteForceResult {
  double t_a = 0.0;
  double t_b = 0.0;
  double t_c = 0.0;
  double t_d = 0.0;

  double Total() const { return t_a + t_b + t_c + t_d; }
};

// Requires finite K. Throws ConfigError past the tractability bounds.
BruteForceResult BruteForceScenarios(const ScanConfig& scan,
                                     const RetryModel& retry);

double BruteForceCdl(const ScanConfig& scan, const RetryModel& retry);

// Known beacon timing: sum over j and k of the aligned-UE latency.
double BruteForceCdlWithTiming(const ScanConfig& scan, const RetryModel& retry);

}  // namespace beamdisc

#endif  // BEAMDISC_BRUTE_FORCE_H_
