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

#ifndef BEAMDISC_ANALYTICS_H_
#define BEAMDISC_ANALYTICS_H_

#include <optional>
#include <string>
#include <string_view>

#include "beamdisc/signaling.h"

namespace beamdisc {

// Beam partitioning and frame timing. All times in seconds.
struct ScanConfig {
  int scan_areas = 1;  // N
  int beams = 1;       // M
  double beam_duration_s = 1e-6;
  double guard_interval_s = 0.0;
  double frame_s = 200e-6;

  int Slots() const { return scan_areas / beams; }
  // Beam duration plus guard interval.
  double SlotLength() const { return beam_duration_s + guard_interval_s; }
  double BeaconLength() const { return Slots() * SlotLength(); }

  // M | N, t > 0, t_GI >= 0 and S t' <= T. Throws ConfigError.
  void Validate() const;
};

// Maximum number of attempt frames K (unset means K -> infinity) and the
// block error rate.
struct RetryModel {
  std::optional<int> max_frames;
  double block_error_rate = 1e-3;

  static RetryModel Infinite(double epsilon) { return {std::nullopt, epsilon}; }
  static RetryModel Finite(int k, double epsilon) { return {k, epsilon}; }

  bool IsInfinite() const { return !max_frames.has_value(); }
  void Validate() const;
};

enum class VariantKind { kSingle, kLongFrame, kOhLimited, kSeparated };

// How beacon intervals are placed in the frame sequence. `factor` is W for a
// long frame, V for OH-limited insertion and X for separation.
struct BeaconVariant {
  VariantKind kind = VariantKind::kSingle;
  int factor = 1;

  static BeaconVariant Single() { return {VariantKind::kSingle, 1}; }
  static BeaconVariant LongFrame(int w) { return {VariantKind::kLongFrame, w}; }
  static BeaconVariant OhLimited(int v) { return {VariantKind::kOhLimited, v}; }
  static BeaconVariant Separated(int x) { return {VariantKind::kSeparated, x}; }

  // factor >= 1; X must divide S; W beacons must fit in one frame.
  void Validate(const ScanConfig& scan) const;
  // "single", "long_frame:3", "oh_limited:2", "separated:3".
  std::string Tag() const;
};

BeaconVariant ParseVariant(std::string_view tag);
std::string_view VariantKindName(VariantKind kind);

// Per-slot scenario probabilities for activation in slot i.
struct SlotScenarioProbabilities {
  double p_a = 0.0;
  double p_b = 0.0;
  double p_c = 0.0;
  // Activation in the data interval; independent of i.
  double p_d = 0.0;
};

// 1 <= active_slot <= S. Throws DomainError otherwise.
SlotScenarioProbabilities ScenarioProbabilities(const ScanConfig& scan,
                                                int active_slot);

struct ScenarioBreakdown {
  // Scenario probabilities summed over the active slot.
  double p_a = 0.0;
  double p_b = 0.0;
  double p_c = 0.0;
  double p_d = 0.0;
  // Probability-weighted latency contributions; they add up to the mean CDL.
  double t_a = 0.0;
  double t_b = 0.0;
  double t_c = 0.0;
  double t_d = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double Total() const { return t_a + t_b + t_c + t_d; }
};

// Intermediate coefficients for finite K, or their limits for K -> infinity.
ScenarioBreakdown ScenarioCoefficients(const ScanConfig& scan,
                                       const RetryModel& retry);

// UEs aligned to the frame start:
// (1 - eps^K) ((S+1)/2 t + (S-1)/2 t_GI + eps/(1-eps) T).
double CdlWithTiming(const ScanConfig& scan, const RetryModel& retry);

double CdlScenarioA(const ScanConfig& scan, const RetryModel& retry);
double CdlScenarioB(const ScanConfig& scan, const RetryModel& retry);
double CdlScenarioC(const ScanConfig& scan, const RetryModel& retry);
double CdlScenarioD(const ScanConfig& scan, const RetryModel& retry);

struct CdlResult {
  double mean_s = 0.0;
  ScenarioBreakdown breakdown;
};

// Random activation time. For K -> infinity the mean is returned as
// t + (1+eps) T / (2 (1-eps)), which does not depend on t_GI, N, M or S; the
// breakdown still carries the per-scenario terms.
CdlResult CdlWithoutTiming(const ScanConfig& scan, const RetryModel& retry);

// (1+eps) / (2 (1-eps)) T, the waiting part of the K -> infinity latency.
double WaitingTail(double epsilon, double frame_s);

// Mean CDL of `scheme` for K -> infinity given the TD beam duration of the
// link (and the SD duration for SD). For SD checks T_TD <= T_SD <= T_FD and
// throws ConsistencyError when the durations break it.
double CdlPerScheme(const Scheme& scheme, double t_td,
                    std::optional<double> t_sd, double frame_s,
                    const RetryModel& retry);

// Beacon occupancy (N/M)(t + t_GI)/T where scan.beam_duration_s is the
// scheme's own beam duration (t_TD, M t_TD or t_SD). Throws ConfigError when
// the beacon does not fit (> 1) or when scheme and scan disagree on M.
double Overhead(const Scheme& scheme, const ScanConfig& scan);

struct VariantOverheadResult {
  double frame = 0.0;
  double superframe = 0.0;
};

// Single-beacon OH S t'/T rescaled for the variant: long frame x W at both
// scales; OH-limited x1 per frame and 1/V per superframe; separated 1/X per
// frame and x1 per superframe.
VariantOverheadResult VariantOverhead(const ScanConfig& scan,
                                      const BeaconVariant& variant);

struct VariantResult {
  double cdl_s = 0.0;
  // OH measured over one frame and over the variant's repetition period.
  double oh_frame = 0.0;
  double oh_superframe = 0.0;
  // Human-readable OH scaling relative to the single-beacon case.
  std::string oh_scaling;
};

// Closed forms for the beacon placement variants (K -> infinity only):
//   long frame    t + (1+eps) T / (2 W (1-eps)),     OH x W
//   OH-limited    t + (1+eps) V T / (2 (1-eps)),     OH x 1 per frame, 1/V
//                                                    per superframe
//   separated     X t + (1+eps) X^2 T / (2 (1-eps)), OH 1/X per frame, x 1
//                                                    per superframe
// Throws ConfigError for finite K or invalid variant parameters.
VariantResult CdlVariant(const ScanConfig& scan, const RetryModel& retry,
                         const BeaconVariant& variant);

// Mean latency of the physical separated-beacon timeline, where each slot
// recurs once every X frames: t + (1+eps) X T / (2 (1-eps)). This is what a
// frame-accurate simulation converges to; it differs from the separated
// closed form in CdlVariant for X > 1.
double SeparatedTimelineCdl(const ScanConfig& scan, double epsilon, int x);

}  // namespace beamdisc

#endif  // BEAMDISC_ANALYTICS_H_
