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

#include "beamdisc/analytics.h"

#include <charconv>
#include <cmath>
#include <string>

#include "beamdisc/errors.h"

namespace beamdisc {
namespace {

// Relative slack for "beacon fits in frame" comparisons.
constexpr double kFitTolerance = 1e-12;

bool Fits(double used, double available) {
  return used <= available * (1.0 + kFitTolerance);
}

}  // namespace

void ScanConfig::Validate() const {
  if (scan_areas < 1) throw ConfigError("N must be >= 1");
  if (beams < 1) throw ConfigError("M must be >= 1");
  if (scan_areas % beams != 0) {
    throw ConfigError("M = " + std::to_string(beams) +
                      " does not divide N = " + std::to_string(scan_areas));
  }
  if (!(beam_duration_s > 0.0)) throw ConfigError("beam duration must be > 0");
  if (!(guard_interval_s >= 0.0)) {
    throw ConfigError("guard interval must be >= 0");
  }
  if (!(frame_s > 0.0)) throw ConfigError("frame length must be > 0");
  if (!Fits(BeaconLength(), frame_s)) {
    throw ConfigError("beacon does not fit in frame: S t' = " +
                      std::to_string(BeaconLength()) + " s > T = " +
                      std::to_string(frame_s) + " s");
  }
}

void RetryModel::Validate() const {
  if (max_frames && *max_frames < 1) throw ConfigError("K must be >= 1");
  if (!(block_error_rate > 0.0 && block_error_rate < 1.0)) {
    throw ConfigError("block error rate must lie in (0, 1)");
  }
}

std::string_view VariantKindName(VariantKind kind) {
  switch (kind) {
    case VariantKind::kSingle:
      return "single";
    case VariantKind::kLongFrame:
      return "long_frame";
    case VariantKind::kOhLimited:
      return "oh_limited";
    case VariantKind::kSeparated:
      return "separated";
  }
  return "?";
}

void BeaconVariant::Validate(const ScanConfig& scan) const {
  if (factor < 1) throw ConfigError("beacon variant factor must be >= 1");
  switch (kind) {
    case VariantKind::kSingle:
      if (factor != 1) throw ConfigError("single beacon has factor 1");
      break;
    case VariantKind::kLongFrame:
      if (!Fits(factor * scan.BeaconLength(), scan.frame_s)) {
        throw ConfigError("W = " + std::to_string(factor) +
                          " beacon intervals do not fit in one frame");
      }
      break;
    case VariantKind::kOhLimited:
      break;
    case VariantKind::kSeparated:
      if (scan.Slots() % factor != 0) {
        throw ConfigError("X = " + std::to_string(factor) +
                          " does not divide S = " +
                          std::to_string(scan.Slots()));
      }
      break;
  }
}

std::string BeaconVariant::Tag() const {
  if (kind == VariantKind::kSingle) return "single";
  return std::string(VariantKindName(kind)) + ":" + std::to_string(factor);
}

BeaconVariant ParseVariant(std::string_view tag) {
  const auto colon = tag.find(':');
  const std::string_view name = tag.substr(0, colon);
  int factor = 1;
  if (colon != std::string_view::npos) {
    const std::string_view digits = tag.substr(colon + 1);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), factor);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ConfigError("bad beacon variant factor in '" + std::string(tag) +
                        "'");
    }
  }
  if (name == "single") {
    if (factor != 1) throw ConfigError("single beacon has factor 1");
    return BeaconVariant::Single();
  }
  if (name == "long_frame") return BeaconVariant::LongFrame(factor);
  if (name == "oh_limited") return BeaconVariant::OhLimited(factor);
  if (name == "separated") return BeaconVariant::Separated(factor);
  throw ConfigError("unknown beacon variant '" + std::string(tag) + "'");
}

SlotScenarioProbabilities ScenarioProbabilities(const ScanConfig& scan,
                                                int active_slot) {
  const int s = scan.Slots();
  if (active_slot < 1 || active_slot > s) {
    throw DomainError("active slot must lie in [1, S]");
  }
  const double in_slot = scan.SlotLength() / scan.frame_s;
  SlotScenarioProbabilities p;
  p.p_a = in_slot * (s - active_slot) / s;
  p.p_b = in_slot / s;
  p.p_c = in_slot * (active_slot - 1) / s;
  p.p_d = (scan.frame_s - s * scan.SlotLength()) / scan.frame_s;
  return p;
}

ScenarioBreakdown ScenarioCoefficients(const ScanConfig& scan,
                                       const RetryModel& retry) {
  scan.Validate();
  retry.Validate();
  const double t = scan.beam_duration_s;
  const double tp = scan.SlotLength();
  const double frame = scan.frame_s;
  const double eps = retry.block_error_rate;
  const double s = scan.Slots();

  ScenarioBreakdown out;
  const double in_beacon = s * tp / frame;
  out.p_a = in_beacon * (s - 1.0) / (2.0 * s);
  out.p_b = in_beacon / s;
  out.p_c = out.p_a;
  out.p_d = (frame - s * tp) / frame;

  if (retry.IsInfinite()) {
    out.a1 = t + s / 2.0 * tp + eps / (1.0 - eps) * frame;
    out.a2 = tp / 2.0;
    out.b1 = t - tp / 2.0 + frame / (1.0 - eps);
    out.b2 = 0.0;
    out.c1 = out.b1;
    out.c2 = tp / 2.0;
  } else {
    const int k = *retry.max_frames;
    const double eps_k = std::pow(eps, k);
    const double eps_k1 = std::pow(eps, k - 1);
    out.a1 = (1.0 - eps_k) * (t + s / 2.0 * tp) + eps_k / 2.0 * tp +
             (eps - eps_k * eps) / (1.0 - eps) * frame;
    out.a2 = (1.0 + eps_k) / 2.0 * tp;
    out.b1 = (1.0 - eps_k1) * (t - tp) + tp / 2.0 +
             (1.0 - eps_k) / (1.0 - eps) * frame;
    out.b2 = eps_k1 * tp;
    out.c1 = out.b1;
    out.c2 = (1.0 + eps_k1) / 2.0 * tp;
  }

  // Sums over the active slot i of p_X(i) t_X(i), with the i and i^2 sums
  // taken in closed form.
  out.t_a = (s - 1.0) * tp * (out.a1 / 2.0 - (s + 1.0) * out.a2 / 6.0) / frame;
  out.t_b = tp * (out.b1 - (s + 1.0) * out.b2 / 2.0) / frame;
  out.t_c = tp / (frame * s) *
            ((out.c1 + out.c2) * (s - 1.0) * (s + 2.0) / 2.0 -
             (s - 1.0) * out.c1 -
             out.c2 * (s * (s + 1.0) * (2.0 * s + 1.0) / 6.0 - 1.0));
  if (retry.IsInfinite()) {
    out.t_d = out.p_d * (t - tp / 2.0 + WaitingTail(eps, frame));
  } else {
    const int k = *retry.max_frames;
    const double eps_k = std::pow(eps, k);
    const double eps_k1 = std::pow(eps, k - 1);
    out.t_d = out.p_d * ((1.0 - eps_k1) * t -
                         ((s - 1.0) * eps_k1 + 1.0) / 2.0 * tp +
                         ((1.0 + eps) / 2.0 - eps_k) / (1.0 - eps) * frame);
  }
  return out;
}

double WaitingTail(double epsilon, double frame_s) {
  return (1.0 + epsilon) / (2.0 * (1.0 - epsilon)) * frame_s;
}

double CdlWithTiming(const ScanConfig& scan, const RetryModel& retry) {
  scan.Validate();
  retry.Validate();
  const double s = scan.Slots();
  const double eps = retry.block_error_rate;
  const double mean = (s + 1.0) / 2.0 * scan.beam_duration_s +
                      (s - 1.0) / 2.0 * scan.guard_interval_s +
                      eps / (1.0 - eps) * scan.frame_s;
  if (retry.IsInfinite()) return mean;
  return (1.0 - std::pow(eps, *retry.max_frames)) * mean;
}

double CdlScenarioA(const ScanConfig& scan, const RetryModel& retry) {
  return ScenarioCoefficients(scan, retry).t_a;
}

double CdlScenarioB(const ScanConfig& scan, const RetryModel& retry) {
  return ScenarioCoefficients(scan, retry).t_b;
}

double CdlScenarioC(const ScanConfig& scan, const RetryModel& retry) {
  return ScenarioCoefficients(scan, retry).t_c;
}

double CdlScenarioD(const ScanConfig& scan, const RetryModel& retry) {
  return ScenarioCoefficients(scan, retry).t_d;
}

CdlResult CdlWithoutTiming(const ScanConfig& scan, const RetryModel& retry) {
  CdlResult result;
  result.breakdown = ScenarioCoefficients(scan, retry);
  result.mean_s =
      retry.IsInfinite()
          ? scan.beam_duration_s +
                WaitingTail(retry.block_error_rate, scan.frame_s)
          : result.breakdown.Total();
  return result;
}

double CdlPerScheme(const Scheme& scheme, double t_td,
                    std::optional<double> t_sd, double frame_s,
                    const RetryModel& retry) {
  scheme.Validate();
  retry.Validate();
  if (!retry.IsInfinite()) {
    throw ConfigError("per-scheme latency is defined for K -> infinity");
  }
  if (scheme.kind == SchemeKind::kSd && t_sd) {
    if (*t_sd < t_td || *t_sd > scheme.beams * t_td) {
      throw ConsistencyError(
          "SD beam duration " + std::to_string(*t_sd) +
          " s breaks t_TD <= t_SD <= M t_TD for M = " +
          std::to_string(scheme.beams));
    }
  }
  const double duration = SchemeBeamDuration(scheme, t_td, t_sd);
  return duration + WaitingTail(retry.block_error_rate, frame_s);
}

double Overhead(const Scheme& scheme, const ScanConfig& scan) {
  scheme.Validate();
  if (scheme.beams != scan.beams) {
    throw ConfigError("scheme and scan disagree on the number of beams");
  }
  if (scan.scan_areas % scan.beams != 0) {
    throw ConfigError("M does not divide N");
  }
  const double oh = scan.Slots() * scan.SlotLength() / scan.frame_s;
  if (!Fits(oh, 1.0)) {
    throw ConfigError("beacon does not fit in frame (OH = " +
                      std::to_string(oh) + ")");
  }
  return oh;
}

VariantOverheadResult VariantOverhead(const ScanConfig& scan,
                                      const BeaconVariant& variant) {
  scan.Validate();
  variant.Validate(scan);
  const double base = scan.Slots() * scan.SlotLength() / scan.frame_s;
  const int f = variant.factor;
  switch (variant.kind) {
    case VariantKind::kSingle:
      return {base, base};
    case VariantKind::kLongFrame:
      return {f * base, f * base};
    case VariantKind::kOhLimited:
      return {base, base / f};
    case VariantKind::kSeparated:
      return {base / f, base};
  }
  return {base, base};
}

VariantResult CdlVariant(const ScanConfig& scan, const RetryModel& retry,
                         const BeaconVariant& variant) {
  scan.Validate();
  retry.Validate();
  variant.Validate(scan);
  if (!retry.IsInfinite()) {
    throw ConfigError("beacon variants are defined for K -> infinity");
  }
  const double t = scan.beam_duration_s;
  const double eps = retry.block_error_rate;
  const double frame = scan.frame_s;
  const int f = variant.factor;
  const VariantOverheadResult oh = VariantOverhead(scan, variant);

  VariantResult out;
  out.oh_frame = oh.frame;
  out.oh_superframe = oh.superframe;
  switch (variant.kind) {
    case VariantKind::kSingle:
      out.cdl_s = t + WaitingTail(eps, frame);
      out.oh_scaling = "x1";
      break;
    case VariantKind::kLongFrame:
      out.cdl_s = t + WaitingTail(eps, frame / f);
      out.oh_scaling = "x" + std::to_string(f) + " (frame)";
      break;
    case VariantKind::kOhLimited:
      out.cdl_s = t + WaitingTail(eps, f * frame);
      out.oh_scaling = "x1 (frame), x1/" + std::to_string(f) + " (superframe)";
      break;
    case VariantKind::kSeparated:
      out.cdl_s = f * t + WaitingTail(eps, f * f * frame);
      out.oh_scaling = "x1/" + std::to_string(f) + " (frame), x1 (superframe)";
      break;
  }
  return out;
}

double SeparatedTimelineCdl(const ScanConfig& scan, double epsilon, int x) {
  scan.Validate();
  BeaconVariant::Separated(x).Validate(scan);
  return scan.beam_duration_s + WaitingTail(epsilon, x * scan.frame_s);
}

}  // namespace beamdisc
