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

#include "beamdisc/brute_force.h"

#include <cmath>
#include <string>

#include "beamdisc/errors.h"

namespace beamdisc {
namespace {

void CheckBounds(const ScanConfig& scan, const RetryModel& retry) {
  scan.Validate();
  retry.Validate();
  if (retry.IsInfinite()) {
    throw ConfigError("brute-force summation needs a finite K");
  }
  if (scan.Slots() > kBruteForceMaxSlots) {
    throw ConfigError("brute force supports S <= " +
                      std::to_string(kBruteForceMaxSlots));
  }
  if (*retry.max_frames > kBruteForceMaxFrames) {
    throw ConfigError("brute force supports K <= " +
                      std::to_string(kBruteForceMaxFrames));
  }
}

}  // namespace

BruteForceResult BruteForceScenarios(const ScanConfig& scan,
                                     const RetryModel& retry) {
  CheckBounds(scan, retry);
  const int s = scan.Slots();
  const int k_max = *retry.max_frames;
  const double t = scan.beam_duration_s;
  const double tp = scan.SlotLength();
  const double frame = scan.frame_s;
  const double eps = retry.block_error_rate;
  const double eps_k = std::pow(eps, k_max);
  const double eps_k1 = std::pow(eps, k_max - 1);

  // Joint probability of waking up in slot i and being located in slot j.
  const double p_slot_pair = tp / frame / s;
  // Joint probability of waking up in the data interval and slot j.
  const double p_data = (frame - s * tp) / frame / s;

  BruteForceResult out;
  for (int i = 1; i <= s; ++i) {
    // Time left in the current frame after waking up mid-slot i.
    const double rest_of_frame = tp / 2.0 + frame - i * tp;
    for (int j = 1; j <= s; ++j) {
      double latency = 0.0;
      if (j > i) {
        // A: the beam reaches slot j later in the current frame.
        latency += (tp / 2.0 + (j - i - 1) * tp + t) * (1.0 - eps);
        for (int k = 1; k <= k_max - 1; ++k) {
          latency += (rest_of_frame + (k - 1) * frame + (j - 1) * tp + t) *
                     std::pow(eps, k) * (1.0 - eps);
        }
        latency += (rest_of_frame + (k_max - 1) * frame) * eps_k;
        out.t_a += p_slot_pair * latency;
      } else {
        // B (j == i) and C (j < i): first attempt in the next frame.
        latency += rest_of_frame;
        for (int k = 0; k <= k_max - 2; ++k) {
          latency += (k * frame + t + (j - 1) * tp) * std::pow(eps, k) *
                     (1.0 - eps);
        }
        latency += (k_max - 1) * frame * eps_k1;
        if (j == i) {
          out.t_b += p_slot_pair * latency;
        } else {
          out.t_c += p_slot_pair * latency;
        }
      }
    }
  }
  for (int j = 1; j <= s; ++j) {
    // D: mean residual of the data interval, then the next frames.
    double latency = (frame - s * tp) / 2.0;
    for (int k = 0; k <= k_max - 2; ++k) {
      latency +=
          (k * frame + t + (j - 1) * tp) * std::pow(eps, k) * (1.0 - eps);
    }
    latency += (k_max - 1) * frame * eps_k1;
    out.t_d += p_data * latency;
  }
  return out;
}

double BruteForceCdl(const ScanConfig& scan, const RetryModel& retry) {
  return BruteForceScenarios(scan, retry).Total();
}

double BruteForceCdlWithTiming(const ScanConfig& scan,
                               const RetryModel& retry) {
  CheckBounds(scan, retry);
  const int s = scan.Slots();
  const int k_max = *retry.max_frames;
  const double eps = retry.block_error_rate;
  double total = 0.0;
  for (int j = 1; j <= s; ++j) {
    double latency = 0.0;
    for (int k = 0; k <= k_max - 1; ++k) {
      latency += (k * scan.frame_s + (j - 1) * scan.SlotLength() +
                  scan.beam_duration_s) *
                 std::pow(eps, k) * (1.0 - eps);
    }
    latency += k_max * scan.frame_s * std::pow(eps, k_max);
    total += latency / s;
  }
  return total;
}

}  // namespace beamdisc
