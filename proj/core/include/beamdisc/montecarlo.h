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

#ifndef BEAMDISC_MONTECARLO_H_
#define BEAMDISC_MONTECARLO_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamdisc/analytics.h"
#include "beamdisc/propagation.h"
#include "beamdisc/signaling.h"

namespace beamdisc {

struct SimulationPlan {
  int n_ues = 100;
  int n_snapshots = 1000;
  std::uint64_t seed = 1;
  // beam_duration_s is the slot dwell of `scheme` (t_TD, M t_TD or t_SD).
  ScanConfig scan;
  Scheme scheme;
  CodingConfig coding;
  BeaconVariant variant;
  NetworkGeometry geometry;
  LinkBudget budget;
  bool timing_known = false;
  // Attempt window K in frames; unset for K -> infinity. Single beacon only.
  std::optional<int> max_frames;
  DropModel drop_model = DropModel::kAreaUniform;
  // Scan-area grid; 0 selects SplitScanAreas(N).
  int n_horizontal = 0;
  int n_vertical = 0;
  // When set, a UE whose own link needs a longer dwell than the slot provides
  // is a coverage failure and excluded from the latency statistics.
  bool check_coverage = true;

  // Throws ConfigError.
  void Validate() const;
};

enum class Scenario { kA = 0, kB = 1, kC = 2, kD = 3 };

std::string_view ScenarioName(Scenario scenario);

struct UeTrace {
  int snapshot = 0;
  int ue = 0;
  double distance_m = 0.0;
  LinkState link_state = LinkState::kLos;
  double shadowing_db = 0.0;
  // 1-based slot that scans the UE's area.
  int location_slot = 1;
  // Activation time measured from the start of the beacon cycle the UE wakes
  // up in.
  double activation_time_s = 0.0;
  // Decoding attempts including the successful one; 0 when not covered.
  int frames_to_success = 0;
  double latency_s = 0.0;
  bool covered = true;
  // False when a finite attempt window ran out.
  bool discovered = true;
  Scenario scenario = Scenario::kD;
};

struct DiscoveryStats {
  double mean_cdl_s = 0.0;
  double ci95_s = 0.0;
  double stddev_s = 0.0;
  // Covered UE-snapshot pairs that entered the latency statistics.
  std::uint64_t samples = 0;
  std::uint64_t coverage_failures = 0;
  std::uint64_t discovery_failures = 0;
  double oh_frame = 0.0;
  double oh_superframe = 0.0;
  // Indexed by Scenario; sums to n_ues * n_snapshots.
  std::array<std::uint64_t, 4> scenario_counts{};
  SchemeKind scheme = SchemeKind::kTd;
  VariantKind variant = VariantKind::kSingle;

  bool operator==(const DiscoveryStats&) const = default;
};

// Where and when slot j is scanned under a beacon placement variant.
class BeaconTimeline {
 public:
  BeaconTimeline(const ScanConfig& scan, const BeaconVariant& variant);

  // Span over which activation times are drawn (T, or V T / X T for the
  // superframe variants).
  double Cycle() const { return cycle_s_; }
  // Period between two scans of the same slot.
  double Period() const { return period_s_; }
  // Start of the m-th scan (m >= 0) of 1-based slot j, measured from the
  // start of the cycle.
  double SlotStart(int slot, std::int64_t occurrence) const;
  // Active beacon slot at time z within the cycle, or nullopt when z falls in
  // a data interval.
  std::optional<int> ActiveSlot(double z) const;

 private:
  ScanConfig scan_;
  BeaconVariant variant_;
  double cycle_s_;
  double period_s_;
};

// A: woke up before its slot, B: during it, C: after it, D: data interval.
Scenario ClassifyScenario(const UeTrace& trace, const ScanConfig& scan,
                          const BeaconVariant& variant);

struct SimulationOptions {
  // Worker threads; results do not depend on it.
  int jobs = 1;
  bool collect_traces = false;
};

struct SimulationResult {
  DiscoveryStats stats;
  // Ordered by (snapshot, ue) when collected.
  std::vector<UeTrace> traces;
};

// Frame-accurate discovery simulation. Throws ConfigError for an invalid
// plan.
SimulationResult Simulate(const SimulationPlan& plan,
                          const SimulationOptions& options = {});

// Writes one row per trace with a header line.
void WriteTraceCsv(const std::vector<UeTrace>& traces,
                   const std::string& path);

}  // namespace beamdisc

#endif  // BEAMDISC_MONTECARLO_H_
