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

#include "beamdisc/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "beamdisc/errors.h"

namespace beamdisc {
namespace {

// Running mean and squared deviation; merged in snapshot order so the result
// is independent of the number of workers.
struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void Merge(const Moments& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(n + other.n);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.n) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(n) *
                         static_cast<double>(other.n) / total;
    n += other.n;
  }
};

struct SnapshotTally {
  Moments latency;
  std::uint64_t coverage_failures = 0;
  std::uint64_t discovery_failures = 0;
  std::array<std::uint64_t, 4> scenario_counts{};
  std::vector<UeTrace> traces;
};

struct Context {
  const SimulationPlan& plan;
  BeaconTimeline timeline;
  BeamGeometry beam;
  double window_s;  // finite K only
};

// The sweep visits the cell azimuthally, so slot j owns the j-th sector of
// width 2*pi/S whatever the N_H x N_V split of the beams inside it.
int LocationSlot(const UeDrop& drop, const Context& ctx) {
  const int slots = ctx.plan.scan.Slots();
  const int sector = static_cast<int>(drop.azimuth_rad / (2.0 * std::numbers::pi) * slots);
  return std::min(sector, slots - 1) + 1;
}

bool Covered(const UeTrace& trace, const Context& ctx) {
  const SimulationPlan& plan = ctx.plan;
  const double pathloss =
      PathLossDb(trace.distance_m, trace.link_state, plan.budget,
                 trace.shadowing_db);
  try {
    const SchemeDurations need = ComputeSchemeDurations(
        plan.scheme, plan.budget.tx_power_dbm, ctx.beam.gain_db, pathloss,
        plan.budget.noise_density_dbm_hz, plan.budget.bandwidth_hz,
        plan.coding);
    return need.scheme_s <= plan.scan.beam_duration_s * (1.0 + 1e-12);
  } catch (const LinkBudgetError&) {
    return false;
  }
}

// First scan of `slot` that starts at or after z.
std::int64_t FirstOccurrence(const BeaconTimeline& timeline, int slot,
                             double z) {
  const double first = timeline.SlotStart(slot, 0);
  std::int64_t m = 0;
  if (z > first) {
    m = static_cast<std::int64_t>(std::ceil((z - first) / timeline.Period()));
  }
  while (timeline.SlotStart(slot, m) < z) ++m;
  while (m > 0 && timeline.SlotStart(slot, m - 1) >= z) --m;
  return m;
}

UeTrace SimulateUe(const Context& ctx, int snapshot, int ue) {
  const SimulationPlan& plan = ctx.plan;
  Rng rng = Rng::ForStream(plan.seed, static_cast<std::uint64_t>(snapshot),
                           static_cast<std::uint64_t>(ue));
  UeTrace trace;
  trace.snapshot = snapshot;
  trace.ue = ue;

  const UeDrop drop = DropUe(plan.geometry, plan.drop_model, rng);
  trace.distance_m = drop.distance_m;
  trace.link_state = SampleLinkState(drop.distance_m, plan.geometry, rng);
  trace.shadowing_db = SampleShadowingDb(trace.link_state, plan.budget, rng);
  trace.location_slot = LocationSlot(drop, ctx);
  trace.activation_time_s =
      plan.timing_known ? 0.0 : rng.Uniform() * ctx.timeline.Cycle();
  trace.scenario = ClassifyScenario(trace, plan.scan, plan.variant);

  trace.covered = !plan.check_coverage || Covered(trace, ctx);
  if (!trace.covered) {
    trace.frames_to_success = 0;
    trace.discovered = false;
    return trace;
  }

  const double eps = plan.coding.block_error_rate;
  const double z = trace.activation_time_s;
  std::int64_t m = FirstOccurrence(ctx.timeline, trace.location_slot, z);
  for (int attempt = 1;; ++attempt, ++m) {
    const double start = ctx.timeline.SlotStart(trace.location_slot, m);
    if (plan.max_frames && start >= ctx.window_s) {
      trace.discovered = false;
      trace.frames_to_success = 0;
      trace.latency_s = ctx.window_s - z;
      break;
    }
    if (rng.Uniform() >= eps) {
      trace.frames_to_success = attempt;
      trace.latency_s = start + plan.scan.beam_duration_s - z;
      break;
    }
  }
  return trace;
}

void RunSnapshot(const Context& ctx, int snapshot, bool collect,
                 SnapshotTally& tally) {
  for (int ue = 0; ue < ctx.plan.n_ues; ++ue) {
    UeTrace trace = SimulateUe(ctx, snapshot, ue);
    ++tally.scenario_counts[static_cast<int>(trace.scenario)];
    if (!trace.covered) {
      ++tally.coverage_failures;
    } else {
      if (!trace.discovered) ++tally.discovery_failures;
      tally.latency.Add(trace.latency_s);
    }
    if (collect) tally.traces.push_back(trace);
  }
}

}  // namespace

std::string_view ScenarioName(Scenario scenario) {
  switch (scenario) {
    case Scenario::kA:
      return "A";
    case Scenario::kB:
      return "B";
    case Scenario::kC:
      return "C";
    case Scenario::kD:
      return "D";
  }
  return "?";
}

void SimulationPlan::Validate() const {
  if (n_ues < 1 || n_snapshots < 1) {
    throw ConfigError("UE and snapshot counts must be >= 1");
  }
  geometry.Validate();
  budget.Validate();
  coding.Validate();
  scheme.Validate();
  scan.Validate();
  if (scheme.beams != scan.beams) {
    throw ConfigError("scheme and scan disagree on the number of beams");
  }
  variant.Validate(scan);
  if (max_frames) {
    if (*max_frames < 1) throw ConfigError("K must be >= 1");
    if (variant.kind != VariantKind::kSingle) {
      throw ConfigError("a finite K is only simulated for the single beacon");
    }
  }
  if ((n_horizontal == 0) != (n_vertical == 0)) {
    throw ConfigError("give both N_H and N_V or neither");
  }
  if (n_horizontal != 0 && n_horizontal * n_vertical != scan.scan_areas) {
    throw ConfigError("N_H * N_V must equal N");
  }
}

BeaconTimeline::BeaconTimeline(const ScanConfig& scan,
                               const BeaconVariant& variant)
    : scan_(scan), variant_(variant) {
  const double frame = scan.frame_s;
  const int f = variant.factor;
  switch (variant.kind) {
    case VariantKind::kSingle:
      cycle_s_ = frame;
      period_s_ = frame;
      break;
    case VariantKind::kLongFrame:
      cycle_s_ = frame;
      period_s_ = frame / f;
      break;
    case VariantKind::kOhLimited:
    case VariantKind::kSeparated:
      cycle_s_ = f * frame;
      period_s_ = f * frame;
      break;
  }
}

double BeaconTimeline::SlotStart(int slot, std::int64_t occurrence) const {
  const double tp = scan_.SlotLength();
  const double base = static_cast<double>(occurrence) * period_s_;
  if (variant_.kind == VariantKind::kSeparated) {
    const int per_frame = scan_.Slots() / variant_.factor;
    const int frame_index = (slot - 1) / per_frame;
    const int local = (slot - 1) % per_frame;
    return base + frame_index * scan_.frame_s + local * tp;
  }
  return base + (slot - 1) * tp;
}

std::optional<int> BeaconTimeline::ActiveSlot(double z) const {
  const double tp = scan_.SlotLength();
  const int s = scan_.Slots();
  auto slot_in = [&](double offset, int count) -> std::optional<int> {
    if (offset < 0.0 || offset >= count * tp) return std::nullopt;
    return std::min(static_cast<int>(offset / tp), count - 1) + 1;
  };
  switch (variant_.kind) {
    case VariantKind::kSingle:
    case VariantKind::kOhLimited:
      return slot_in(z, s);
    case VariantKind::kLongFrame:
      return slot_in(std::fmod(z, period_s_), s);
    case VariantKind::kSeparated: {
      const int per_frame = s / variant_.factor;
      const int frame_index = static_cast<int>(z / scan_.frame_s);
      const auto local = slot_in(z - frame_index * scan_.frame_s, per_frame);
      if (!local) return std::nullopt;
      return frame_index * per_frame + *local;
    }
  }
  return std::nullopt;
}

Scenario ClassifyScenario(const UeTrace& trace, const ScanConfig& scan,
                          const BeaconVariant& variant) {
  const BeaconTimeline timeline(scan, variant);
  const auto active = timeline.ActiveSlot(trace.activation_time_s);
  if (!active) return Scenario::kD;
  if (*active < trace.location_slot) return Scenario::kA;
  if (*active == trace.location_slot) return Scenario::kB;
  return Scenario::kC;
}

SimulationResult Simulate(const SimulationPlan& plan,
                          const SimulationOptions& options) {
  plan.Validate();
  const auto [n_h, n_v] = plan.n_horizontal != 0
                              ? std::pair{plan.n_horizontal, plan.n_vertical}
                              : SplitScanAreas(plan.scan.scan_areas);
  const Context ctx{plan, BeaconTimeline(plan.scan, plan.variant),
                    MakeBeamGeometry(n_h, n_v, plan.geometry),
                    plan.max_frames ? *plan.max_frames * plan.scan.frame_s
                                    : 0.0};

  std::vector<SnapshotTally> tallies(plan.n_snapshots);
  const int jobs = std::clamp(options.jobs, 1, plan.n_snapshots);
  if (jobs == 1) {
    for (int s = 0; s < plan.n_snapshots; ++s) {
      RunSnapshot(ctx, s, options.collect_traces, tallies[s]);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (int s = next++; s < plan.n_snapshots; s = next++) {
          RunSnapshot(ctx, s, options.collect_traces, tallies[s]);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }

  SimulationResult result;
  DiscoveryStats& stats = result.stats;
  Moments latency;
  for (SnapshotTally& tally : tallies) {
    latency.Merge(tally.latency);
    stats.coverage_failures += tally.coverage_failures;
    stats.discovery_failures += tally.discovery_failures;
    for (int k = 0; k < 4; ++k) {
      stats.scenario_counts[k] += tally.scenario_counts[k];
    }
    if (options.collect_traces) {
      result.traces.insert(result.traces.end(), tally.traces.begin(),
                           tally.traces.end());
    }
  }
  stats.samples = latency.n;
  stats.mean_cdl_s = latency.mean;
  if (latency.n > 1) {
    stats.stddev_s =
        std::sqrt(latency.m2 / static_cast<double>(latency.n - 1));
    stats.ci95_s = 1.959963984540054 * stats.stddev_s /
                   std::sqrt(static_cast<double>(latency.n));
  }
  const VariantOverheadResult oh = VariantOverhead(plan.scan, plan.variant);
  stats.oh_frame = oh.frame;
  stats.oh_superframe = oh.superframe;
  stats.scheme = plan.scheme.kind;
  stats.variant = plan.variant.kind;
  return result;
}

void WriteTraceCsv(const std::vector<UeTrace>& traces,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file " + path);
  out << "snapshot,ue,distance_m,link_state,shadowing_db,location_slot,"
         "activation_time_s,frames_to_success,latency_s,covered,discovered,"
         "scenario\n";
  out << std::setprecision(12);
  for (const UeTrace& t : traces) {
    out << t.snapshot << ',' << t.ue << ',' << t.distance_m << ','
        << LinkStateName(t.link_state) << ',' << t.shadowing_db << ','
        << t.location_slot << ',' << t.activation_time_s << ','
        << t.frames_to_success << ',' << t.latency_s << ','
        << (t.covered ? 1 : 0) << ',' << (t.discovered ? 1 : 0) << ','
        << ScenarioName(t.scenario) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing trace file " + path);
}

}  // namespace beamdisc
