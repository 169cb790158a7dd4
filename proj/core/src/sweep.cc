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

#include "beamdisc/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "beamdisc/errors.h"

#ifndef BEAMDISC_VERSION
#define BEAMDISC_VERSION "0.0.0"
#endif

namespace beamdisc {
namespace {

std::int64_t AsInt(std::string_view name, const AxisValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  if (const auto* d = std::get_if<double>(&value)) {
    if (std::floor(*d) == *d) return static_cast<std::int64_t>(*d);
  }
  throw ConfigError("axis '" + std::string(name) + "' expects integers");
}

double AsDouble(std::string_view name, const AxisValue& value) {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    return static_cast<double>(*i);
  }
  throw ConfigError("axis '" + std::string(name) + "' expects numbers");
}

std::string AsString(std::string_view name, const AxisValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  throw ConfigError("axis '" + std::string(name) + "' expects strings");
}

bool AsBool(std::string_view name, const AxisValue& value) {
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  throw ConfigError("axis '" + std::string(name) + "' expects booleans");
}

std::string Describe(const AxisValue& value) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, bool>) {
          out << (v ? "true" : "false");
        } else {
          out << v;
        }
      },
      value);
  return out.str();
}

struct PendingPoint {
  PointConfig config;
  std::string label;
};

std::vector<PendingPoint> Enumerate(const SweepSpec& spec) {
  for (const SweepAxis& axis : spec.axes) {
    const auto& names = SweepAxisNames();
    if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
      throw ConfigError("unknown sweep parameter '" + axis.name + "'");
    }
    if (axis.values.empty()) {
      throw ConfigError("sweep axis '" + axis.name + "' has no values");
    }
  }
  std::vector<PendingPoint> points{{spec.base, ""}};
  for (const SweepAxis& axis : spec.axes) {
    std::vector<PendingPoint> next;
    next.reserve(points.size() * axis.values.size());
    for (const PendingPoint& point : points) {
      for (const AxisValue& value : axis.values) {
        PendingPoint p = point;
        ApplyAxisValue(p.config, axis.name, value);
        if (!p.label.empty()) p.label += ' ';
        p.label += axis.name + "=" + Describe(value);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

struct ResolvedSet {
  std::vector<ResolvedPoint> points;
  std::vector<std::string> labels;
  std::vector<std::string> skipped;
};

ResolvedSet ResolveAll(const SweepSpec& spec) {
  ResolvedSet out;
  for (PendingPoint& pending : Enumerate(spec)) {
    try {
      out.points.push_back(ResolvePoint(pending.config));
      out.labels.push_back(pending.label);
    } catch (const ConfigError& e) {
      out.skipped.push_back(pending.label + ": " + e.what());
    } catch (const LinkBudgetError& e) {
      out.skipped.push_back(pending.label + ": " + e.what());
    }
  }
  if (out.points.empty()) {
    throw ConfigError("no valid sweep point left after skipping " +
                      std::to_string(out.skipped.size()) + " invalid ones");
  }
  return out;
}

Cell OptionalCell(const std::optional<double>& value) {
  if (value) return *value;
  return std::monostate{};
}

}  // namespace

std::string_view Version() { return BEAMDISC_VERSION; }

ResolvedPoint ResolvePoint(const PointConfig& config) {
  config.geometry.Validate();
  config.budget.Validate();
  config.coding.Validate();
  if (config.n_ues < 1 || config.n_snapshots < 1) {
    throw ConfigError("UE and snapshot counts must be >= 1");
  }

  ResolvedPoint point;
  point.config = config;
  const int beams = config.scheme == SchemeKind::kTd ? 1 : config.beams;
  point.scheme = {config.scheme, beams,
                  config.scheme == SchemeKind::kSd
                      ? config.inter_beam_interference_db
                      : 0.0};
  point.scheme.Validate();
  if (config.scan_areas < 1) throw ConfigError("N must be >= 1");
  if (beams < 1 || config.scan_areas % beams != 0) {
    throw ConfigError("M = " + std::to_string(beams) +
                      " does not divide N = " +
                      std::to_string(config.scan_areas));
  }

  auto [n_h, n_v] = config.n_horizontal != 0
                        ? std::pair{config.n_horizontal, config.n_vertical}
                        : SplitScanAreas(config.scan_areas);
  if (n_h * n_v != config.scan_areas) {
    throw ConfigError("N_H * N_V must equal N");
  }
  point.config.n_horizontal = n_h;
  point.config.n_vertical = n_v;
  point.beam = MakeBeamGeometry(n_h, n_v, config.geometry);

  const LinkBudget& budget = config.budget;
  if (config.reference.snr_db) {
    // Back out the path loss that yields the requested TD SNR.
    point.reference_pathloss_db =
        budget.tx_power_dbm + point.beam.gain_db -
        (budget.noise_density_dbm_hz + 10.0 * std::log10(budget.bandwidth_hz)) -
        *config.reference.snr_db;
  } else {
    const double edge =
        DistanceFromPlanar(config.geometry.cell_radius_m, config.geometry);
    point.reference_pathloss_db = PathLossDb(edge, config.reference.state,
                                             budget, config.reference.margin_db);
  }
  point.durations = ComputeSchemeDurations(
      point.scheme, budget.tx_power_dbm, point.beam.gain_db,
      point.reference_pathloss_db, budget.noise_density_dbm_hz,
      budget.bandwidth_hz, config.coding);

  point.scan = {config.scan_areas, beams, point.durations.scheme_s,
                config.guard_interval_s, config.frame_s};
  point.scan.Validate();
  config.variant.Validate(point.scan);
  point.retry = {config.max_frames, config.coding.block_error_rate};
  point.retry.Validate();
  if (config.max_frames && config.variant.kind != VariantKind::kSingle) {
    throw ConfigError("beacon variants need K -> infinity");
  }
  if (config.timing_known && config.variant.kind != VariantKind::kSingle) {
    throw ConfigError("known beacon timing is modeled for the single beacon");
  }
  return point;
}

SimulationPlan MakeSimulationPlan(const ResolvedPoint& point) {
  const PointConfig& c = point.config;
  SimulationPlan plan;
  plan.n_ues = c.n_ues;
  plan.n_snapshots = c.n_snapshots;
  plan.seed = c.seed;
  plan.scan = point.scan;
  plan.scheme = point.scheme;
  plan.coding = c.coding;
  plan.variant = c.variant;
  plan.geometry = c.geometry;
  plan.budget = c.budget;
  plan.timing_known = c.timing_known;
  plan.max_frames = c.max_frames;
  plan.drop_model = c.drop_model;
  plan.n_horizontal = c.n_horizontal;
  plan.n_vertical = c.n_vertical;
  plan.check_coverage = c.check_coverage;
  return plan;
}

const std::vector<std::string>& SweepAxisNames() {
  static const std::vector<std::string> names = {
      "N",        "M",           "scheme",       "t_gi",
      "epsilon",  "variant",     "K",            "i_b_db",
      "payload_bits", "blocklength", "frame_s",  "timing_known",
      "snr_db",   "reference_margin_db"};
  return names;
}

void ApplyAxisValue(PointConfig& config, std::string_view name,
                    const AxisValue& value) {
  if (name == "N") {
    config.scan_areas = static_cast<int>(AsInt(name, value));
    config.n_horizontal = 0;
    config.n_vertical = 0;
  } else if (name == "M") {
    config.beams = static_cast<int>(AsInt(name, value));
  } else if (name == "scheme") {
    config.scheme = ParseScheme(AsString(name, value));
  } else if (name == "t_gi") {
    config.guard_interval_s = AsDouble(name, value);
  } else if (name == "epsilon") {
    config.coding.block_error_rate = AsDouble(name, value);
  } else if (name == "variant") {
    config.variant = ParseVariant(AsString(name, value));
  } else if (name == "K") {
    if (const auto* s = std::get_if<std::string>(&value)) {
      if (*s != "inf") throw ConfigError("K must be an integer or \"inf\"");
      config.max_frames.reset();
    } else {
      config.max_frames = static_cast<int>(AsInt(name, value));
    }
  } else if (name == "i_b_db") {
    config.inter_beam_interference_db = AsDouble(name, value);
  } else if (name == "payload_bits") {
    config.coding.payload_bits = AsDouble(name, value);
  } else if (name == "blocklength") {
    config.coding.blocklength = static_cast<int>(AsInt(name, value));
  } else if (name == "frame_s") {
    config.frame_s = AsDouble(name, value);
  } else if (name == "timing_known") {
    config.timing_known = AsBool(name, value);
  } else if (name == "snr_db") {
    config.reference.snr_db = AsDouble(name, value);
  } else if (name == "reference_margin_db") {
    config.reference.margin_db = AsDouble(name, value);
  } else {
    throw ConfigError("unknown sweep parameter '" + std::string(name) + "'");
  }
}

std::string_view SweepModeName(SweepMode mode) {
  switch (mode) {
    case SweepMode::kAnalytic:
      return "analytic";
    case SweepMode::kSim:
      return "sim";
    case SweepMode::kBoth:
      return "both";
  }
  return "?";
}

SweepMode ParseSweepMode(std::string_view name) {
  if (name == "analytic" || name == "analytic-only") return SweepMode::kAnalytic;
  if (name == "sim" || name == "sim-only") return SweepMode::kSim;
  if (name == "both") return SweepMode::kBoth;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

void ResultRow::Set(std::string column, Cell value) {
  for (auto& [name, cell] : cells_) {
    if (name == column) {
      cell = std::move(value);
      return;
    }
  }
  cells_.emplace_back(std::move(column), std::move(value));
}

const Cell* ResultRow::Find(std::string_view column) const {
  for (const auto& [name, cell] : cells_) {
    if (name == column) return &cell;
  }
  return nullptr;
}

std::optional<double> ResultRow::Number(std::string_view column) const {
  const Cell* cell = Find(column);
  if (cell == nullptr) return std::nullopt;
  if (const auto* d = std::get_if<double>(cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(cell)) {
    return static_cast<double>(*i);
  }
  return std::nullopt;
}

std::optional<std::string> ResultRow::Text(std::string_view column) const {
  const Cell* cell = Find(column);
  if (cell == nullptr) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(cell)) return *s;
  return std::nullopt;
}

ResultRow EvaluatePoint(const ResolvedPoint& point, SweepMode mode,
                        const SweepOutputs& outputs) {
  const PointConfig& c = point.config;
  const ScanConfig& scan = point.scan;
  const RetryModel& retry = point.retry;
  const bool single = c.variant.kind == VariantKind::kSingle;

  ResultRow row;
  row.Set("scheme", std::string(SchemeName(point.scheme.kind)));
  row.Set("variant", c.variant.Tag());
  row.Set("N", std::int64_t{scan.scan_areas});
  row.Set("M", std::int64_t{c.beams});
  row.Set("beams_effective", std::int64_t{scan.beams});
  row.Set("S", std::int64_t{scan.Slots()});
  row.Set("n_h", std::int64_t{c.n_horizontal});
  row.Set("n_v", std::int64_t{c.n_vertical});
  row.Set("t_gi_s", scan.guard_interval_s);
  row.Set("frame_s", scan.frame_s);
  row.Set("epsilon", retry.block_error_rate);
  if (retry.max_frames) {
    row.Set("K", std::int64_t{*retry.max_frames});
  } else {
    row.Set("K", std::string("inf"));
  }
  row.Set("i_b_db", point.scheme.inter_beam_interference_db);
  row.Set("payload_bits", c.coding.payload_bits);
  row.Set("blocklength", std::int64_t{c.coding.blocklength});
  row.Set("timing_known", c.timing_known);
  row.Set("seed", static_cast<std::int64_t>(c.seed));
  row.Set("gain_db", point.beam.gain_db);
  row.Set("snr_td_db", point.durations.td_snr.snr_db);
  row.Set("snr_scheme_db", point.durations.scheme_snr.snr_db);
  row.Set("t_td_s", point.durations.td_s);
  row.Set("beam_duration_s", scan.beam_duration_s);

  const bool analytic = mode != SweepMode::kSim;
  const bool simulate = mode != SweepMode::kAnalytic;

  if (outputs.cdl_analytic && analytic) {
    std::optional<double> cdl;
    std::optional<double> timeline;
    if (c.timing_known) {
      cdl = CdlWithTiming(scan, retry);
      timeline = cdl;
    } else if (single && retry.IsInfinite()) {
      cdl = CdlPerScheme(point.scheme, point.durations.td_s,
                         point.durations.sd_s, scan.frame_s, retry);
      timeline = cdl;
    } else if (single) {
      cdl = CdlWithoutTiming(scan, retry).mean_s;
      timeline = cdl;
    } else {
      cdl = CdlVariant(scan, retry, c.variant).cdl_s;
      timeline = c.variant.kind == VariantKind::kSeparated
                     ? SeparatedTimelineCdl(scan, retry.block_error_rate,
                                            c.variant.factor)
                     : *cdl;
    }
    row.Set("cdl_analytic_s", OptionalCell(cdl));
    row.Set("cdl_timeline_s", OptionalCell(timeline));
  }
  if (outputs.oh) {
    const VariantOverheadResult oh = VariantOverhead(scan, c.variant);
    row.Set("oh", oh.frame);
    row.Set("oh_superframe", oh.superframe);
  }
  if (outputs.scenario_breakdown && analytic) {
    if (single && !c.timing_known) {
      const ScenarioBreakdown b = ScenarioCoefficients(scan, retry);
      row.Set("p_a", b.p_a);
      row.Set("p_b", b.p_b);
      row.Set("p_c", b.p_c);
      row.Set("p_d", b.p_d);
      row.Set("t_a_s", b.t_a);
      row.Set("t_b_s", b.t_b);
      row.Set("t_c_s", b.t_c);
      row.Set("t_d_s", b.t_d);
    } else {
      for (const char* col : {"p_a", "p_b", "p_c", "p_d", "t_a_s", "t_b_s",
                              "t_c_s", "t_d_s"}) {
        row.Set(col, std::monostate{});
      }
    }
  }
  if ((outputs.cdl_sim || outputs.scenario_breakdown) && simulate) {
    const SimulationResult sim = Simulate(MakeSimulationPlan(point));
    const DiscoveryStats& stats = sim.stats;
    if (outputs.cdl_sim) {
      row.Set("cdl_sim_s", stats.samples > 0 ? Cell{stats.mean_cdl_s}
                                             : Cell{std::monostate{}});
      row.Set("ci95_s", stats.ci95_s);
      row.Set("sim_samples", static_cast<std::int64_t>(stats.samples));
      row.Set("coverage_failures",
              static_cast<std::int64_t>(stats.coverage_failures));
      row.Set("discovery_failures",
              static_cast<std::int64_t>(stats.discovery_failures));
    }
    if (outputs.scenario_breakdown) {
      const double total = static_cast<double>(c.n_ues) * c.n_snapshots;
      const char* names[] = {"sim_frac_a", "sim_frac_b", "sim_frac_c",
                             "sim_frac_d"};
      for (int k = 0; k < 4; ++k) {
        row.Set(names[k], stats.scenario_counts[k] / total);
      }
    }
  }
  return row;
}

SweepResult RunSweep(const SweepSpec& spec, int jobs) {
  ResolvedSet resolved = ResolveAll(spec);
  const std::size_t n = resolved.points.size();

  SweepResult result;
  result.skipped = std::move(resolved.skipped);
  result.rows.resize(n);

  const bool trace = !spec.trace_dir.empty() && spec.mode != SweepMode::kAnalytic;
  auto evaluate = [&](std::size_t i) {
    result.rows[i] = EvaluatePoint(resolved.points[i], spec.mode, spec.outputs);
    if (trace) {
      SimulationOptions options;
      options.collect_traces = true;
      const SimulationResult sim =
          Simulate(MakeSimulationPlan(resolved.points[i]), options);
      std::filesystem::create_directories(spec.trace_dir);
      WriteTraceCsv(sim.traces, (std::filesystem::path(spec.trace_dir) /
                                 ("point_" + std::to_string(i) + ".csv"))
                                    .string());
    }
  };

  const int workers = static_cast<int>(
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          evaluate(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::size_t ValidateSweep(const SweepSpec& spec,
                          std::vector<std::string>* skipped) {
  ResolvedSet resolved = ResolveAll(spec);
  for (const ResolvedPoint& point : resolved.points) {
    // Catches ordering violations without running the simulator.
    EvaluatePoint(point, SweepMode::kAnalytic, spec.outputs);
  }
  if (skipped) *skipped = std::move(resolved.skipped);
  return resolved.points.size();
}

}  // namespace beamdisc
