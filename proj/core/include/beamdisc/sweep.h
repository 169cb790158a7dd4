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

#ifndef BEAMDISC_SWEEP_H_
#define BEAMDISC_SWEEP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "beamdisc/analytics.h"
#include "beamdisc/montecarlo.h"
#include "beamdisc/propagation.h"
#include "beamdisc/signaling.h"

namespace beamdisc {

std::string_view Version();

// Link used to size the beam dwell of every slot.
struct ReferenceLink {
  LinkState state = LinkState::kLos;
  // Extra loss on top of the cell-edge path loss.
  double margin_db = 0.0;
  // Bypasses the link budget and uses this TD SNR directly.
  std::optional<double> snr_db;
};

// One fully specified evaluation point.
struct PointConfig {
  int n_ues = 100;
  int n_snapshots = 1000;
  std::uint64_t seed = 1;
  NetworkGeometry geometry;
  LinkBudget budget;
  CodingConfig coding;
  int scan_areas = 128;
  int beams = 1;
  int n_horizontal = 0;
  int n_vertical = 0;
  double guard_interval_s = 0.0;
  double frame_s = 200e-6;
  SchemeKind scheme = SchemeKind::kTd;
  double inter_beam_interference_db = 0.0;
  BeaconVariant variant;
  bool timing_known = false;
  std::optional<int> max_frames;
  DropModel drop_model = DropModel::kAreaUniform;
  bool check_coverage = true;
  ReferenceLink reference;
};

// Beam geometry and dwell times resolved for a point.
struct ResolvedPoint {
  PointConfig config;
  Scheme scheme;
  BeamGeometry beam;
  double reference_pathloss_db = 0.0;
  SchemeDurations durations;
  ScanConfig scan;
  RetryModel retry;
};

// Throws ConfigError (invalid N/M/frame layout) or LinkBudgetError (the
// reference link cannot carry the payload).
ResolvedPoint ResolvePoint(const PointConfig& config);

SimulationPlan MakeSimulationPlan(const ResolvedPoint& point);

using AxisValue = std::variant<std::int64_t, double, bool, std::string>;

struct SweepAxis {
  std::string name;
  std::vector<AxisValue> values;
};

// Names accepted on a sweep axis.
const std::vector<std::string>& SweepAxisNames();

// Throws ConfigError for an unknown name or a value of the wrong type.
void ApplyAxisValue(PointConfig& config, std::string_view name,
                    const AxisValue& value);

enum class SweepMode { kAnalytic, kSim, kBoth };

std::string_view SweepModeName(SweepMode mode);
SweepMode ParseSweepMode(std::string_view name);

struct SweepOutputs {
  bool cdl_analytic = true;
  bool cdl_sim = true;
  bool oh = true;
  bool scenario_breakdown = false;
};

struct SweepSpec {
  PointConfig base;
  std::vector<SweepAxis> axes;
  SweepOutputs outputs;
  SweepMode mode = SweepMode::kAnalytic;
  // Optional per-trace CSV dump of every simulated point (debugging).
  std::string trace_dir;
};

using Cell = std::variant<std::monostate, std::int64_t, double, bool,
                          std::string>;

// Self-describing output row: ordered (column, value) pairs.
class ResultRow {
 public:
  void Set(std::string column, Cell value);

  const std::vector<std::pair<std::string, Cell>>& Cells() const {
    return cells_;
  }
  const Cell* Find(std::string_view column) const;
  // Numeric value of a column; nullopt when absent or empty.
  std::optional<double> Number(std::string_view column) const;
  std::optional<std::string> Text(std::string_view column) const;

 private:
  std::vector<std::pair<std::string, Cell>> cells_;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  // One message per skipped point.
  std::vector<std::string> skipped;
};

// Evaluates one resolved point according to mode and outputs.
ResultRow EvaluatePoint(const ResolvedPoint& point, SweepMode mode,
                        const SweepOutputs& outputs);

// Cartesian product over the axes, first axis outermost. Points with an
// invalid N/M pair, a beacon that does not fit, or an unsupportable link are
// skipped and reported. Throws ConfigError when nothing is left.
SweepResult RunSweep(const SweepSpec& spec, int jobs = 1);

// Same enumeration and checks as RunSweep without evaluating any point.
// Returns the number of valid points.
std::size_t ValidateSweep(const SweepSpec& spec,
                          std::vector<std::string>* skipped = nullptr);

// JSON config ingestion. Throws ConfigError with the offending field path.
SweepSpec ParseSweepSpec(std::string_view json_text);
std::string SweepSpecToJson(const SweepSpec& spec);

enum class OutputFormat { kCsv, kJson };

OutputFormat ParseOutputFormat(std::string_view name);

// Floats use 12 significant digits.
std::string FormatCsv(const std::vector<ResultRow>& rows);
std::string FormatJson(const std::vector<ResultRow>& rows);

// Parses FormatCsv output back into rows; numeric cells become doubles and
// empty cells monostate.
std::vector<ResultRow> ParseCsv(std::string_view text);

struct EmitMetadata {
  std::uint64_t seed = 0;
  std::string config_json;
  std::string mode;
  int jobs = 1;
};

// Writes rows to `path` and a sidecar `path + ".meta.json"`. Throws
// std::runtime_error on I/O failure or ConfigError for empty rows.
void Emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::string& path, const EmitMetadata& metadata);

}  // namespace beamdisc

#endif  // BEAMDISC_SWEEP_H_
