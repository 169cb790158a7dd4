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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "beamdisc/errors.h"
#include "gtest/gtest.h"

namespace beamdisc {
namespace {

constexpr double kUs = 1e-6;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::size_t CountLines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

SweepSpec Fig7Spec() {
  return ParseSweepSpec(R"({
    "base": {"scheme": "TD", "M": 1},
    "axes": [
      {"param": "N", "values": [1, 2, 4, 8, 16, 32, 64, 128]},
      {"param": "t_gi", "values": [0, 1e-7, 1e-6]}
    ],
    "outputs": ["cdl_analytic", "oh"],
    "mode": "analytic"
  })");
}

TEST(ParseSweepSpecTest, ReadsEveryField) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {
      "n_ues": 7, "n_snapshots": 9, "seed": 123, "N": 64, "M": 4,
      "n_h": 8, "n_v": 8, "t_gi": 1e-7, "frame_s": 1e-4, "scheme": "SD",
      "i_b_db": 3.5, "payload_bits": 256, "blocklength": 500,
      "epsilon": 1e-4, "complex_awgn": true, "variant": "long_frame:2",
      "timing_known": false, "K": "inf", "drop_model": "radius",
      "check_coverage": false,
      "geometry": {"cell_radius_m": 80, "ap_height_m": 12},
      "budget": {"tx_power_dbm": 25, "bandwidth_hz": 5e8},
      "reference": {"state": "NLOS", "margin_db": 2, "snr_db": null}
    },
    "axes": [{"param": "M", "values": [1, 2]}],
    "outputs": ["cdl_sim"],
    "mode": "both",
    "trace_dir": "/tmp/x"
  })");
  const PointConfig& c = spec.base;
  EXPECT_EQ(c.n_ues, 7);
  EXPECT_EQ(c.n_snapshots, 9);
  EXPECT_EQ(c.seed, 123u);
  EXPECT_EQ(c.scan_areas, 64);
  EXPECT_EQ(c.beams, 4);
  EXPECT_EQ(c.n_horizontal, 8);
  EXPECT_DOUBLE_EQ(c.guard_interval_s, 1e-7);
  EXPECT_DOUBLE_EQ(c.frame_s, 1e-4);
  EXPECT_EQ(c.scheme, SchemeKind::kSd);
  EXPECT_DOUBLE_EQ(c.inter_beam_interference_db, 3.5);
  EXPECT_DOUBLE_EQ(c.coding.payload_bits, 256);
  EXPECT_EQ(c.coding.blocklength, 500);
  EXPECT_DOUBLE_EQ(c.coding.block_error_rate, 1e-4);
  EXPECT_TRUE(c.coding.complex_awgn);
  EXPECT_EQ(c.variant.kind, VariantKind::kLongFrame);
  EXPECT_FALSE(c.max_frames.has_value());
  EXPECT_EQ(c.drop_model, DropModel::kRadiusUniform);
  EXPECT_FALSE(c.check_coverage);
  EXPECT_DOUBLE_EQ(c.geometry.cell_radius_m, 80);
  EXPECT_DOUBLE_EQ(c.budget.tx_power_dbm, 25);
  EXPECT_EQ(c.reference.state, LinkState::kNlos);
  EXPECT_FALSE(c.reference.snr_db.has_value());
  EXPECT_EQ(spec.axes.size(), 1u);
  EXPECT_TRUE(spec.outputs.cdl_sim);
  EXPECT_FALSE(spec.outputs.cdl_analytic);
  EXPECT_EQ(spec.mode, SweepMode::kBoth);
  EXPECT_EQ(spec.trace_dir, "/tmp/x");
}

TEST(ParseSweepSpecTest, ErrorsNameTheField) {
  auto message = [](const char* json) -> std::string {
    try {
      ParseSweepSpec(json);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message(R"({"base": {"N": "x"}})").find("config.base.N"),
            std::string::npos);
  EXPECT_NE(message(R"({"base": {"gamma": 1}})").find("config.base.gamma"),
            std::string::npos);
  EXPECT_NE(message(R"({"axes": [{"param": "Q", "values": [1]}]})")
                .find("config.axes[0].param"),
            std::string::npos);
  EXPECT_NE(message(R"({"axes": [{"param": "N", "values": []}]})")
                .find("config.axes[0].values"),
            std::string::npos);
  EXPECT_NE(message(R"({"axes": [{"param": "scheme", "values": [3]}]})")
                .find("config.axes[0].values[0]"),
            std::string::npos);
  EXPECT_NE(message(R"({"mode": "fast"})").find("config.mode"),
            std::string::npos);
  EXPECT_NE(message("{not json").find("invalid JSON"), std::string::npos);
  EXPECT_NE(message(R"({"base": {"n_h": 4}})").find("n_h and n_v"),
            std::string::npos);
}

TEST(ParseSweepSpecTest, SerializationRoundTrips) {
  const SweepSpec spec = Fig7Spec();
  const SweepSpec again = ParseSweepSpec(SweepSpecToJson(spec));
  EXPECT_EQ(SweepSpecToJson(again), SweepSpecToJson(spec));
  EXPECT_EQ(again.axes.size(), 2u);
  EXPECT_EQ(again.mode, SweepMode::kAnalytic);
}

TEST(RunSweepTest, Fig7GridHasTwentyFourRows) {
  const SweepResult result = RunSweep(Fig7Spec());
  EXPECT_EQ(result.rows.size(), 24u);
  EXPECT_TRUE(result.skipped.empty());
  // First axis outermost.
  EXPECT_EQ(result.rows[0].Number("N"), 1.0);
  EXPECT_EQ(result.rows[1].Number("N"), 1.0);
  EXPECT_EQ(result.rows[3].Number("N"), 2.0);
  EXPECT_EQ(result.rows[1].Number("t_gi_s"), 1e-7);
}

TEST(RunSweepTest, GuardIntervalDoesNotMoveLatency) {
  const SweepResult result = RunSweep(Fig7Spec());
  for (std::size_t i = 0; i < result.rows.size(); i += 3) {
    const double base = *result.rows[i].Number("cdl_analytic_s");
    for (std::size_t k = 1; k < 3; ++k) {
      EXPECT_EQ(*result.rows[i + k].Number("cdl_analytic_s"), base);
    }
    EXPECT_LT(*result.rows[i].Number("oh"), *result.rows[i + 2].Number("oh"));
  }
}

TEST(RunSweepTest, IncompatibleBeamCountsAreSkipped) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 12, "scheme": "FD"},
    "axes": [{"param": "M", "values": [1, 2, 5, 12]}],
    "outputs": ["cdl_analytic"]
  })");
  const SweepResult result = RunSweep(spec);
  EXPECT_EQ(result.rows.size(), 3u);
  ASSERT_EQ(result.skipped.size(), 1u);
  EXPECT_NE(result.skipped[0].find("M=5"), std::string::npos);
  EXPECT_EQ(ValidateSweep(spec), 3u);
}

TEST(RunSweepTest, EmptyProductIsAnError) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 12, "scheme": "FD"},
    "axes": [{"param": "M", "values": [5, 7]}]
  })");
  EXPECT_THROW(RunSweep(spec), ConfigError);
  EXPECT_THROW(ValidateSweep(spec), ConfigError);
}

TEST(RunSweepTest, SinglePointEqualsDirectCalls) {
  SweepSpec spec;
  spec.base.scan_areas = 64;
  spec.base.beams = 4;
  spec.base.scheme = SchemeKind::kFd;
  spec.base.guard_interval_s = 0.1 * kUs;
  spec.mode = SweepMode::kAnalytic;
  const SweepResult result = RunSweep(spec);
  ASSERT_EQ(result.rows.size(), 1u);
  const ResultRow& row = result.rows[0];

  const ResolvedPoint point = ResolvePoint(spec.base);
  EXPECT_EQ(point.scan.beam_duration_s, 4 * point.durations.td_s);
  const double cdl = CdlPerScheme(Scheme::Fd(4), point.durations.td_s,
                                  std::nullopt, point.scan.frame_s,
                                  RetryModel::Infinite(1e-3));
  EXPECT_EQ(row.Number("cdl_analytic_s"), cdl);
  EXPECT_EQ(row.Number("oh"), Overhead(Scheme::Fd(4), point.scan));
  EXPECT_EQ(row.Text("scheme"), "FD");
  EXPECT_EQ(row.Text("variant"), "single");
  EXPECT_EQ(row.Text("K"), "inf");
  EXPECT_FALSE(row.Number("cdl_sim_s").has_value());
}

TEST(RunSweepTest, TimeDivisionIgnoresBeamCount) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 16, "scheme": "TD"},
    "axes": [{"param": "M", "values": [1, 4]}],
    "outputs": ["cdl_analytic", "oh"]
  })");
  const SweepResult result = RunSweep(spec);
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[0].Number("cdl_analytic_s"),
            result.rows[1].Number("cdl_analytic_s"));
  EXPECT_EQ(result.rows[1].Number("beams_effective"), 1.0);
}

TEST(RunSweepTest, ReferenceSnrOverride) {
  SweepSpec spec;
  spec.base.scan_areas = 8;
  spec.base.reference.snr_db = 10.61;
  const ResolvedPoint point = ResolvePoint(spec.base);
  EXPECT_NEAR(point.durations.td_snr.snr_db, 10.61, 1e-9);
  EXPECT_NEAR(point.durations.td_s, 7.4073986254365447e-8, 1e-18);
}

TEST(RunSweepTest, UnsupportableLinkSkipped) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 8},
    "axes": [{"param": "snr_db", "values": [-40, 10]}],
    "outputs": ["cdl_analytic"]
  })");
  const SweepResult result = RunSweep(spec);
  EXPECT_EQ(result.rows.size(), 1u);
  EXPECT_EQ(result.skipped.size(), 1u);
}

TEST(RunSweepTest, SimulationIsReproducibleAndJobInvariant) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 32, "n_ues": 20, "n_snapshots": 30, "seed": 5},
    "axes": [{"param": "scheme", "values": ["TD", "FD", "SD"]},
             {"param": "M", "values": [1, 4]}],
    "outputs": ["cdl_analytic", "cdl_sim", "oh", "scenario_breakdown"],
    "mode": "both"
  })");
  const std::string a = FormatCsv(RunSweep(spec, 1).rows);
  const std::string b = FormatCsv(RunSweep(spec, 3).rows);
  const std::string c = FormatCsv(RunSweep(spec, 1).rows);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(RunSweepTest, AnalyticAndSimulatedColumnsAgree) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 64, "n_ues": 100, "n_snapshots": 100, "seed": 9,
             "t_gi": 1e-7, "epsilon": 0.05},
    "axes": [{"param": "scheme", "values": ["TD", "FD", "CD", "SD"]},
             {"param": "M", "values": [1, 8]}],
    "outputs": ["cdl_analytic", "cdl_sim"],
    "mode": "both"
  })");
  for (const ResultRow& row : RunSweep(spec).rows) {
    const double analytic = *row.Number("cdl_analytic_s");
    const double sim = *row.Number("cdl_sim_s");
    // 4 CI keeps the false-alarm rate of this fixed-seed check negligible.
    EXPECT_LE(std::abs(sim - analytic), 4.0 * *row.Number("ci95_s"))
        << *row.Text("scheme") << " M=" << *row.Number("M");
  }
}

TEST(EmitTest, CsvHasHeaderAndOneLinePerRow) {
  SweepSpec spec = Fig7Spec();
  spec.axes.resize(1);
  spec.axes[0].values.resize(3);
  const std::vector<ResultRow> rows = RunSweep(spec).rows;
  ASSERT_EQ(rows.size(), 3u);
  const std::string csv = FormatCsv(rows);
  EXPECT_EQ(CountLines(csv), 4u);
  EXPECT_EQ(csv.substr(0, csv.find(',')), "scheme");
}

TEST(EmitTest, CsvRoundTripPreservesTwelveDigits) {
  ResultRow row;
  row.Set("name", std::string("a,\"b\""));
  row.Set("value", 1.234567890123456789e-7);
  row.Set("count", std::int64_t{42});
  row.Set("flag", true);
  row.Set("missing", std::monostate{});
  ResultRow other;
  other.Set("name", std::string("plain"));
  other.Set("value", -3.0);
  other.Set("count", std::int64_t{-1});
  other.Set("flag", false);
  other.Set("missing", 2.5);
  const std::vector<ResultRow> parsed = ParseCsv(FormatCsv({row, other}));
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].Text("name"), "a,\"b\"");
  EXPECT_NEAR(*parsed[0].Number("value"), 1.234567890123456789e-7,
              1e-7 * 5e-12);
  EXPECT_EQ(parsed[0].Number("count"), 42.0);
  EXPECT_TRUE(std::holds_alternative<bool>(*parsed[0].Find("flag")));
  EXPECT_TRUE(std::holds_alternative<std::monostate>(*parsed[0].Find("missing")));
  EXPECT_EQ(parsed[1].Number("missing"), 2.5);
  EXPECT_EQ(FormatCsv(parsed), FormatCsv({row, other}));
}

TEST(EmitTest, JsonIsAnArrayOfObjects) {
  ResultRow row;
  row.Set("x", 0.1);
  row.Set("s", std::string("TD"));
  row.Set("none", std::monostate{});
  const std::string json = FormatJson({row, row});
  EXPECT_EQ(json.front(), '[');
  EXPECT_NE(json.find("{\"x\": 0.1, \"s\": \"TD\", \"none\": null}"),
            std::string::npos);
}

TEST(EmitTest, SidecarRecordsSeedAndConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "beamdisc_emit";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  ResultRow row;
  row.Set("x", 1.0);
  SweepSpec spec = Fig7Spec();
  spec.base.seed = 987654321;
  EmitMetadata meta{spec.base.seed, SweepSpecToJson(spec), "analytic", 2};
  Emit({row}, OutputFormat::kCsv, path.string(), meta);
  EXPECT_EQ(ReadFile(path), "x\n1\n");
  const std::string sidecar = ReadFile(path.string() + ".meta.json");
  EXPECT_NE(sidecar.find("\"seed\": 987654321"), std::string::npos);
  EXPECT_NE(sidecar.find("\"tool_version\""), std::string::npos);
  EXPECT_NE(sidecar.find("\"axes\""), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(EmitTest, RejectsEmptyRowsAndBadPaths) {
  EXPECT_THROW(FormatCsv({}), ConfigError);
  ResultRow row;
  row.Set("x", 1.0);
  EXPECT_THROW(Emit({row}, OutputFormat::kCsv, "/nonexistent/dir/out.csv", {}),
               std::runtime_error);
  EXPECT_THROW(ParseOutputFormat("xml"), ConfigError);
}

// Columns the plotting stage binds to by name.
TEST(CsvContractTest, FigureColumnsPresent) {
  const SweepSpec spec = ParseSweepSpec(R"({
    "base": {"N": 16, "n_ues": 5, "n_snapshots": 4},
    "axes": [{"param": "scheme", "values": ["TD", "SD"]},
             {"param": "M", "values": [1, 2]},
             {"param": "epsilon", "values": [1e-5, 1e-3]}],
    "outputs": ["cdl_analytic", "cdl_sim", "oh"],
    "mode": "both"
  })");
  const std::vector<ResultRow> rows = ParseCsv(FormatCsv(RunSweep(spec).rows));
  ASSERT_EQ(rows.size(), 8u);
  for (const char* column :
       {"scheme", "variant", "N", "M", "S", "t_gi_s", "frame_s", "epsilon",
        "K", "i_b_db", "snr_td_db", "snr_scheme_db", "beam_duration_s",
        "cdl_analytic_s", "cdl_sim_s", "ci95_s", "oh", "oh_superframe"}) {
    for (const ResultRow& row : rows) {
      EXPECT_NE(row.Find(column), nullptr) << column;
    }
  }
  for (const ResultRow& row : rows) {
    EXPECT_GT(*row.Number("cdl_analytic_s"), 0.0);
    EXPECT_GT(*row.Number("oh"), 0.0);
    EXPECT_LE(*row.Number("oh"), 1.0);
  }
}

TEST(ApplyAxisValueTest, TypesAreChecked) {
  PointConfig config;
  EXPECT_THROW(ApplyAxisValue(config, "N", std::string("x")), ConfigError);
  EXPECT_THROW(ApplyAxisValue(config, "timing_known", 1.0), ConfigError);
  EXPECT_THROW(ApplyAxisValue(config, "K", std::string("forever")),
               ConfigError);
  EXPECT_THROW(ApplyAxisValue(config, "bogus", 1.0), ConfigError);
  ApplyAxisValue(config, "K", std::int64_t{4});
  EXPECT_EQ(config.max_frames, 4);
  ApplyAxisValue(config, "K", std::string("inf"));
  EXPECT_FALSE(config.max_frames.has_value());
  config.n_horizontal = 4;
  config.n_vertical = 2;
  ApplyAxisValue(config, "N", 16.0);
  EXPECT_EQ(config.scan_areas, 16);
  EXPECT_EQ(config.n_horizontal, 0);
}

}  // namespace
}  // namespace beamdisc
