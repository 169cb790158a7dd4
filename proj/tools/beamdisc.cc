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

// Command-line front end: `beamdisc run` evaluates a sweep config and
// `beamdisc validate` checks one without running it.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "beamdisc/errors.h"
#include "beamdisc/sweep.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string ReadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw beamdisc::ConfigError("cannot read config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int DefaultJobs() {
  if (const char* env = std::getenv("BEAMDISC_JOBS")) {
    char* end = nullptr;
    const long jobs = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && jobs >= 1) return static_cast<int>(jobs);
    std::cerr << "warning: ignoring BEAMDISC_JOBS='" << env << "'\n";
  }
  return 1;
}

// Scalar overrides; names mirror the config fields in kebab-case.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> n_ues;
  std::optional<int> n_snapshots;
  std::optional<int> scan_areas;
  std::optional<int> beams;
  std::optional<double> t_gi;
  std::optional<double> frame_s;
  std::optional<double> epsilon;
  std::optional<double> i_b_db;
  std::optional<double> payload_bits;
  std::optional<int> blocklength;
  std::optional<std::string> scheme;
  std::optional<std::string> variant;
  std::optional<std::string> max_frames;
  std::optional<bool> timing_known;
  std::optional<std::string> drop_model;
  std::optional<std::string> trace_dir;
  std::optional<std::string> mode;

  void Register(CLI::App& app) {
    app.add_option("--seed", seed, "Master RNG seed");
    app.add_option("--n-ues", n_ues, "UEs per snapshot");
    app.add_option("--n-snapshots", n_snapshots, "Snapshots per point");
    app.add_option("--N", scan_areas, "Number of scan areas");
    app.add_option("--M", beams, "Simultaneous beams");
    app.add_option("--t-gi", t_gi, "Guard interval [s]");
    app.add_option("--frame-s", frame_s, "Frame period [s]");
    app.add_option("--epsilon", epsilon, "Block error rate");
    app.add_option("--i-b-db", i_b_db, "Inter-beam interference for SD [dB]");
    app.add_option("--payload-bits", payload_bits, "Beacon payload [bits]");
    app.add_option("--blocklength", blocklength, "Channel uses per beacon");
    app.add_option("--scheme", scheme, "TD, FD, CD or SD");
    app.add_option("--variant", variant,
                   "single, long_frame:W, oh_limited:V or separated:X");
    app.add_option("--K", max_frames, "Retry frames, integer or inf");
    app.add_option("--timing-known", timing_known,
                   "Whether the UE knows the beacon timing");
    app.add_option("--drop-model", drop_model, "area or radius");
    app.add_option("--trace-dir", trace_dir,
                   "Write per-UE trace CSVs of simulated points here");
    app.add_option("--mode", mode, "analytic, sim or both");
  }

  void Apply(beamdisc::SweepSpec& spec) const {
    beamdisc::PointConfig& base = spec.base;
    if (seed) base.seed = *seed;
    if (n_ues) base.n_ues = *n_ues;
    if (n_snapshots) base.n_snapshots = *n_snapshots;
    if (scan_areas) beamdisc::ApplyAxisValue(base, "N", std::int64_t{*scan_areas});
    if (beams) beamdisc::ApplyAxisValue(base, "M", std::int64_t{*beams});
    if (t_gi) base.guard_interval_s = *t_gi;
    if (frame_s) base.frame_s = *frame_s;
    if (epsilon) base.coding.block_error_rate = *epsilon;
    if (i_b_db) base.inter_beam_interference_db = *i_b_db;
    if (payload_bits) base.coding.payload_bits = *payload_bits;
    if (blocklength) base.coding.blocklength = *blocklength;
    if (scheme) beamdisc::ApplyAxisValue(base, "scheme", *scheme);
    if (variant) beamdisc::ApplyAxisValue(base, "variant", *variant);
    if (max_frames) {
      if (*max_frames == "inf") {
        base.max_frames.reset();
      } else {
        try {
          base.max_frames = std::stoi(*max_frames);
        } catch (const std::exception&) {
          throw beamdisc::ConfigError("--K expects an integer or inf");
        }
      }
    }
    if (timing_known) base.timing_known = *timing_known;
    if (drop_model) base.drop_model = beamdisc::ParseDropModel(*drop_model);
    if (trace_dir) spec.trace_dir = *trace_dir;
    if (mode) spec.mode = beamdisc::ParseSweepMode(*mode);
  }
};

void ReportSkipped(const std::vector<std::string>& skipped) {
  for (const std::string& message : skipped) {
    std::cerr << "skipped: " << message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beamformed cell discovery analytics and Monte Carlo sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(beamdisc::Version()));

  std::string config_path;
  std::string out_path;
  std::string format_name = "csv";
  int jobs = DefaultJobs();
  Overrides overrides;

  CLI::App* run = app.add_subcommand("run", "Evaluate a sweep");
  run->add_option("--config", config_path, "Sweep config (JSON)")->required();
  run->add_option("--out", out_path, "Output file; stdout when omitted");
  run->add_option("--format", format_name, "csv or json");
  run->add_option("--jobs", jobs, "Worker threads (default $BEAMDISC_JOBS)")
      ->check(CLI::PositiveNumber);
  overrides.Register(*run);

  CLI::App* validate =
      app.add_subcommand("validate", "Check a sweep config without running");
  validate->add_option("--config", config_path, "Sweep config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  beamdisc::SweepSpec spec;
  beamdisc::OutputFormat format = beamdisc::OutputFormat::kCsv;
  try {
    spec = beamdisc::ParseSweepSpec(ReadConfigFile(config_path));
    if (run->parsed()) {
      overrides.Apply(spec);
      format = beamdisc::ParseOutputFormat(format_name);
    }
    if (validate->parsed()) {
      std::vector<std::string> skipped;
      const std::size_t points = beamdisc::ValidateSweep(spec, &skipped);
      ReportSkipped(skipped);
      std::cout << "ok: " << points << " point(s), " << skipped.size()
                << " skipped\n";
      return 0;
    }
  } catch (const beamdisc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    const beamdisc::SweepResult result = beamdisc::RunSweep(spec, jobs);
    ReportSkipped(result.skipped);
    if (out_path.empty() || out_path == "-") {
      std::cout << (format == beamdisc::OutputFormat::kCsv
                        ? beamdisc::FormatCsv(result.rows)
                        : beamdisc::FormatJson(result.rows));
    } else {
      beamdisc::EmitMetadata meta;
      meta.seed = spec.base.seed;
      meta.config_json = beamdisc::SweepSpecToJson(spec);
      meta.mode = std::string(beamdisc::SweepModeName(spec.mode));
      meta.jobs = jobs;
      beamdisc::Emit(result.rows, format, out_path, meta);
    }
  } catch (const beamdisc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
