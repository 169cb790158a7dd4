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

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "beamdisc/errors.h"
#include "beamdisc/sweep.h"
#include "json.hpp"

namespace beamdisc {
namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) Fail(path_, "expected an object");
  }

  // Rejects keys that were never read.
  void Finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) Fail(Child(key), "unknown field");
    }
  }

  const json* Get(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void Number(const std::string& key, double& out) {
    if (const json* v = Get(key)) {
      if (!v->is_number()) Fail(Child(key), "expected a number");
      out = v->get<double>();
    }
  }

  void Integer(const std::string& key, int& out) {
    if (const json* v = Get(key)) {
      if (!v->is_number_integer()) Fail(Child(key), "expected an integer");
      const auto value = v->get<std::int64_t>();
      if (value < std::numeric_limits<int>::min() ||
          value > std::numeric_limits<int>::max()) {
        Fail(Child(key), "integer out of range");
      }
      out = static_cast<int>(value);
    }
  }

  void Unsigned(const std::string& key, std::uint64_t& out) {
    if (const json* v = Get(key)) {
      if (!v->is_number_unsigned()) {
        Fail(Child(key), "expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void Bool(const std::string& key, bool& out) {
    if (const json* v = Get(key)) {
      if (!v->is_boolean()) Fail(Child(key), "expected a boolean");
      out = v->get<bool>();
    }
  }

  template <typename Parse>
  void Enum(const std::string& key, Parse parse) {
    if (const json* v = Get(key)) {
      if (!v->is_string()) Fail(Child(key), "expected a string");
      try {
        parse(v->get<std::string>());
      } catch (const ConfigError& e) {
        Fail(Child(key), e.what());
      }
    }
  }

  std::string Child(const std::string& key) const { return path_ + "." + key; }

  [[noreturn]] static void Fail(const std::string& path,
                                const std::string& message) {
    throw ConfigError(path + ": " + message);
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void ReadGeometry(const json& node, const std::string& path,
                  NetworkGeometry& g) {
  Reader r(node, path);
  r.Number("cell_radius_m", g.cell_radius_m);
  r.Number("ap_height_m", g.ap_height_m);
  r.Number("ue_height_m", g.ue_height_m);
  r.Number("los_d1_m", g.los_d1_m);
  r.Number("los_d2_m", g.los_d2_m);
  r.Finish();
}

void ReadBudget(const json& node, const std::string& path, LinkBudget& b) {
  Reader r(node, path);
  r.Number("carrier_hz", b.carrier_hz);
  r.Number("bandwidth_hz", b.bandwidth_hz);
  r.Number("tx_power_dbm", b.tx_power_dbm);
  r.Number("noise_density_dbm_hz", b.noise_density_dbm_hz);
  r.Number("pathloss_exponent_los", b.pathloss_exponent_los);
  r.Number("pathloss_exponent_nlos", b.pathloss_exponent_nlos);
  r.Number("shadowing_std_los_db", b.shadowing_std_los_db);
  r.Number("shadowing_std_nlos_db", b.shadowing_std_nlos_db);
  r.Finish();
}

void ReadReference(const json& node, const std::string& path,
                   ReferenceLink& ref) {
  Reader r(node, path);
  r.Enum("state", [&](const std::string& s) { ref.state = ParseLinkState(s); });
  r.Number("margin_db", ref.margin_db);
  if (const json* v = r.Get("snr_db")) {
    if (v->is_null()) {
      ref.snr_db.reset();
    } else if (v->is_number()) {
      ref.snr_db = v->get<double>();
    } else {
      Reader::Fail(r.Child("snr_db"), "expected a number or null");
    }
  }
  r.Finish();
}

void ReadMaxFrames(const json* v, const std::string& path,
                   std::optional<int>& out) {
  if (v == nullptr) return;
  if (v->is_null() || (v->is_string() && v->get<std::string>() == "inf")) {
    out.reset();
  } else if (v->is_number_integer()) {
    out = v->get<int>();
  } else {
    Reader::Fail(path, "expected an integer or \"inf\"");
  }
}

void ReadBase(const json& node, const std::string& path, PointConfig& c) {
  Reader r(node, path);
  r.Integer("n_ues", c.n_ues);
  r.Integer("n_snapshots", c.n_snapshots);
  r.Unsigned("seed", c.seed);
  r.Integer("N", c.scan_areas);
  r.Integer("M", c.beams);
  r.Integer("n_h", c.n_horizontal);
  r.Integer("n_v", c.n_vertical);
  r.Number("t_gi", c.guard_interval_s);
  r.Number("frame_s", c.frame_s);
  r.Enum("scheme", [&](const std::string& s) { c.scheme = ParseScheme(s); });
  r.Number("i_b_db", c.inter_beam_interference_db);
  r.Number("payload_bits", c.coding.payload_bits);
  r.Integer("blocklength", c.coding.blocklength);
  r.Number("epsilon", c.coding.block_error_rate);
  r.Bool("complex_awgn", c.coding.complex_awgn);
  r.Enum("variant",
         [&](const std::string& s) { c.variant = ParseVariant(s); });
  r.Bool("timing_known", c.timing_known);
  ReadMaxFrames(r.Get("K"), r.Child("K"), c.max_frames);
  r.Enum("drop_model",
         [&](const std::string& s) { c.drop_model = ParseDropModel(s); });
  r.Bool("check_coverage", c.check_coverage);
  if (const json* v = r.Get("geometry")) {
    ReadGeometry(*v, r.Child("geometry"), c.geometry);
  }
  if (const json* v = r.Get("budget")) {
    ReadBudget(*v, r.Child("budget"), c.budget);
  }
  if (const json* v = r.Get("reference")) {
    ReadReference(*v, r.Child("reference"), c.reference);
  }
  r.Finish();
  if ((c.n_horizontal == 0) != (c.n_vertical == 0)) {
    Reader::Fail(path, "n_h and n_v must be given together");
  }
}

AxisValue ReadAxisValue(const json& v, const std::string& path) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  Reader::Fail(path, "axis values must be numbers, booleans or strings");
}

void ReadAxes(const json& node, const std::string& path,
              std::vector<SweepAxis>& axes) {
  if (!node.is_array()) Reader::Fail(path, "expected an array");
  const auto& names = SweepAxisNames();
  std::set<std::string> used;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    Reader r(node[i], item_path);
    SweepAxis axis;
    const json* param = r.Get("param");
    if (param == nullptr || !param->is_string()) {
      Reader::Fail(r.Child("param"), "expected a parameter name");
    }
    axis.name = param->get<std::string>();
    if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
      Reader::Fail(r.Child("param"),
                   "unknown sweep parameter '" + axis.name + "'");
    }
    if (!used.insert(axis.name).second) {
      Reader::Fail(r.Child("param"), "parameter '" + axis.name +
                                         "' swept twice");
    }
    const json* values = r.Get("values");
    if (values == nullptr || !values->is_array() || values->empty()) {
      Reader::Fail(r.Child("values"), "expected a non-empty array");
    }
    for (std::size_t k = 0; k < values->size(); ++k) {
      const std::string value_path =
          r.Child("values") + "[" + std::to_string(k) + "]";
      axis.values.push_back(ReadAxisValue((*values)[k], value_path));
      // Type-check each value against a scratch config.
      PointConfig scratch;
      try {
        ApplyAxisValue(scratch, axis.name, axis.values.back());
      } catch (const ConfigError& e) {
        Reader::Fail(value_path, e.what());
      }
    }
    r.Finish();
    axes.push_back(std::move(axis));
  }
}

void ReadOutputs(const json& node, const std::string& path,
                 SweepOutputs& outputs) {
  if (!node.is_array() || node.empty()) {
    Reader::Fail(path, "expected a non-empty array");
  }
  outputs = {false, false, false, false};
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    if (!node[i].is_string()) Reader::Fail(item_path, "expected a string");
    const std::string name = node[i].get<std::string>();
    if (name == "cdl_analytic") {
      outputs.cdl_analytic = true;
    } else if (name == "cdl_sim") {
      outputs.cdl_sim = true;
    } else if (name == "oh") {
      outputs.oh = true;
    } else if (name == "scenario_breakdown") {
      outputs.scenario_breakdown = true;
    } else {
      Reader::Fail(item_path, "unknown output '" + name + "'");
    }
  }
}

json AxisValueToJson(const AxisValue& value) {
  return std::visit([](const auto& v) { return json(v); }, value);
}

}  // namespace

SweepSpec ParseSweepSpec(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  SweepSpec spec;
  Reader r(root, "config");
  if (const json* v = r.Get("base")) ReadBase(*v, r.Child("base"), spec.base);
  if (const json* v = r.Get("axes")) ReadAxes(*v, r.Child("axes"), spec.axes);
  if (const json* v = r.Get("outputs")) {
    ReadOutputs(*v, r.Child("outputs"), spec.outputs);
  }
  r.Enum("mode", [&](const std::string& s) { spec.mode = ParseSweepMode(s); });
  if (const json* v = r.Get("trace_dir")) {
    if (!v->is_string()) Reader::Fail(r.Child("trace_dir"), "expected a string");
    spec.trace_dir = v->get<std::string>();
  }
  r.Finish();
  return spec;
}

std::string SweepSpecToJson(const SweepSpec& spec) {
  const PointConfig& c = spec.base;
  json base = {
      {"n_ues", c.n_ues},
      {"n_snapshots", c.n_snapshots},
      {"seed", c.seed},
      {"N", c.scan_areas},
      {"M", c.beams},
      {"n_h", c.n_horizontal},
      {"n_v", c.n_vertical},
      {"t_gi", c.guard_interval_s},
      {"frame_s", c.frame_s},
      {"scheme", std::string(SchemeName(c.scheme))},
      {"i_b_db", c.inter_beam_interference_db},
      {"payload_bits", c.coding.payload_bits},
      {"blocklength", c.coding.blocklength},
      {"epsilon", c.coding.block_error_rate},
      {"complex_awgn", c.coding.complex_awgn},
      {"variant", c.variant.Tag()},
      {"timing_known", c.timing_known},
      {"drop_model", std::string(DropModelName(c.drop_model))},
      {"check_coverage", c.check_coverage},
      {"geometry",
       {{"cell_radius_m", c.geometry.cell_radius_m},
        {"ap_height_m", c.geometry.ap_height_m},
        {"ue_height_m", c.geometry.ue_height_m},
        {"los_d1_m", c.geometry.los_d1_m},
        {"los_d2_m", c.geometry.los_d2_m}}},
      {"budget",
       {{"carrier_hz", c.budget.carrier_hz},
        {"bandwidth_hz", c.budget.bandwidth_hz},
        {"tx_power_dbm", c.budget.tx_power_dbm},
        {"noise_density_dbm_hz", c.budget.noise_density_dbm_hz},
        {"pathloss_exponent_los", c.budget.pathloss_exponent_los},
        {"pathloss_exponent_nlos", c.budget.pathloss_exponent_nlos},
        {"shadowing_std_los_db", c.budget.shadowing_std_los_db},
        {"shadowing_std_nlos_db", c.budget.shadowing_std_nlos_db}}},
  };
  base["K"] = c.max_frames ? json(*c.max_frames) : json("inf");
  json reference = {{"state", std::string(LinkStateName(c.reference.state))},
                    {"margin_db", c.reference.margin_db}};
  reference["snr_db"] =
      c.reference.snr_db ? json(*c.reference.snr_db) : json(nullptr);
  base["reference"] = reference;

  json axes = json::array();
  for (const SweepAxis& axis : spec.axes) {
    json values = json::array();
    for (const AxisValue& v : axis.values) values.push_back(AxisValueToJson(v));
    axes.push_back({{"param", axis.name}, {"values", values}});
  }
  json outputs = json::array();
  if (spec.outputs.cdl_analytic) outputs.push_back("cdl_analytic");
  if (spec.outputs.cdl_sim) outputs.push_back("cdl_sim");
  if (spec.outputs.oh) outputs.push_back("oh");
  if (spec.outputs.scenario_breakdown) outputs.push_back("scenario_breakdown");

  json root = {{"base", base},
               {"axes", axes},
               {"outputs", outputs},
               {"mode", std::string(SweepModeName(spec.mode))}};
  if (!spec.trace_dir.empty()) root["trace_dir"] = spec.trace_dir;
  return root.dump(2);
}

}  // namespace beamdisc
