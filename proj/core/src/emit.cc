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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "beamdisc/errors.h"
#include "beamdisc/sweep.h"
#include "json.hpp"

namespace beamdisc {
namespace {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string CsvField(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return FormatDouble(v);
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        }
      },
      cell);
}

std::string JsonField(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "null";
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return std::isfinite(v) ? FormatDouble(v) : "null";
        } else {
          return nlohmann::json(v).dump();
        }
      },
      cell);
}

void RequireRows(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw ConfigError("no rows to emit");
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

Cell ParseField(const std::string& field) {
  if (field.empty()) return std::monostate{};
  if (field == "true") return true;
  if (field == "false") return false;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (end == field.c_str() + field.size() && field != "inf" &&
      field != "-inf" && field != "nan") {
    return value;
  }
  return field;
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

OutputFormat ParseOutputFormat(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  RequireRows(rows);
  std::ostringstream out;
  const auto& header = rows.front().Cells();
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c].first;
  }
  out << '\n';
  for (const ResultRow& row : rows) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      const Cell* cell = row.Find(header[c].first);
      out << (c ? "," : "") << (cell ? CsvField(*cell) : "");
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatJson(const std::vector<ResultRow>& rows) {
  RequireRows(rows);
  std::ostringstream out;
  out << "[\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << "  {";
    const auto& cells = rows[r].Cells();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? ", " : "") << nlohmann::json(cells[c].first).dump() << ": "
          << JsonField(cells[c].second);
    }
    out << (r + 1 < rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
  return out.str();
}

std::vector<ResultRow> ParseCsv(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.emplace_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw ConfigError("CSV has no header");
  const std::vector<std::string> header = SplitCsvLine(lines.front());
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = SplitCsvLine(lines[i]);
    if (fields.size() != header.size()) {
      throw ConfigError("CSV line " + std::to_string(i + 1) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(header.size()));
    }
    ResultRow row;
    for (std::size_t c = 0; c < header.size(); ++c) {
      row.Set(header[c], ParseField(fields[c]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void Emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::string& path, const EmitMetadata& metadata) {
  WriteFile(path, format == OutputFormat::kCsv ? FormatCsv(rows)
                                               : FormatJson(rows));
  nlohmann::json sidecar = {
      {"seed", metadata.seed},
      {"tool_version", std::string(Version())},
      {"mode", metadata.mode},
      {"jobs", metadata.jobs},
      {"rows", rows.size()},
      {"generated_at", UtcTimestamp()},
  };
  try {
    sidecar["config"] = nlohmann::json::parse(metadata.config_json);
  } catch (const nlohmann::json::parse_error&) {
    sidecar["config"] = metadata.config_json;
  }
  WriteFile(path + ".meta.json", sidecar.dump(2) + "\n");
}

}  // namespace beamdisc
