/* Copyright 2026 The seqbatch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "seqbatch/zoo.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "seqbatch/datasets.h"
#include "seqbatch/errors.h"
#include "seqbatch/text.h"

namespace seqbatch {
namespace {

using Json = nlohmann::ordered_json;

std::string Describe(const ModelRecord& r) {
  return r.model + " (" + r.task + ", " + r.dataset + ", " +
         ToString(r.source) + ")";
}

std::optional<double> OptionalPositive(const Json& item, const char* key) {
  if (!item.contains(key) || item[key].is_null()) return std::nullopt;
  const double v = item[key].get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw FormatError(std::string(key) + " must be > 0", 0);
  }
  return v;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ToString(RecordSource source) {
  return source == RecordSource::kThisToolkit ? "this-toolkit" : "external";
}

RecordSource ParseRecordSource(std::string_view name) {
  if (name == "this-toolkit") return RecordSource::kThisToolkit;
  if (name == "external") return RecordSource::kExternal;
  throw InvalidArgumentError("unknown record source '" + std::string(name) +
                             "' (expected this-toolkit or external)");
}

const Metric* ModelRecord::FindMetric(std::string_view name) const {
  for (const Metric& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::vector<ModelRecord> ParseCatalog(std::string_view json) {
  Json doc;
  try {
    doc = Json::parse(json);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed catalog: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("records") ||
      !doc["records"].is_array()) {
    throw FormatError("catalog needs a \"records\" list", 0);
  }
  std::vector<ModelRecord> records;
  std::size_t index = 0;
  for (const Json& item : doc["records"]) {
    try {
      ModelRecord r;
      r.task = item.at("task").get<std::string>();
      r.dataset = item.at("dataset").get<std::string>();
      r.model = item.at("model").get<std::string>();
      for (const Json& m : item.at("metrics")) {
        Metric metric;
        metric.name = m.at("name").get<std::string>();
        if (m.contains("unit")) {
          const std::string unit = m["unit"].get<std::string>();
          if (unit != "percent" && unit != "raw") {
            throw FormatError("metric unit must be percent or raw", 0);
          }
          metric.percent = unit == "percent";
        }
        if (!m.at("value").is_null()) {
          const double v = m["value"].get<double>();
          if (!std::isfinite(v) ||
              (metric.percent && (v < 0.0 || v > 100.0))) {
            throw FormatError("metric " + metric.name +
                                  " must be a percentage in [0, 100]",
                              0);
          }
          metric.value = v;
        }
        r.metrics.push_back(std::move(metric));
      }
      if (r.metrics.empty()) throw FormatError("no metrics", 0);
      r.source = ParseRecordSource(item.at("source").get<std::string>());
      r.citation = item.value("citation", std::string());
      r.throughput = OptionalPositive(item, "throughput");
      r.memory_bytes = OptionalPositive(item, "memory_bytes");
      r.perf_source = item.value("perf_source", std::string());
      r.latency_notes = item.value("latency_notes", std::string());
      records.push_back(std::move(r));
    } catch (const Error& e) {
      throw FormatError("record " + std::to_string(index) + ": " + e.what(),
                        0);
    } catch (const Json::exception& e) {
      throw FormatError("record " + std::to_string(index) + ": " + e.what(),
                        0);
    }
    ++index;
  }
  return records;
}

std::vector<ModelRecord> LoadCatalog(const std::filesystem::path& path) {
  return ParseCatalog(ReadFileBytes(path));
}

std::string SerializeCatalog(const std::vector<ModelRecord>& records) {
  Json doc;
  doc["records"] = Json::array();
  for (const ModelRecord& r : records) {
    Json item;
    item["task"] = r.task;
    item["dataset"] = r.dataset;
    item["model"] = r.model;
    item["metrics"] = Json::array();
    for (const Metric& m : r.metrics) {
      Json metric;
      metric["name"] = m.name;
      metric["value"] = m.value.has_value() ? Json(*m.value) : Json(nullptr);
      if (!m.percent) metric["unit"] = "raw";
      item["metrics"].push_back(std::move(metric));
    }
    item["source"] = ToString(r.source);
    if (!r.citation.empty()) item["citation"] = r.citation;
    if (r.throughput) item["throughput"] = *r.throughput;
    if (r.memory_bytes) item["memory_bytes"] = *r.memory_bytes;
    if (!r.perf_source.empty()) item["perf_source"] = r.perf_source;
    if (!r.latency_notes.empty()) item["latency_notes"] = r.latency_notes;
    doc["records"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::vector<ModelRecord> FilterRecords(const std::vector<ModelRecord>& records,
                                       const ParetoQuery& query) {
  std::vector<ModelRecord> out;
  for (const ModelRecord& r : records) {
    if (query.task.has_value() && r.task != *query.task) continue;
    if (query.source.has_value() && r.source != *query.source) continue;
    out.push_back(r);
  }
  return out;
}

double AccuracyObjective(const ModelRecord& record, const ParetoQuery& query) {
  const Metric* metric = nullptr;
  if (query.metric.has_value()) {
    metric = record.FindMetric(*query.metric);
  } else if (!record.metrics.empty()) {
    metric = &record.metrics.front();
  }
  if (metric == nullptr || !metric->value.has_value()) {
    throw IncompleteRecordError(
        Describe(record) + " has no value for metric " +
        (query.metric.has_value() ? "'" + *query.metric + "'" : "#0"));
  }
  return *metric->value;
}

double ThroughputObjective(const ModelRecord& record) {
  if (!record.throughput.has_value()) {
    throw IncompleteRecordError(Describe(record) + " has no throughput");
  }
  return *record.throughput;
}

std::vector<ModelRecord> ParetoFrontier(const std::vector<ModelRecord>& records,
                                        const ParetoQuery& query) {
  struct Point {
    double accuracy;
    double throughput;
    const ModelRecord* record;
  };
  std::vector<ModelRecord> filtered = FilterRecords(records, query);
  std::vector<Point> points;
  points.reserve(filtered.size());
  for (const ModelRecord& r : filtered) {
    points.push_back({AccuracyObjective(r, query), ThroughputObjective(r), &r});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& a, const Point& b) {
                     if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
                     if (a.throughput != b.throughput) {
                       return a.throughput > b.throughput;
                     }
                     return a.record->model < b.record->model;
                   });

  // Sweep groups of equal accuracy from the top. Within a group only the
  // members at the group's best throughput survive, and only if that beats
  // every strictly more accurate record.
  std::vector<ModelRecord> frontier;
  double best_above = -std::numeric_limits<double>::infinity();
  for (std::size_t begin = 0; begin < points.size();) {
    std::size_t end = begin;
    while (end < points.size() && points[end].accuracy == points[begin].accuracy) {
      ++end;
    }
    const double group_best = points[begin].throughput;
    if (group_best > best_above) {
      for (std::size_t i = begin; i < end && points[i].throughput == group_best;
           ++i) {
        frontier.push_back(*points[i].record);
      }
    }
    best_above = std::max(best_above, group_best);
    begin = end;
  }
  return frontier;
}

double MarkerArea(const ModelRecord& record) {
  if (!record.memory_bytes.has_value()) return kMissingMemoryMarkerArea;
  return *record.memory_bytes / 1048576.0 * kMarkerAreaPerMiB;
}

std::vector<ScatterRow> ScatterRows(const std::vector<ModelRecord>& records,
                                    const ParetoQuery& query) {
  std::vector<ScatterRow> rows;
  for (const ModelRecord& r : FilterRecords(records, query)) {
    rows.push_back({r.model, AccuracyObjective(r, query),
                    ThroughputObjective(r), MarkerArea(r)});
  }
  return rows;
}

std::string ScatterCsv(const std::vector<ScatterRow>& rows) {
  std::string out = "model,accuracy,throughput,marker_area\n";
  for (const ScatterRow& row : rows) {
    out += CsvField(row.model) + "," + FormatDecimal(row.accuracy) + "," +
           FormatDecimal(row.throughput) + "," + FormatDecimal(row.marker_area) +
           "\n";
  }
  return out;
}

void ExportScatter(const std::vector<ModelRecord>& records,
                   const ParetoQuery& query, const std::filesystem::path& out) {
  const std::string csv = ScatterCsv(ScatterRows(records, query));
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write " + out.string());
  file << csv;
  if (!file) throw Error("failed writing " + out.string());
}

}  // namespace seqbatch
