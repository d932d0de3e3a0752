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
// Model zoo metadata: a catalog of per-model quality and performance numbers,
// accuracy/throughput Pareto queries, and scatter-plot export.
//
// Catalog file (JSON):
//
//   {"records": [
//     {"task": "Image Classification", "dataset": "ImageNet",
//      "model": "ResNet-50",
//      "metrics": [{"name": "top-1 acc.", "value": 79.2}],
//      "source": "this-toolkit",            // or "external"
//      "citation": "a",                     // optional
//      "throughput": 1000.0,                // optional, samples/sec, > 0
//      "memory_bytes": 2147483648,          // optional, > 0
//      "perf_source": "external-fixture",   // optional provenance of the two
//                                           // fields above
//      "latency_notes": "..."}              // optional free text
//   ]}
//
// A metric "value" of null means not available. Metrics are percentages in
// [0, 100] unless they carry "unit": "raw".

#ifndef SEQBATCH_ZOO_H_
#define SEQBATCH_ZOO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqbatch {

enum class RecordSource { kThisToolkit, kExternal };

std::string ToString(RecordSource source);
RecordSource ParseRecordSource(std::string_view name);

struct Metric {
  std::string name;
  std::optional<double> value;
  bool percent = true;

  bool operator==(const Metric&) const = default;
};

struct ModelRecord {
  std::string task;
  std::string dataset;
  std::string model;
  std::vector<Metric> metrics;
  RecordSource source = RecordSource::kThisToolkit;
  std::string citation;
  std::optional<double> throughput;
  std::optional<double> memory_bytes;
  std::string perf_source;
  std::string latency_notes;

  const Metric* FindMetric(std::string_view name) const;
  bool operator==(const ModelRecord&) const = default;
};

// Throws FormatError naming the offending record index.
std::vector<ModelRecord> ParseCatalog(std::string_view json);
std::vector<ModelRecord> LoadCatalog(const std::filesystem::path& path);
std::string SerializeCatalog(const std::vector<ModelRecord>& records);

struct ParetoQuery {
  std::optional<std::string> task;
  std::optional<RecordSource> source;
  // Accuracy objective. Empty means each record's first metric.
  std::optional<std::string> metric;
};

std::vector<ModelRecord> FilterRecords(const std::vector<ModelRecord>& records,
                                       const ParetoQuery& query);

// Accuracy objective value; throws IncompleteRecordError if absent.
double AccuracyObjective(const ModelRecord& record, const ParetoQuery& query);
// Throughput objective value; throws IncompleteRecordError if absent.
double ThroughputObjective(const ModelRecord& record);

// Records of the filtered set not strictly dominated on (accuracy,
// throughput). Equal records are all kept. Sorted by descending accuracy,
// then descending throughput, then model name.
std::vector<ModelRecord> ParetoFrontier(const std::vector<ModelRecord>& records,
                                        const ParetoQuery& query);

// marker_area = memory_bytes / 2^20 * kMarkerAreaPerMiB, or
// kMissingMemoryMarkerArea for a record without memory.
inline constexpr double kMarkerAreaPerMiB = 1.0;
inline constexpr double kMissingMemoryMarkerArea = 1.0;

double MarkerArea(const ModelRecord& record);

struct ScatterRow {
  std::string model;
  double accuracy = 0.0;
  double throughput = 0.0;
  double marker_area = 0.0;
};

std::vector<ScatterRow> ScatterRows(const std::vector<ModelRecord>& records,
                                    const ParetoQuery& query);

// "model,accuracy,throughput,marker_area" header then one row per record.
std::string ScatterCsv(const std::vector<ScatterRow>& rows);

// Writes ScatterCsv(ScatterRows(records, query)) to `out`.
void ExportScatter(const std::vector<ModelRecord>& records,
                   const ParetoQuery& query, const std::filesystem::path& out);

}  // namespace seqbatch

#endif  // SEQBATCH_ZOO_H_
