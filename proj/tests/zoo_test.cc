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
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "catalog_rows.h"
#include "seqbatch/cli.h"
#include "seqbatch/errors.h"
#include "seqbatch/random.h"
#include "seqbatch/text.h"
#include "test_util.h"

namespace seqbatch {
namespace {

using ::seqbatch::testing::DataDir;
using ::seqbatch::testing::kCatalogRows;
using ::seqbatch::testing::TempDir;

ModelRecord Rec(std::string model, double acc, std::optional<double> tput,
                std::optional<double> memory = std::nullopt) {
  ModelRecord r;
  r.task = "T";
  r.dataset = "D";
  r.model = std::move(model);
  r.metrics = {Metric{"acc.", acc}};
  r.throughput = tput;
  r.memory_bytes = memory;
  return r;
}

std::vector<std::string> Names(const std::vector<ModelRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(r.model);
  return out;
}

std::string Cell(const ModelRecord& r) {
  std::string out;
  for (const Metric& m : r.metrics) {
    if (!out.empty()) out += '/';
    out += m.value ? FormatDecimal(*m.value) : "N.A.";
  }
  return out;
}

const ModelRecord* Lookup(const std::vector<ModelRecord>& records,
                          const std::string& dataset, const std::string& model,
                          RecordSource source) {
  for (const auto& r : records) {
    if (r.dataset == dataset && r.model == model && r.source == source) {
      return &r;
    }
  }
  return nullptr;
}

TEST(CatalogTest, SeedCatalogFidelity) {
  std::vector<ModelRecord> records = LoadCatalog(DefaultCatalogPath());
  EXPECT_EQ(records.size(), 2 * kCatalogRows.size());
  for (const auto& row : kCatalogRows) {
    SCOPED_TRACE(row.model + std::string(" / ") + row.dataset);
    const ModelRecord* own =
        Lookup(records, row.dataset, row.model, RecordSource::kThisToolkit);
    const ModelRecord* ext =
        Lookup(records, row.dataset, row.model, RecordSource::kExternal);
    ASSERT_NE(own, nullptr);
    ASSERT_NE(ext, nullptr);
    EXPECT_EQ(own->task, row.task);
    EXPECT_EQ(Cell(*own), row.toolkit);
    EXPECT_EQ(Cell(*ext), row.external);
    EXPECT_EQ(ext->citation, row.citation);
    std::string measure;
    for (const Metric& m : own->metrics) {
      measure += (measure.empty() ? "" : "/") + m.name;
    }
    EXPECT_EQ(measure, row.measure);
  }
}

TEST(CatalogTest, SpotValues) {
  std::vector<ModelRecord> records = LoadCatalog(DefaultCatalogPath());
  const ModelRecord* r50 =
      Lookup(records, "ImageNet", "ResNet-50", RecordSource::kThisToolkit);
  ASSERT_NE(r50, nullptr);
  EXPECT_EQ(r50->metrics[0].value, 79.2);
  const ModelRecord* r101 =
      Lookup(records, "ImageNet", "ResNet-101", RecordSource::kExternal);
  ASSERT_NE(r101, nullptr);
  EXPECT_EQ(r101->metrics[0].value, 76.4);
  const ModelRecord* bert =
      Lookup(records, "SQuAD 1.1", "BERT_BASE", RecordSource::kThisToolkit);
  ASSERT_NE(bert, nullptr);
  EXPECT_EQ(bert->FindMetric("F1")->value, 88.5);
  EXPECT_EQ(bert->FindMetric("EM")->value, 81.0);
  const ModelRecord* mrpc =
      Lookup(records, "MRPC", "BERT_BASE", RecordSource::kThisToolkit);
  ASSERT_NE(mrpc, nullptr);
  EXPECT_NE(mrpc->latency_notes.find("59.6%"), std::string::npos);
  for (const auto& r : records) {
    if (r.throughput || r.memory_bytes) {
      EXPECT_EQ(r.perf_source, "external-fixture") << r.model;
    }
  }
}

TEST(CatalogTest, SerializeRoundTrip) {
  std::vector<ModelRecord> records = LoadCatalog(DefaultCatalogPath());
  EXPECT_EQ(ParseCatalog(SerializeCatalog(records)), records);
}

TEST(CatalogTest, ValidationNamesRecord) {
  auto error_of = [](const std::string& json) -> std::string {
    try {
      ParseCatalog(json);
    } catch (const FormatError& e) {
      return e.what();
    }
    return "";
  };
  const std::string ok =
      R"({"task": "T", "dataset": "D", "model": "M", "source": "external",
          "metrics": [{"name": "acc.", "value": 50}]})";
  EXPECT_EQ(error_of(R"({"records": [)" + ok + "]}"), "");
  EXPECT_NE(error_of(R"({"records": [)" + ok + R"(, {"task": "T",
      "dataset": "D", "model": "M", "source": "external",
      "metrics": [{"name": "acc.", "value": 150}]}]})")
                .find("record 1"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"records": [{"task": "T", "dataset": "D",
      "model": "M", "source": "external", "throughput": 0,
      "metrics": [{"name": "acc.", "value": 5}]}]})")
                .find("record 0"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"records": [{"task": "T", "dataset": "D",
      "model": "M", "source": "elsewhere", "metrics": []}]})"),
            "");
  EXPECT_NE(error_of("{"), "");
  EXPECT_EQ(error_of(R"({"records": [{"task": "T", "dataset": "D",
      "model": "M", "source": "external",
      "metrics": [{"name": "ms", "value": 1500, "unit": "raw"}]}]})"),
            "");
}

TEST(ParetoTest, FixtureFrontier) {
  std::vector<ModelRecord> records =
      LoadCatalog(DataDir() / "pareto_fixture.json");
  EXPECT_EQ(Names(ParetoFrontier(records, {})),
            (std::vector<std::string>{"B", "A"}));
}

TEST(ParetoTest, SingleAndTies) {
  EXPECT_EQ(Names(ParetoFrontier({Rec("X", 50, 10)}, {})),
            std::vector<std::string>{"X"});
  EXPECT_EQ(Names(ParetoFrontier({Rec("Y", 50, 10), Rec("X", 50, 10)}, {})),
            (std::vector<std::string>{"X", "Y"}));
  EXPECT_TRUE(ParetoFrontier({}, {}).empty());
  // Equal accuracy, lower throughput is dominated.
  EXPECT_EQ(Names(ParetoFrontier({Rec("X", 50, 10), Rec("Y", 50, 9)}, {})),
            std::vector<std::string>{"X"});
}

TEST(ParetoTest, IncompleteRecord) {
  try {
    ParetoFrontier({Rec("X", 50, 10), Rec("NoTput", 60, std::nullopt)}, {});
    FAIL() << "expected IncompleteRecordError";
  } catch (const IncompleteRecordError& e) {
    EXPECT_NE(std::string(e.what()).find("NoTput"), std::string::npos);
  }
  ParetoQuery q;
  q.metric = "F1";
  EXPECT_THROW(ParetoFrontier({Rec("X", 50, 10)}, q), IncompleteRecordError);
}

TEST(ParetoTest, FiltersByTaskAndSource) {
  std::vector<ModelRecord> records = LoadCatalog(DefaultCatalogPath());
  ParetoQuery q;
  q.task = "Image Classification";
  q.source = RecordSource::kThisToolkit;
  std::vector<ModelRecord> filtered = FilterRecords(records, q);
  EXPECT_EQ(filtered.size(), 3u);
  // ResNet-101 is most accurate, MobileNet fastest, ResNet-50 in between.
  EXPECT_EQ(Names(ParetoFrontier(records, q)),
            (std::vector<std::string>{"ResNet-101", "ResNet-50",
                                      "MobileNet 1.0"}));
  q.source = std::nullopt;
  EXPECT_THROW(ParetoFrontier(records, q), IncompleteRecordError);
}

bool Dominates(const ModelRecord& a, const ModelRecord& b) {
  const double aa = *a.metrics[0].value, ba = *b.metrics[0].value;
  const double at = *a.throughput, bt = *b.throughput;
  return aa >= ba && at >= bt && (aa > ba || at > bt);
}

TEST(ParetoTest, MatchesPairwiseOracleAndIsPermutationInvariant) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ModelRecord> records(1 + rng.UniformBelow(50));
    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i] = Rec("m" + std::to_string(i),
                       static_cast<double>(rng.UniformBelow(20)),
                       static_cast<double>(1 + rng.UniformBelow(20)));
    }
    std::set<std::string> want;
    for (const auto& r : records) {
      bool dominated = false;
      for (const auto& s : records) dominated |= Dominates(s, r);
      if (!dominated) want.insert(r.model);
    }
    std::vector<ModelRecord> frontier = ParetoFrontier(records, {});
    std::vector<std::string> names = Names(frontier);
    ASSERT_EQ(std::set<std::string>(names.begin(), names.end()), want);
    ASSERT_EQ(names.size(), want.size());
    for (std::size_t i = 1; i < frontier.size(); ++i) {
      ASSERT_GE(*frontier[i - 1].metrics[0].value,
                *frontier[i].metrics[0].value);
    }
    rng.Shuffle(std::span<ModelRecord>(records));
    ASSERT_EQ(Names(ParetoFrontier(records, {})), names);
  }
}

TEST(ScatterTest, MarkerAreaIsLinearInMemory) {
  const double m = 3.0 * 1024 * 1024;
  EXPECT_EQ(MarkerArea(Rec("a", 1, 1, 2 * m)) / MarkerArea(Rec("b", 1, 1, m)),
            2.0);
  EXPECT_EQ(MarkerArea(Rec("c", 1, 1, 1048576.0)), kMarkerAreaPerMiB);
  EXPECT_EQ(MarkerArea(Rec("d", 1, 1)), kMissingMemoryMarkerArea);
}

TEST(ScatterTest, ExportWritesOneRowPerRecord) {
  std::vector<ModelRecord> records =
      LoadCatalog(DataDir() / "pareto_fixture.json");
  TempDir dir;
  ExportScatter(records, {}, dir.path() / "scatter.csv");
  std::ifstream in(dir.path() / "scatter.csv");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  EXPECT_EQ(text,
            "model,accuracy,throughput,marker_area\n"
            "A,79.2,1000.0,2.0\n"
            "B,80.5,800.0,4.0\n"
            "C,76.4,700.0,1.0\n");
  EXPECT_THROW(ExportScatter(records, {}, dir.path() / "no" / "such.csv"),
               Error);
}

TEST(ScatterTest, QuotesFields) {
  ScatterRow row{"a,\"b\"", 1.5, 2.0, 1.0};
  EXPECT_EQ(ScatterCsv({row}),
            "model,accuracy,throughput,marker_area\n"
            "\"a,\"\"b\"\"\",1.5,2.0,1.0\n");
}

TEST(ScatterTest, SeedCatalogImageClassification) {
  std::vector<ModelRecord> records = LoadCatalog(DefaultCatalogPath());
  ParetoQuery q;
  q.task = "Image Classification";
  q.source = RecordSource::kThisToolkit;
  std::vector<ScatterRow> rows = ScatterRows(records, q);
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r.model);
  EXPECT_EQ(names, (std::vector<std::string>{"ResNet-50", "ResNet-101",
                                             "MobileNet 1.0"}));
}

}  // namespace
}  // namespace seqbatch
