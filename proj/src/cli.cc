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
#include "seqbatch/cli.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqbatch/batchify.h"
#include "seqbatch/core.h"
#include "seqbatch/datasets.h"
#include "seqbatch/errors.h"
#include "seqbatch/loader.h"
#include "seqbatch/sampler.h"
#include "seqbatch/text.h"
#include "seqbatch/zoo.h"

#ifndef SEQBATCH_DEFAULT_CATALOG
#define SEQBATCH_DEFAULT_CATALOG "data/zoo_catalog.json"
#endif

namespace seqbatch {
namespace {

// Left-aligned columns separated by two spaces, no trailing blanks.
class Table {
 public:
  explicit Table(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
  }
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void Print(std::ostream& out) const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      widths.resize(std::max(widths.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) {
        widths[c] = std::max(widths[c], row[c].size());
      }
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) line += "  ";
        line += row[c];
        if (c + 1 < row.size()) line.append(widths[c] - row[c].size(), ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// Usage problems detected after flag parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct DatasetFlags {
  std::string dataset;
  std::string manifest = "manifest.json";
  std::string synthetic;
  std::size_t key_field = 0;

  void Register(CLI::App* cmd) {
    auto* d = cmd->add_option("--dataset", dataset,
                              "Registered dataset as NAME:SPLIT");
    auto* s = cmd->add_option("--synthetic", synthetic,
                              "Synthetic corpus, e.g. uniform:1:100:10000:42");
    d->excludes(s);
    cmd->add_option("--manifest", manifest, "Dataset manifest")
        ->capture_default_str();
    cmd->add_option("--key-field", key_field, "Field whose length is bucketed")
        ->capture_default_str();
  }

  // Returns the dataset and a stable identifier for it.
  std::pair<Dataset, std::string> Resolve() const {
    if (!synthetic.empty()) {
      SyntheticSpec spec;
      try {
        spec = ParseSyntheticFlag(synthetic);
      } catch (const InvalidArgumentError& e) {
        throw UsageError(e.what());
      }
      return {GenerateSynthetic(spec), "synthetic " + spec.Id()};
    }
    if (dataset.empty()) {
      throw UsageError("one of --dataset or --synthetic is required");
    }
    const std::size_t colon = dataset.rfind(':');
    if (colon == std::string::npos || colon == 0 ||
        colon + 1 == dataset.size()) {
      throw UsageError("--dataset must be NAME:SPLIT, got '" + dataset + "'");
    }
    Registry registry = Registry::Load(manifest);
    return {registry.Get(dataset.substr(0, colon), dataset.substr(colon + 1)),
            dataset};
  }
};

struct ZooFlags {
  std::string action;
  std::string catalog;
  std::string task;
  std::string source;
  std::string metric;
  std::string out;

  ParetoQuery Query() const {
    ParetoQuery query;
    if (!task.empty()) query.task = task;
    if (!metric.empty()) query.metric = metric;
    if (!source.empty()) {
      try {
        query.source = ParseRecordSource(source);
      } catch (const InvalidArgumentError& e) {
        throw UsageError(e.what());
      }
    }
    return query;
  }

  std::string CatalogPath() const {
    if (!catalog.empty()) return catalog;
    if (const char* env = std::getenv("SEQBATCH_CATALOG"); env && *env) {
      return env;
    }
    return DefaultCatalogPath();
  }
};

std::string JoinMetricNames(const ModelRecord& r) {
  std::string out;
  for (std::size_t i = 0; i < r.metrics.size(); ++i) {
    if (i > 0) out += "/";
    out += r.metrics[i].name;
  }
  return out;
}

std::string JoinMetricValues(const ModelRecord& r) {
  std::string out;
  for (std::size_t i = 0; i < r.metrics.size(); ++i) {
    if (i > 0) out += "/";
    out += r.metrics[i].value ? FormatDecimal(*r.metrics[i].value) : "N.A.";
  }
  return out;
}

std::string OptionalDecimal(const std::optional<double>& v) {
  return v ? FormatDecimal(*v) : "-";
}

std::string MemoryMiB(const ModelRecord& r) {
  return r.memory_bytes ? FormatDecimal(*r.memory_bytes / 1048576.0) : "-";
}

void PrintRecords(const std::vector<ModelRecord>& records, std::ostream& out) {
  Table table({"task", "dataset", "model", "source", "cite", "measure",
               "value", "throughput", "memory_mib"});
  for (const ModelRecord& r : records) {
    table.Add({r.task, r.dataset, r.model, ToString(r.source),
               r.citation.empty() ? "-" : r.citation, JoinMetricNames(r),
               JoinMetricValues(r), OptionalDecimal(r.throughput),
               MemoryMiB(r)});
  }
  table.Print(out);
  for (const ModelRecord& r : records) {
    if (!r.latency_notes.empty()) {
      out << "note: " << r.model << " (" << r.dataset << ", "
          << ToString(r.source) << "): " << r.latency_notes << '\n';
    }
    if (!r.perf_source.empty()) {
      out << "note: " << r.model << " (" << r.dataset << ", "
          << ToString(r.source) << "): throughput/memory are "
          << r.perf_source << " values\n";
    }
  }
}

int RunInfo(const DatasetFlags& flags, std::ostream& out) {
  auto [dataset, id] = flags.Resolve();
  out << "dataset: " << id << '\n';
  out << "samples: " << dataset.size() << '\n';
  out << "schema: " << ToString(dataset.schema()) << '\n';
  LengthStats stats = ComputeLengths(dataset, flags.key_field);
  if (!stats.empty()) {
    out << "lengths: " << stats.min_length << ".." << stats.max_length << '\n';
    out << "mean_length: "
        << FormatFixed(static_cast<double>(stats.total_tokens()) /
                           static_cast<double>(stats.size()),
                       4)
        << '\n';
  }
  out << "total_tokens: " << stats.total_tokens() << '\n';
  return kExitOk;
}

int RunBuckets(const DatasetFlags& flags, std::size_t num_buckets,
               const std::string& scheme_name, std::ostream& out) {
  BucketScheme scheme;
  try {
    scheme = ParseBucketScheme(scheme_name);
  } catch (const InvalidArgumentError& e) {
    throw UsageError(e.what());
  }
  auto [dataset, id] = flags.Resolve();
  LengthStats stats = ComputeLengths(dataset, flags.key_field);
  BucketSpec spec = MakeBuckets(stats, num_buckets, scheme);

  out << "dataset: " << id << '\n';
  out << "samples: " << stats.size() << "  lengths: " << stats.min_length
      << ".." << stats.max_length << '\n';
  out << "scheme: " << ToString(scheme) << "  requested: " << num_buckets
      << "  buckets: " << spec.num_buckets() << '\n';
  Table table({"bucket", "range", "population", "share"});
  for (std::size_t k = 0; k < spec.num_buckets(); ++k) {
    const Bucket& b = spec.buckets[k];
    std::size_t population = 0;
    for (std::size_t len = b.low; len <= b.high; ++len) {
      population += stats.count(len);
    }
    table.Add({std::to_string(k),
               std::to_string(b.low) + "-" + std::to_string(b.high),
               std::to_string(population),
               FormatFixed(static_cast<double>(population) /
                               static_cast<double>(stats.size()),
                           4)});
  }
  table.Print(out);
  return kExitOk;
}

struct BenchOptions {
  std::size_t batch_size = 32;
  std::size_t num_buckets = 10;
  std::string scheme = "constant";
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::uint64_t per_token_cost = 0;
  std::string out;
};

struct BenchRow {
  std::string strategy;
  std::size_t num_buckets = 0;
  std::size_t batches = 0;
  double padding_ratio = 0.0;
  ThroughputResult throughput;
};

void WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write " + tmp.string());
    file << content;
    file.flush();
    if (!file) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

int RunBench(const DatasetFlags& flags, const BenchOptions& opts,
             std::ostream& out) {
  BucketScheme scheme;
  try {
    scheme = ParseBucketScheme(opts.scheme);
  } catch (const InvalidArgumentError& e) {
    throw UsageError(e.what());
  }
  if (opts.batch_size == 0) throw UsageError("--batch-size must be >= 1");
  if (opts.num_buckets == 0) throw UsageError("--num-buckets must be >= 1");

  auto [dataset, id] = flags.Resolve();
  LengthStats stats = ComputeLengths(dataset, flags.key_field);
  if (stats.empty()) throw EmptyDatasetError("cannot benchmark an empty dataset");

  // Only the key field is padded so that loader slot counts line up with the
  // analytic padding count.
  std::vector<FieldTransform> transforms;
  for (std::size_t k = 0; k < dataset.schema().size(); ++k) {
    if (k == flags.key_field) {
      transforms.emplace_back(PadField{});
    } else {
      transforms.emplace_back(StackField{});
    }
  }
  BatchifyFn fn = BatchifyFn::Tuple(std::move(transforms));
  LoaderConfig config;
  config.num_workers = opts.workers;
  config.seed = opts.seed;

  const BucketSpec spec = MakeBuckets(stats, opts.num_buckets, scheme);
  std::vector<std::pair<std::string, EpochPlan>> plans;
  plans.emplace_back("random", PlanRandom(stats.size(), opts.batch_size,
                                          opts.seed));
  plans.emplace_back("fixed-bucket",
                     PlanFixedBucket(stats, spec, opts.batch_size,
                                     /*shuffle=*/true, opts.seed));

  std::vector<BenchRow> rows;
  for (auto& [name, plan] : plans) {
    BenchRow row;
    row.strategy = name;
    row.num_buckets = name == "random" ? 1 : spec.num_buckets();
    row.batches = plan.batches.size();
    row.padding_ratio = PaddingRatio(plan, stats);
    const PaddingCounts analytic = CountPadding(plan, stats);
    row.throughput =
        MeasureThroughput(dataset, plan, fn, config, opts.per_token_cost);
    if (row.throughput.padded_slots != analytic.pad_slots() ||
        row.throughput.total_slots != analytic.total_slots) {
      throw InternalError("loader slot counts disagree with the plan for " +
                          name);
    }
    rows.push_back(std::move(row));
  }
  const double random_ratio = rows[0].padding_ratio;
  const double reduction =
      random_ratio > 0.0 ? (random_ratio - rows[1].padding_ratio) / random_ratio
                         : 0.0;

  if (!opts.out.empty()) {
    nlohmann::ordered_json report;
    report["environment"] = {{"corpus", id},
                             {"seed", opts.seed},
                             {"batch_size", opts.batch_size},
                             {"workers", opts.workers},
                             {"per_token_cost", opts.per_token_cost},
                             {"scheme", ToString(scheme)}};
    report["rows"] = nlohmann::ordered_json::array();
    for (const BenchRow& row : rows) {
      report["rows"].push_back(
          {{"strategy", row.strategy},
           {"num_buckets", row.num_buckets},
           {"batch_size", opts.batch_size},
           {"batches", row.batches},
           {"padding_ratio", row.padding_ratio},
           {"padded_slots", row.throughput.padded_slots},
           {"total_slots", row.throughput.total_slots},
           {"samples_per_sec", row.throughput.samples_per_sec()},
           {"wall_ms", row.throughput.wall_seconds * 1000.0}});
    }
    report["padding_reduction"] = reduction;
    WriteFileAtomically(opts.out, report.dump(2) + "\n");
  }

  out << "corpus: " << id << '\n';
  out << "seed: " << opts.seed << "  batch_size: " << opts.batch_size
      << "  scheme: " << ToString(scheme) << '\n';
  Table table({"strategy", "buckets", "batches", "padding_ratio",
               "padded_slots", "total_slots"});
  for (const BenchRow& row : rows) {
    table.Add({row.strategy, std::to_string(row.num_buckets),
               std::to_string(row.batches), FormatFixed(row.padding_ratio, 6),
               std::to_string(row.throughput.padded_slots),
               std::to_string(row.throughput.total_slots)});
  }
  table.Print(out);
  out << "padding reduction: " << FormatFixed(100.0 * reduction, 2) << "%\n";
  if (!opts.out.empty()) out << "report: " << opts.out << '\n';
  return kExitOk;
}

int RunZoo(const ZooFlags& flags, std::ostream& out) {
  const ParetoQuery query = flags.Query();
  const std::vector<ModelRecord> catalog = LoadCatalog(flags.CatalogPath());
  if (flags.action == "list") {
    PrintRecords(FilterRecords(catalog, query), out);
  } else if (flags.action == "pareto") {
    PrintRecords(ParetoFrontier(catalog, query), out);
  } else {
    if (flags.out.empty()) throw UsageError("zoo export needs --out");
    const std::vector<ScatterRow> rows = ScatterRows(catalog, query);
    WriteFileAtomically(flags.out, ScatterCsv(rows));
    out << "wrote " << rows.size() << " rows to " << flags.out << '\n';
  }
  return kExitOk;
}

}  // namespace

std::string DefaultCatalogPath() { return SEQBATCH_DEFAULT_CATALOG; }

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Bucketed batching toolkit and model zoo queries", "seqbatch"};
  app.require_subcommand(1);

  DatasetFlags info_flags;
  CLI::App* info = app.add_subcommand("info", "Dataset size and lengths");
  info_flags.Register(info);

  DatasetFlags bucket_flags;
  std::size_t num_buckets = 10;
  std::string scheme = "constant";
  CLI::App* buckets = app.add_subcommand("buckets", "Bucket table");
  bucket_flags.Register(buckets);
  buckets->add_option("--num-buckets", num_buckets)->capture_default_str();
  buckets->add_option("--scheme", scheme, "constant or quantile")
      ->capture_default_str();

  DatasetFlags bench_flags;
  BenchOptions bench_opts;
  CLI::App* bench =
      app.add_subcommand("bench", "Random vs fixed-bucket batching");
  bench_flags.Register(bench);
  bench->add_option("--batch-size", bench_opts.batch_size)
      ->capture_default_str();
  bench->add_option("--num-buckets", bench_opts.num_buckets)
      ->capture_default_str();
  bench->add_option("--scheme", bench_opts.scheme)->capture_default_str();
  bench->add_option("--seed", bench_opts.seed)->capture_default_str();
  bench->add_option("--workers", bench_opts.workers)->capture_default_str();
  bench->add_option("--per-token-cost", bench_opts.per_token_cost,
                    "Simulated work units per padded-block cell")
      ->capture_default_str();
  bench->add_option("--out", bench_opts.out, "Report file (JSON)");

  ZooFlags zoo_flags;
  CLI::App* zoo = app.add_subcommand("zoo", "Model zoo catalog queries");
  zoo->add_option("action", zoo_flags.action, "list, pareto or export")
      ->required()
      ->check(CLI::IsMember({"list", "pareto", "export"}));
  zoo->add_option("--catalog", zoo_flags.catalog, "Catalog file");
  zoo->add_option("--task", zoo_flags.task);
  zoo->add_option("--source", zoo_flags.source, "this-toolkit or external");
  zoo->add_option("--metric", zoo_flags.metric,
                  "Accuracy metric (default: each record's first)");
  zoo->add_option("--out", zoo_flags.out, "Scatter CSV path for export");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (info->parsed()) return RunInfo(info_flags, out);
    if (buckets->parsed()) {
      return RunBuckets(bucket_flags, num_buckets, scheme, out);
    }
    if (bench->parsed()) return RunBench(bench_flags, bench_opts, out);
    if (zoo->parsed()) return RunZoo(zoo_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitUsage;
}

}  // namespace seqbatch
