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
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catalog_rows.h"
#include "seqbatch/batchify.h"
#include "seqbatch/cli.h"
#include "seqbatch/datasets.h"
#include "seqbatch/errors.h"
#include "seqbatch/loader.h"
#include "seqbatch/random.h"
#include "seqbatch/sampler.h"
#include "seqbatch/zoo.h"
#include "test_util.h"

namespace seqbatch {
namespace {

using ::seqbatch::testing::BenchCorpusSpec;
using ::seqbatch::testing::DataDir;
using ::seqbatch::testing::GoldenDir;
using ::seqbatch::testing::kCatalogRows;

// Frozen from tests/oracle/padding_oracle.py.
constexpr std::size_t kRandomTotalSlots = 975696;
constexpr std::size_t kRandomPadSlots = 465171;
constexpr std::size_t kBucketTotalSlots = 555154;
constexpr std::size_t kBucketPadSlots = 44629;
// sha256sum tests/data/toy_pairs_train.jsonl
constexpr char kToyPairsDigest[] =
    "eafa5aebb47484ac3554ca86ffb3710d5d90d2e0de6c3d5dacdcc68368cc3681";

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome Fail(std::string detail) { return {false, std::move(detail)}; }

std::string RunCliOut(const std::vector<std::string>& args, int* code) {
  std::ostringstream out, err;
  *code = RunCli(args, out, err);
  return out.str();
}

// Splits a table line on runs of two or more spaces.
std::vector<std::string> Columns(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t i = 0;
  while (i < line.size()) {
    std::size_t gap = line.find("  ", i);
    if (gap == std::string::npos) gap = line.size();
    cols.push_back(line.substr(i, gap - i));
    i = line.find_first_not_of(' ', gap);
    if (i == std::string::npos) break;
  }
  return cols;
}

const LengthStats& CorpusStats() {
  static const LengthStats stats =
      ComputeLengths(GenerateSynthetic(BenchCorpusSpec()));
  return stats;
}

Outcome CatalogFidelity() {
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  const std::string out =
      RunCliOut({"zoo", "list", "--catalog", DefaultCatalogPath()}, &code);
  if (code != kExitOk) return Fail("zoo list exited " + std::to_string(code));
  // task, dataset, model, source, cite, measure, value, ...
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) rows.push_back(Columns(line));
  std::size_t matched = 0;
  for (const auto& expect : kCatalogRows) {
    for (const char* source : {"this-toolkit", "external"}) {
      const std::string want = std::string(source) == "external"
                                   ? expect.external
                                   : expect.toolkit;
      bool found = false;
      for (const auto& cols : rows) {
        if (cols.size() >= 7 && cols[0] == expect.task &&
            cols[1] == expect.dataset && cols[2] == expect.model &&
            cols[3] == source) {
          if (cols[5] != expect.measure || cols[6] != want) {
            return Fail(std::string(expect.model) + " " + source + ": got " +
                        cols[5] + " " + cols[6] + ", want " + want);
          }
          found = true;
        }
      }
      if (!found) {
        return Fail(std::string("missing ") + expect.model + " (" +
                    expect.dataset + ", " + source + ")");
      }
      ++matched;
    }
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (secs >= 1.0) return Fail("took " + std::to_string(secs) + " s");
  return {true, std::to_string(matched) + " cells over " +
                    std::to_string(kCatalogRows.size()) + " model rows"};
}

struct PlanCase {
  LengthStats stats;
  BucketSpec spec;
  EpochPlan plan;
};

// The randomized suite shared by the partition and width criteria.
const std::vector<PlanCase>& RandomizedPlans() {
  static const std::vector<PlanCase> cases = [] {
    std::vector<PlanCase> out;
    Rng rng(20260301);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t n = 1 + rng.UniformBelow(200);
      const std::size_t batch_size = 1 + rng.UniformBelow(17);
      const std::size_t num_buckets = 1 + rng.UniformBelow(9);
      const std::size_t max_len = rng.UniformBelow(120);
      std::vector<std::size_t> lengths(n);
      for (auto& l : lengths) {
        // Alternate flat and skewed length profiles.
        l = i % 2 == 0 ? rng.UniformBelow(max_len + 1)
                       : rng.UniformBelow(1 + rng.UniformBelow(max_len + 1));
      }
      PlanCase c;
      c.stats = LengthStats::FromLengths(lengths);
      c.spec = MakeBuckets(c.stats, num_buckets,
                           i % 3 == 0 ? BucketScheme::kQuantile
                                      : BucketScheme::kConstantWidth);
      c.plan = PlanFixedBucket(c.stats, c.spec, batch_size, i % 4 != 0,
                               rng.Next(), false);
      if (c.plan.batches.empty()) std::abort();
      for (const auto& b : c.plan.batches) {
        if (b.empty() || b.size() > batch_size) std::abort();
      }
      out.push_back(std::move(c));
    }
    return out;
  }();
  return cases;
}

Outcome EpochPartition() {
  std::size_t indices = 0;
  for (std::size_t k = 0; k < RandomizedPlans().size(); ++k) {
    const PlanCase& c = RandomizedPlans()[k];
    std::multiset<std::size_t> got;
    for (const auto& b : c.plan.batches) got.insert(b.begin(), b.end());
    std::multiset<std::size_t> want;
    for (std::size_t i = 0; i < c.stats.size(); ++i) want.insert(i);
    if (got != want) return Fail("case " + std::to_string(k));
    indices += got.size();
  }
  // Baseline planners on the same sizes.
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.UniformBelow(200);
    const std::size_t bs = 1 + rng.UniformBelow(17);
    std::multiset<std::size_t> got;
    for (const auto& b : PlanRandom(n, bs, rng.Next()).batches) {
      got.insert(b.begin(), b.end());
    }
    std::multiset<std::size_t> want;
    for (std::size_t i = 0; i < n; ++i) want.insert(i);
    if (got != want) return Fail("random plan case " + std::to_string(k));
  }
  return {true, "1000 fixed-bucket + 1000 random plans, " +
                    std::to_string(indices) + " indices"};
}

Outcome BucketWidthBound() {
  std::size_t batches = 0;
  for (std::size_t k = 0; k < RandomizedPlans().size(); ++k) {
    const PlanCase& c = RandomizedPlans()[k];
    for (const auto& b : c.plan.batches) {
      std::size_t lo = c.stats.lengths[b[0]], hi = lo;
      for (std::size_t i : b) {
        lo = std::min(lo, c.stats.lengths[i]);
        hi = std::max(hi, c.stats.lengths[i]);
      }
      const Bucket& bucket = c.spec.buckets[*c.spec.Find(c.stats.lengths[b[0]])];
      if (hi - lo > bucket.width()) {
        return Fail("case " + std::to_string(k) + ": spread " +
                    std::to_string(hi - lo) + " > width " +
                    std::to_string(bucket.width()));
      }
      ++batches;
    }
  }
  return {true, std::to_string(batches) + " batches"};
}

Outcome PaddingSavings() {
  const LengthStats& stats = CorpusStats();
  PaddingCounts random = CountPadding(PlanRandom(stats.size(), 32, 42), stats);
  PaddingCounts bucketed = CountPadding(
      PlanFixedBucket(stats, MakeBuckets(stats, 10), 32, true, 42), stats);
  if (random.total_slots != kRandomTotalSlots ||
      random.pad_slots() != kRandomPadSlots) {
    return Fail("random slots " + std::to_string(random.pad_slots()) + "/" +
                std::to_string(random.total_slots));
  }
  if (bucketed.total_slots != kBucketTotalSlots ||
      bucketed.pad_slots() != kBucketPadSlots) {
    return Fail("bucketed slots " + std::to_string(bucketed.pad_slots()) +
                "/" + std::to_string(bucketed.total_slots));
  }
  const double r = static_cast<double>(kRandomPadSlots) / kRandomTotalSlots;
  const double b = static_cast<double>(kBucketPadSlots) / kBucketTotalSlots;
  if (PaddingRatio(PlanRandom(stats.size(), 32, 42), stats) != r) {
    return Fail("random ratio mismatch");
  }
  if (!(b < r)) return Fail("bucketed not below random");
  char buf[96];
  std::snprintf(buf, sizeof buf, "bucketed %.6f < random %.6f", b, r);
  return {true, buf};
}

Outcome DegenerateEquivalence() {
  const LengthStats& stats = CorpusStats();
  BucketSpec one = MakeBuckets(stats, 1);
  for (std::uint64_t seed : {0u, 1u, 7u, 42u, 1234u}) {
    for (std::size_t bs : {1u, 32u, 333u}) {
      const double fixed =
          PaddingRatio(PlanFixedBucket(stats, one, bs, true, seed), stats);
      const double random =
          PaddingRatio(PlanRandom(stats.size(), bs, seed), stats);
      if (fixed != random) {
        return Fail("seed " + std::to_string(seed) + " batch " +
                    std::to_string(bs));
      }
    }
  }
  return {true, "5 seeds x 3 batch sizes"};
}

Outcome LoaderDeterminism() {
  const auto start = std::chrono::steady_clock::now();
  Dataset ds = GenerateSynthetic(BenchCorpusSpec());
  const LengthStats& stats = CorpusStats();
  EpochPlan plan = PlanFixedBucket(stats, MakeBuckets(stats, 10), 32, true, 42);
  BatchifyFn fn = DefaultBatchifyFor(ds.schema());
  std::vector<Batch> oracle;
  for (std::size_t workers : {0u, 1u, 2u, 8u}) {
    LoaderConfig cfg;
    cfg.num_workers = workers;
    BatchStream stream = Load(ds, plan, fn, cfg);
    std::vector<Batch> got;
    std::size_t valid = 0;
    while (auto batch = stream.Next()) {
      for (std::size_t v : std::get<PaddedBlock>(batch->fields[0]).valid_lengths) {
        valid += v;
      }
      got.push_back(std::move(*batch));
    }
    if (valid != stats.total_tokens()) {
      return Fail("conservation with " + std::to_string(workers) + " workers");
    }
    if (workers == 0) {
      oracle = std::move(got);
    } else if (got != oracle) {
      return Fail(std::to_string(workers) + " workers differ from oracle");
    }
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (secs >= 30.0) return Fail("took " + std::to_string(secs) + " s");
  return {true, std::to_string(oracle.size()) + " batches, " +
                    std::to_string(stats.total_tokens()) + " tokens"};
}

Outcome PadRoundTrip() {
  Rng rng(99);
  std::size_t empty_rows = 0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<VarSeq> rows = ::seqbatch::testing::RandomRows(rng, 16, 12);
    for (const auto& r : rows) empty_rows += r.empty();
    PadSpec spec;
    spec.pad_value = static_cast<TokenId>(rng.UniformBelow(4)) - 1;
    if (rng.UniformBelow(3) == 0) spec.round_to = 1 + rng.UniformBelow(8);
    PaddedBlock block = Pad(std::span<const VarSeq>(rows), spec);
    if (Depad(block) != rows) return Fail("cycle " + std::to_string(k));
    std::size_t sum = 0;
    for (const auto& r : rows) sum += r.size();
    std::size_t pads = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto row = block.row(i);
      for (std::size_t j = rows[i].size(); j < block.padded_len; ++j) {
        if (row[j] != spec.pad_value) {
          return Fail("pad value, cycle " + std::to_string(k));
        }
        ++pads;
      }
    }
    if (pads != block.rows * block.padded_len - sum ||
        block.pad_count() != pads) {
      return Fail("pad count, cycle " + std::to_string(k));
    }
  }
  return {true, "10000 cycles, " + std::to_string(empty_rows) + " empty rows"};
}

Outcome ParetoCorrectness() {
  Rng rng(500);
  for (int k = 0; k < 500; ++k) {
    std::vector<ModelRecord> records(1 + rng.UniformBelow(50));
    for (std::size_t i = 0; i < records.size(); ++i) {
      ModelRecord& r = records[i];
      r.task = "T";
      r.dataset = "D";
      r.model = "m" + std::to_string(i);
      // Coarse grid so that ties and duplicates are common.
      r.metrics = {Metric{"acc.", 60.0 + 0.5 * rng.UniformBelow(30)}};
      r.throughput = 100.0 * (1 + rng.UniformBelow(25));
    }
    std::set<std::string> want;
    for (const auto& r : records) {
      bool dominated = false;
      for (const auto& s : records) {
        const double sa = *s.metrics[0].value, ra = *r.metrics[0].value;
        dominated |= sa >= ra && *s.throughput >= *r.throughput &&
                     (sa > ra || *s.throughput > *r.throughput);
      }
      if (!dominated) want.insert(r.model);
    }
    std::set<std::string> got;
    for (const auto& r : ParetoFrontier(records, {})) got.insert(r.model);
    if (got != want) return Fail("catalog " + std::to_string(k));
  }
  return {true, "500 catalogs"};
}

Outcome Integrity() {
  const std::filesystem::path original = DataDir() / "toy_pairs_train.jsonl";
  const std::string bytes = ReadFileBytes(original);
  if (Sha256File(original) != kToyPairsDigest) {
    return Fail("fixture digest changed");
  }
  ::seqbatch::testing::TempDir dir;
  std::filesystem::copy_file(DataDir() / "manifest.json",
                             dir.path() / "manifest.json");
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::string corrupt = bytes;
    corrupt[i] = static_cast<char>(~corrupt[i]);
    {
      std::ofstream f(dir.path() / "toy_pairs_train.jsonl", std::ios::binary);
      f << corrupt;
    }
    try {
      RegistryGet(dir.path() / "manifest.json", "toy-pairs", "train");
      return Fail("byte " + std::to_string(i) + " undetected");
    } catch (const IntegrityError& e) {
      if (e.expected_digest() != kToyPairsDigest) {
        return Fail("expected digest " + e.expected_digest());
      }
    }
  }
  return {true, std::to_string(bytes.size()) + " single-byte corruptions"};
}

Outcome CliGolden() {
  const std::string corpus = "uniform:1:100:10000:42";
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"buckets_constant.txt",
       {"buckets", "--synthetic", corpus, "--num-buckets", "10"}},
      {"bench.txt",
       {"bench", "--synthetic", corpus, "--batch-size", "32", "--num-buckets",
        "10", "--seed", "42"}},
      {"zoo_list.txt", {"zoo", "list", "--catalog", DefaultCatalogPath()}},
      {"zoo_pareto_fixture.txt",
       {"zoo", "pareto", "--catalog",
        (DataDir() / "pareto_fixture.json").string()}},
  };
  for (const auto& [file, args] : cases) {
    int code1 = 0, code2 = 0;
    const std::string first = RunCliOut(args, &code1);
    const std::string second = RunCliOut(args, &code2);
    if (code1 != kExitOk || code2 != kExitOk) return Fail(file + " exit code");
    if (first != second) return Fail(file + " differs between runs");
    if (first != ReadFileBytes(GoldenDir() / file)) {
      return Fail(file + " differs from golden file");
    }
  }
  return {true, std::to_string(cases.size()) + " commands"};
}

int Main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>>
      criteria = {
          {"catalog fidelity", CatalogFidelity},
          {"epoch partition", EpochPartition},
          {"bucket-width bound", BucketWidthBound},
          {"padding savings", PaddingSavings},
          {"degenerate equivalence", DegenerateEquivalence},
          {"loader determinism", LoaderDeterminism},
          {"pad round-trip", PadRoundTrip},
          {"pareto correctness", ParetoCorrectness},
          {"integrity", Integrity},
          {"cli golden files", CliGolden},
      };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = Fail(std::string("exception: ") + e.what());
    }
    failures += !outcome.pass;
    std::printf("criterion %2zu %-24s %s  %s\n", i + 1, criteria[i].first,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace seqbatch

int main() { return seqbatch::Main(); }
