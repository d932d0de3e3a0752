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
// Dataset ingestion and the local dataset registry.
//
// File formats
// ------------
// jsonl      One JSON object per line: {"tokens": [int, ...], "label": int}.
//            "tokens" is required and holds non-negative integers; "label"
//            is optional but must be present on every line or on none.
//            Samples are (varseq) or (varseq, fixed scalar). Blank lines are
//            skipped.
// plaintext  One sample per line, split on ASCII whitespace. A token's id is
//            FNV-1a-64(token bytes) mod vocab_size. An empty line is an empty
//            sample.
// synthetic-spec
//            A JSON object describing a generated corpus, e.g.
//            {"count": 10000, "distribution": "uniform", "lo": 1, "hi": 100,
//             "vocab_size": 1000, "seed": 42}
//            or with "distribution": "geometric", "p": 0.05, "cap": 200.
//
// Manifest
// --------
// A JSON document {"datasets": [entry, ...]} where each entry has
//   name        string
//   split       string, (name, split) unique in the manifest
//   path        file path, relative paths resolve against the manifest's dir
//   sha256      64 lowercase hex chars, digest of the file at `path`
//   format      "jsonl" | "plaintext" | "synthetic-spec"
//   schema      list of "varseq" / "fixed"; optional for synthetic-spec
//   vocab_size  integer >= 1, plaintext only
//
// Get() reads the file once, verifies its digest, and parses the same bytes.

#ifndef SEQBATCH_DATASETS_H_
#define SEQBATCH_DATASETS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqbatch/core.h"

namespace seqbatch {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

std::uint64_t Fnv1a64(std::string_view bytes);

// Throws Error when the file cannot be read.
std::string ReadFileBytes(const std::filesystem::path& path);

// `expected` constrains the schema; without it the schema is inferred from
// the first record, and an empty input yields an empty (varseq) dataset.
Dataset ParseJsonl(std::string_view content,
                   const std::optional<Schema>& expected = std::nullopt);
Dataset IngestJsonl(const std::filesystem::path& path,
                    const std::optional<Schema>& expected = std::nullopt);

// Throws SchemaError unless the schema is (varseq) or (varseq, fixed scalar)
// and every label is integral.
std::string ToJsonl(const Dataset& dataset);
void WriteJsonl(const Dataset& dataset, const std::filesystem::path& path);

Dataset ParsePlaintext(std::string_view content, std::uint64_t vocab_size);
Dataset IngestPlaintext(const std::filesystem::path& path,
                        std::uint64_t vocab_size);

enum class LengthDistribution { kUniform, kGeometric };

// Length draws:
//   uniform(lo, hi)    lo + UniformBelow(hi - lo + 1)
//   geometric(p, cap)  number of UniformUnit() draws >= p before the first
//                      draw < p, stopping at cap
// each followed by `length` draws of UniformBelow(vocab_size) for the tokens,
// all from one Rng seeded with `seed`.
struct SyntheticSpec {
  std::size_t count = 0;
  LengthDistribution distribution = LengthDistribution::kUniform;
  std::size_t lo = 1;
  std::size_t hi = 1;
  double p = 0.5;
  std::size_t cap = 0;
  std::uint64_t vocab_size = 1000;
  std::uint64_t seed = 0;

  // Throws InvalidArgumentError on an invalid spec.
  void Validate() const;
  // Short stable identifier, e.g. "uniform:1:100:10000:42:1000".
  std::string Id() const;

  bool operator==(const SyntheticSpec&) const = default;
};

SyntheticSpec ParseSyntheticSpecJson(std::string_view content);

// "uniform:LO:HI:COUNT:SEED[:VOCAB]" or "geometric:P:CAP:COUNT:SEED[:VOCAB]".
SyntheticSpec ParseSyntheticFlag(std::string_view flag);

Dataset GenerateSynthetic(const SyntheticSpec& spec);

enum class DatasetFormat { kJsonl, kPlaintext, kSyntheticSpec };

struct DatasetEntry {
  std::string name;
  std::string split;
  std::filesystem::path path;  // resolved
  std::string sha256;
  DatasetFormat format = DatasetFormat::kJsonl;
  std::optional<Schema> schema;
  std::uint64_t vocab_size = 0;
};

class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<DatasetEntry> entries);

  // Throws FormatError for an unreadable or malformed manifest.
  static Registry Load(const std::filesystem::path& manifest);

  const std::vector<DatasetEntry>& entries() const { return entries_; }

  // Throws NotFoundError listing the known (name, split) pairs.
  const DatasetEntry& Find(std::string_view name, std::string_view split) const;

  // Throws NotFoundError, IntegrityError, FormatError or SchemaError.
  Dataset Get(std::string_view name, std::string_view split) const;

 private:
  std::vector<DatasetEntry> entries_;
};

// One-line accessor: Registry::Load(manifest).Get(name, split).
Dataset RegistryGet(const std::filesystem::path& manifest,
                    std::string_view name, std::string_view split);

}  // namespace seqbatch

#endif  // SEQBATCH_DATASETS_H_
