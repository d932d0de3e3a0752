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
#include "seqbatch/datasets.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "seqbatch/errors.h"
#include "seqbatch/random.h"
#include "seqbatch/text.h"

namespace seqbatch {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

const Schema& TokensOnlySchema() {
  static const Schema* schema = new Schema{FieldSchema::VarSeqField()};
  return *schema;
}

const Schema& TokensAndLabelSchema() {
  static const Schema* schema =
      new Schema{FieldSchema::VarSeqField(), FieldSchema::FixedField()};
  return *schema;
}

bool IsJsonlSchema(const Schema& schema) {
  return schema == TokensOnlySchema() || schema == TokensAndLabelSchema();
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgumentError("invalid " + std::string(what) + " '" +
                               std::string(text) + "'");
  }
  return value;
}

Schema ParseSchemaJson(const Json& j) {
  if (!j.is_array()) throw FormatError("schema must be a list", 0);
  Schema schema;
  for (const Json& kind : j) {
    if (kind == "varseq") {
      schema.push_back(FieldSchema::VarSeqField());
    } else if (kind == "fixed") {
      schema.push_back(FieldSchema::FixedField());
    } else {
      throw FormatError("unknown field kind " + kind.dump(), 0);
    }
  }
  return schema;
}

DatasetFormat ParseFormat(const std::string& name) {
  if (name == "jsonl") return DatasetFormat::kJsonl;
  if (name == "plaintext") return DatasetFormat::kPlaintext;
  if (name == "synthetic-spec") return DatasetFormat::kSyntheticSpec;
  throw FormatError("unknown dataset format '" + name + "'", 0);
}

bool IsLowerHexDigest(const std::string& s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int digest_len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &digest_len,
                 EVP_sha256(), nullptr) != 1) {
    throw InternalError("sha256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * digest_len);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string Sha256File(const std::filesystem::path& path) {
  return Sha256Hex(ReadFileBytes(path));
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("failed reading " + path.string());
  return bytes;
}

Dataset ParseJsonl(std::string_view content,
                   const std::optional<Schema>& expected) {
  if (expected.has_value() && !IsJsonlSchema(*expected)) {
    throw SchemaError("jsonl datasets have schema (varseq) or (varseq, "
                      "fixed); got " + ToString(*expected));
  }
  std::optional<Schema> schema = expected;
  std::vector<Sample> samples;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_no;
    if (IsBlank(line)) continue;

    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw FormatError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) {
      throw FormatError("expected a JSON object", line_no);
    }
    for (const auto& [key, value] : record.items()) {
      if (key != "tokens" && key != "label") {
        throw FormatError("unexpected key \"" + key + "\"", line_no);
      }
    }
    auto tokens_it = record.find("tokens");
    if (tokens_it == record.end()) {
      throw SchemaError("line " + std::to_string(line_no) +
                        ": missing required key \"tokens\"");
    }
    if (!tokens_it->is_array()) {
      throw FormatError("\"tokens\" must be an array", line_no);
    }
    VarSeq tokens;
    tokens.reserve(tokens_it->size());
    for (const Json& t : *tokens_it) {
      if (!t.is_number_integer() ||
          (t.is_number_integer() && !t.is_number_unsigned() &&
           t.get<std::int64_t>() < 0)) {
        throw FormatError("tokens must be non-negative integers", line_no);
      }
      if (t.is_number_unsigned() &&
          t.get<std::uint64_t>() >
              static_cast<std::uint64_t>(std::numeric_limits<TokenId>::max())) {
        throw FormatError("token id out of range", line_no);
      }
      tokens.push_back(t.get<TokenId>());
    }

    auto label_it = record.find("label");
    const bool has_label = label_it != record.end();
    if (has_label && !label_it->is_number_integer()) {
      throw FormatError("\"label\" must be an integer", line_no);
    }
    if (!schema.has_value()) {
      schema = has_label ? TokensAndLabelSchema() : TokensOnlySchema();
    } else if ((schema->size() == 2) != has_label) {
      throw SchemaError("line " + std::to_string(line_no) + ": " +
                        (has_label ? "unexpected \"label\""
                                   : "missing \"label\""));
    }

    Sample sample;
    sample.fields.emplace_back(std::move(tokens));
    if (has_label) {
      sample.fields.emplace_back(
          Fixed::Scalar(static_cast<double>(label_it->get<std::int64_t>())));
    }
    samples.push_back(std::move(sample));
  }
  return Dataset(schema.value_or(TokensOnlySchema()), std::move(samples));
}

Dataset IngestJsonl(const std::filesystem::path& path,
                    const std::optional<Schema>& expected) {
  return ParseJsonl(ReadFileBytes(path), expected);
}

std::string ToJsonl(const Dataset& dataset) {
  if (!IsJsonlSchema(dataset.schema())) {
    throw SchemaError("cannot write schema " + ToString(dataset.schema()) +
                      " as jsonl");
  }
  std::string out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    Sample sample = dataset.at(i);
    OrderedJson record;
    record["tokens"] = std::get<VarSeq>(sample.fields[0]);
    if (sample.fields.size() == 2) {
      const double label = std::get<Fixed>(sample.fields[1]).values[0];
      if (std::trunc(label) != label || std::abs(label) > 0x1.0p53) {
        throw SchemaError("sample " + std::to_string(i) +
                          " has a non-integral label");
      }
      record["label"] = static_cast<std::int64_t>(label);
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

void WriteJsonl(const Dataset& dataset, const std::filesystem::path& path) {
  const std::string text = ToJsonl(dataset);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

Dataset ParsePlaintext(std::string_view content, std::uint64_t vocab_size) {
  if (vocab_size == 0) throw InvalidArgumentError("vocab_size must be >= 1");
  std::vector<Sample> samples;
  for (std::string_view line : SplitLines(content)) {
    VarSeq tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      pos = line.find_first_not_of(" \t\r\f\v", pos);
      if (pos == std::string_view::npos) break;
      std::size_t end = line.find_first_of(" \t\r\f\v", pos);
      if (end == std::string_view::npos) end = line.size();
      tokens.push_back(static_cast<TokenId>(
          Fnv1a64(line.substr(pos, end - pos)) % vocab_size));
      pos = end;
    }
    samples.push_back(Sample{{std::move(tokens)}});
  }
  return Dataset(TokensOnlySchema(), std::move(samples));
}

Dataset IngestPlaintext(const std::filesystem::path& path,
                        std::uint64_t vocab_size) {
  return ParsePlaintext(ReadFileBytes(path), vocab_size);
}

void SyntheticSpec::Validate() const {
  if (vocab_size == 0) throw InvalidArgumentError("vocab_size must be >= 1");
  if (distribution == LengthDistribution::kUniform) {
    if (hi < lo) throw InvalidArgumentError("uniform needs hi >= lo");
  } else if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgumentError("geometric needs 0 < p <= 1");
  }
}

std::string SyntheticSpec::Id() const {
  std::string head =
      distribution == LengthDistribution::kUniform
          ? "uniform:" + std::to_string(lo) + ":" + std::to_string(hi)
          : "geometric:" + FormatDecimal(p) + ":" + std::to_string(cap);
  return head + ":" + std::to_string(count) + ":" + std::to_string(seed) +
         ":" + std::to_string(vocab_size);
}

SyntheticSpec ParseSyntheticSpecJson(std::string_view content) {
  Json j;
  try {
    j = Json::parse(content);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed synthetic spec: ") + e.what(), 0);
  }
  try {
    SyntheticSpec spec;
    spec.count = j.at("count").get<std::size_t>();
    const std::string dist = j.at("distribution").get<std::string>();
    if (dist == "uniform") {
      spec.distribution = LengthDistribution::kUniform;
      spec.lo = j.at("lo").get<std::size_t>();
      spec.hi = j.at("hi").get<std::size_t>();
    } else if (dist == "geometric") {
      spec.distribution = LengthDistribution::kGeometric;
      spec.p = j.at("p").get<double>();
      spec.cap = j.at("cap").get<std::size_t>();
    } else {
      throw FormatError("unknown distribution '" + dist + "'", 0);
    }
    spec.vocab_size = j.value("vocab_size", std::uint64_t{1000});
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.Validate();
    return spec;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("invalid synthetic spec: ") + e.what(), 0);
  }
}

SyntheticSpec ParseSyntheticFlag(std::string_view flag) {
  std::vector<std::string_view> parts = Split(flag, ':');
  if (parts.size() != 5 && parts.size() != 6) {
    throw InvalidArgumentError(
        "synthetic spec must be uniform:LO:HI:COUNT:SEED[:VOCAB] or "
        "geometric:P:CAP:COUNT:SEED[:VOCAB], got '" + std::string(flag) + "'");
  }
  SyntheticSpec spec;
  if (parts[0] == "uniform") {
    spec.distribution = LengthDistribution::kUniform;
    spec.lo = ParseNumber<std::size_t>(parts[1], "lo");
    spec.hi = ParseNumber<std::size_t>(parts[2], "hi");
  } else if (parts[0] == "geometric") {
    spec.distribution = LengthDistribution::kGeometric;
    spec.p = ParseNumber<double>(parts[1], "p");
    spec.cap = ParseNumber<std::size_t>(parts[2], "cap");
  } else {
    throw InvalidArgumentError("unknown distribution '" +
                               std::string(parts[0]) + "'");
  }
  spec.count = ParseNumber<std::size_t>(parts[3], "count");
  spec.seed = ParseNumber<std::uint64_t>(parts[4], "seed");
  if (parts.size() == 6) {
    spec.vocab_size = ParseNumber<std::uint64_t>(parts[5], "vocab");
  }
  spec.Validate();
  return spec;
}

Dataset GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  std::vector<Sample> samples;
  samples.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    std::size_t length = 0;
    if (spec.distribution == LengthDistribution::kUniform) {
      length = spec.lo + rng.UniformBelow(spec.hi - spec.lo + 1);
    } else {
      while (length < spec.cap && rng.UniformUnit() >= spec.p) ++length;
    }
    VarSeq tokens(length);
    for (TokenId& t : tokens) {
      t = static_cast<TokenId>(rng.UniformBelow(spec.vocab_size));
    }
    samples.push_back(Sample{{std::move(tokens)}});
  }
  return Dataset(TokensOnlySchema(), std::move(samples));
}

Registry::Registry(std::vector<DatasetEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!IsLowerHexDigest(entries_[i].sha256)) {
      throw FormatError("entry " + entries_[i].name + ":" + entries_[i].split +
                            " sha256 must be 64 lowercase hex characters",
                        0);
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[j].name == entries_[i].name &&
          entries_[j].split == entries_[i].split) {
        throw FormatError("duplicate entry " + entries_[i].name + ":" +
                              entries_[i].split,
                          0);
      }
    }
  }
}

Registry Registry::Load(const std::filesystem::path& manifest) {
  std::string text;
  try {
    text = ReadFileBytes(manifest);
  } catch (const Error& e) {
    throw FormatError(std::string("manifest: ") + e.what(), 0);
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError("manifest " + manifest.string() + ": " + e.what(), 0);
  }
  const std::filesystem::path base = manifest.parent_path();
  std::vector<DatasetEntry> entries;
  try {
    for (const Json& item : j.at("datasets")) {
      DatasetEntry entry;
      entry.name = item.at("name").get<std::string>();
      entry.split = item.at("split").get<std::string>();
      std::filesystem::path path = item.at("path").get<std::string>();
      entry.path = path.is_absolute() ? path : base / path;
      entry.sha256 = item.at("sha256").get<std::string>();
      entry.format = ParseFormat(item.at("format").get<std::string>());
      if (item.contains("schema")) entry.schema = ParseSchemaJson(item["schema"]);
      if (entry.format == DatasetFormat::kPlaintext) {
        entry.vocab_size = item.at("vocab_size").get<std::uint64_t>();
        if (entry.vocab_size == 0) {
          throw FormatError("entry " + entry.name + ":" + entry.split +
                                " vocab_size must be >= 1",
                            0);
        }
      } else if (entry.format == DatasetFormat::kJsonl &&
                 !entry.schema.has_value()) {
        throw FormatError("entry " + entry.name + ":" + entry.split +
                              " needs a schema",
                          0);
      }
      entries.push_back(std::move(entry));
    }
  } catch (const Json::exception& e) {
    throw FormatError("manifest " + manifest.string() + ": " + e.what(), 0);
  }
  return Registry(std::move(entries));
}

const DatasetEntry& Registry::Find(std::string_view name,
                                   std::string_view split) const {
  for (const DatasetEntry& entry : entries_) {
    if (entry.name == name && entry.split == split) return entry;
  }
  std::string known;
  for (const DatasetEntry& entry : entries_) {
    if (!known.empty()) known += ", ";
    known += entry.name + ":" + entry.split;
  }
  throw NotFoundError("no dataset " + std::string(name) + ":" +
                      std::string(split) + " (known: " +
                      (known.empty() ? "none" : known) + ")");
}

Dataset Registry::Get(std::string_view name, std::string_view split) const {
  const DatasetEntry& entry = Find(name, split);
  const std::string bytes = ReadFileBytes(entry.path);
  const std::string digest = Sha256Hex(bytes);
  if (digest != entry.sha256) {
    throw IntegrityError(entry.path.string(), entry.sha256, digest);
  }
  switch (entry.format) {
    case DatasetFormat::kJsonl:
      return ParseJsonl(bytes, entry.schema);
    case DatasetFormat::kPlaintext:
      if (entry.schema.has_value() && *entry.schema != TokensOnlySchema()) {
        throw SchemaError("plaintext datasets have schema (varseq)");
      }
      return ParsePlaintext(bytes, entry.vocab_size);
    case DatasetFormat::kSyntheticSpec: {
      Dataset dataset = GenerateSynthetic(ParseSyntheticSpecJson(bytes));
      if (entry.schema.has_value() && *entry.schema != dataset.schema()) {
        throw SchemaError("synthetic datasets have schema (varseq)");
      }
      return dataset;
    }
  }
  throw InternalError("unhandled dataset format");
}

Dataset RegistryGet(const std::filesystem::path& manifest,
                    std::string_view name, std::string_view split) {
  return Registry::Load(manifest).Get(name, split);
}

}  // namespace seqbatch
