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
// Structural data model shared by every other part of the library: samples
// made of variable-length token sequences and fixed-shape values, datasets of
// samples, and the per-sample length statistics that bucketing is driven by.
//
// Everything here is immutable once constructed and may be read concurrently.

#ifndef SEQBATCH_CORE_H_
#define SEQBATCH_CORE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace seqbatch {

using TokenId = std::int64_t;

// A variable-length token sequence. May be empty; ids are non-negative.
using VarSeq = std::vector<TokenId>;

// A scalar (empty shape) or a dense row-major array of the given shape.
struct Fixed {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  static Fixed Scalar(double v) { return Fixed{{}, {v}}; }

  std::size_t element_count() const;
  bool operator==(const Fixed&) const = default;
};

using FieldValue = std::variant<VarSeq, Fixed>;

struct Sample {
  std::vector<FieldValue> fields;

  bool operator==(const Sample&) const = default;
};

enum class FieldKind { kVarSeq, kFixed };

struct FieldSchema {
  FieldKind kind = FieldKind::kVarSeq;
  // Element shape of a kFixed field; ignored for kVarSeq.
  std::vector<std::size_t> shape;

  static FieldSchema VarSeqField() { return {FieldKind::kVarSeq, {}}; }
  static FieldSchema FixedField(std::vector<std::size_t> shape = {}) {
    return {FieldKind::kFixed, std::move(shape)};
  }

  bool operator==(const FieldSchema&) const = default;
};

using Schema = std::vector<FieldSchema>;

std::string ToString(FieldKind kind);
std::string ToString(const Schema& schema);

// Throws SchemaError if `sample` does not conform to `schema`.
void ValidateSample(const Schema& schema, const Sample& sample);

// Random-access provider of samples. Implementations must return the same
// sample for the same index on every call and be safe for concurrent reads.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::size_t size() const = 0;
  virtual Sample at(std::size_t index) const = 0;
};

class Dataset {
 public:
  // An empty dataset with an empty schema.
  Dataset();

  // Validates every sample against the schema.
  Dataset(Schema schema, std::vector<Sample> samples);

  // Wraps a lazy source. Samples are not validated up front; consumers that
  // need them to conform call ValidateSample.
  Dataset(Schema schema, std::shared_ptr<const SampleSource> source);

  const Schema& schema() const { return schema_; }
  std::size_t size() const { return source_->size(); }
  bool empty() const { return size() == 0; }

  // Throws InvalidArgumentError when index >= size().
  Sample at(std::size_t index) const;
  Sample operator[](std::size_t index) const { return at(index); }

  std::vector<Sample> materialize() const;

 private:
  Schema schema_;
  std::shared_ptr<const SampleSource> source_;
};

bool operator==(const Dataset& a, const Dataset& b);

// Per-index lengths of one VarSeq field plus a histogram with one bin per
// length in [min_length, max_length]. For an empty dataset min and max are 0
// and the histogram is empty.
struct LengthStats {
  std::vector<std::size_t> lengths;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::vector<std::size_t> histogram;

  static LengthStats FromLengths(std::vector<std::size_t> lengths);

  std::size_t size() const { return lengths.size(); }
  bool empty() const { return lengths.empty(); }
  // Number of samples whose length is exactly `length`.
  std::size_t count(std::size_t length) const;
  std::size_t total_tokens() const;

  bool operator==(const LengthStats&) const = default;
};

// Lengths of field `key_field` in index order. Throws SchemaError when the
// field does not exist or is not a VarSeq field.
LengthStats ComputeLengths(const Dataset& dataset, std::size_t key_field = 0);

}  // namespace seqbatch

#endif  // SEQBATCH_CORE_H_
