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
#include "seqbatch/core.h"

#include <algorithm>
#include <functional>
#include <numeric>

#include "seqbatch/errors.h"

namespace seqbatch {
namespace {

class VectorSource : public SampleSource {
 public:
  explicit VectorSource(std::vector<Sample> samples)
      : samples_(std::move(samples)) {}

  std::size_t size() const override { return samples_.size(); }
  Sample at(std::size_t index) const override { return samples_[index]; }

 private:
  std::vector<Sample> samples_;
};

std::string ShapeString(const std::vector<std::size_t>& shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + ")";
}

}  // namespace

std::size_t Fixed::element_count() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string ToString(FieldKind kind) {
  return kind == FieldKind::kVarSeq ? "varseq" : "fixed";
}

std::string ToString(const Schema& schema) {
  std::string out = "(";
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i > 0) out += ", ";
    out += ToString(schema[i].kind);
    if (schema[i].kind == FieldKind::kFixed) out += ShapeString(schema[i].shape);
  }
  return out + ")";
}

void ValidateSample(const Schema& schema, const Sample& sample) {
  if (sample.fields.size() != schema.size()) {
    throw ArityError("sample has " + std::to_string(sample.fields.size()) +
                     " fields, schema " + ToString(schema) + " expects " +
                     std::to_string(schema.size()));
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const FieldValue& value = sample.fields[k];
    if (schema[k].kind == FieldKind::kVarSeq) {
      const auto* seq = std::get_if<VarSeq>(&value);
      if (seq == nullptr) {
        throw SchemaError("field " + std::to_string(k) +
                          " should be varseq but holds a fixed value");
      }
      if (std::any_of(seq->begin(), seq->end(),
                      [](TokenId t) { return t < 0; })) {
        throw SchemaError("field " + std::to_string(k) +
                          " contains a negative token id");
      }
    } else {
      const auto* fixed = std::get_if<Fixed>(&value);
      if (fixed == nullptr) {
        throw SchemaError("field " + std::to_string(k) +
                          " should be fixed but holds a varseq");
      }
      if (fixed->shape != schema[k].shape ||
          fixed->values.size() != fixed->element_count()) {
        throw SchemaError("field " + std::to_string(k) + " has shape " +
                          ShapeString(fixed->shape) + ", schema expects " +
                          ShapeString(schema[k].shape));
      }
    }
  }
}

Dataset::Dataset()
    : source_(std::make_shared<VectorSource>(std::vector<Sample>{})) {}

Dataset::Dataset(Schema schema, std::vector<Sample> samples)
    : schema_(std::move(schema)) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      ValidateSample(schema_, samples[i]);
    } catch (const ArityError& e) {
      throw ArityError("sample " + std::to_string(i) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  source_ = std::make_shared<VectorSource>(std::move(samples));
}

Dataset::Dataset(Schema schema, std::shared_ptr<const SampleSource> source)
    : schema_(std::move(schema)), source_(std::move(source)) {
  if (source_ == nullptr) {
    throw InvalidArgumentError("dataset source must not be null");
  }
}

Sample Dataset::at(std::size_t index) const {
  if (index >= size()) {
    throw InvalidArgumentError("index " + std::to_string(index) +
                               " out of range for dataset of size " +
                               std::to_string(size()));
  }
  return source_->at(index);
}

std::vector<Sample> Dataset::materialize() const {
  std::vector<Sample> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(source_->at(i));
  return out;
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.schema() != b.schema() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.at(i) == b.at(i))) return false;
  }
  return true;
}

LengthStats LengthStats::FromLengths(std::vector<std::size_t> lengths) {
  LengthStats stats;
  stats.lengths = std::move(lengths);
  if (stats.lengths.empty()) return stats;
  auto [lo, hi] = std::minmax_element(stats.lengths.begin(),
                                      stats.lengths.end());
  stats.min_length = *lo;
  stats.max_length = *hi;
  stats.histogram.assign(stats.max_length - stats.min_length + 1, 0);
  for (std::size_t len : stats.lengths) {
    ++stats.histogram[len - stats.min_length];
  }
  return stats;
}

std::size_t LengthStats::count(std::size_t length) const {
  if (empty() || length < min_length || length > max_length) return 0;
  return histogram[length - min_length];
}

std::size_t LengthStats::total_tokens() const {
  return std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
}

LengthStats ComputeLengths(const Dataset& dataset, std::size_t key_field) {
  const Schema& schema = dataset.schema();
  if (key_field >= schema.size()) {
    throw SchemaError("key field " + std::to_string(key_field) +
                      " out of range for schema " + ToString(schema));
  }
  if (schema[key_field].kind != FieldKind::kVarSeq) {
    throw SchemaError("key field " + std::to_string(key_field) +
                      " is a fixed field; lengths need a varseq field");
  }
  std::vector<std::size_t> lengths;
  lengths.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    Sample sample = dataset.at(i);
    if (key_field >= sample.fields.size()) {
      throw SchemaError("sample " + std::to_string(i) + " lacks field " +
                        std::to_string(key_field));
    }
    const auto* seq = std::get_if<VarSeq>(&sample.fields[key_field]);
    if (seq == nullptr) {
      throw SchemaError("sample " + std::to_string(i) + " field " +
                        std::to_string(key_field) + " is not a varseq");
    }
    lengths.push_back(seq->size());
  }
  return LengthStats::FromLengths(std::move(lengths));
}

}  // namespace seqbatch
