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
#include "seqbatch/batchify.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "seqbatch/errors.h"

namespace seqbatch {
namespace {

std::size_t RoundUp(std::size_t value, std::size_t multiple) {
  return (value + multiple - 1) / multiple * multiple;
}

template <typename T>
std::vector<T> Column(std::span<const Sample> samples, std::size_t k) {
  std::vector<T> column;
  column.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto* value = std::get_if<T>(&samples[i].fields[k]);
    if (value == nullptr) {
      throw SchemaError("sample " + std::to_string(i) + " field " +
                        std::to_string(k) + " has the wrong kind for its "
                        "transform");
    }
    column.push_back(*value);
  }
  return column;
}

}  // namespace

std::size_t PaddedBlock::pad_count() const {
  return rows * padded_len -
         std::accumulate(valid_lengths.begin(), valid_lengths.end(),
                         std::size_t{0});
}

std::size_t Batch::batch_size() const {
  if (fields.empty()) return 0;
  return std::visit(
      [](const auto& block) -> std::size_t {
        using T = std::decay_t<decltype(block)>;
        if constexpr (std::is_same_v<T, PaddedBlock>) {
          return block.rows;
        } else {
          return block.shape.empty() ? 0 : block.shape[0];
        }
      },
      fields.front());
}

PaddedBlock Pad(std::span<const VarSeq> sequences, const PadSpec& spec) {
  if (sequences.empty()) {
    throw InvalidArgumentError("pad needs at least one row");
  }
  if (spec.round_to.has_value() && *spec.round_to == 0) {
    throw InvalidArgumentError("round_to must be >= 1");
  }
  const std::size_t multiple = spec.round_to.value_or(1);

  std::size_t longest = 0;
  for (const VarSeq& seq : sequences) longest = std::max(longest, seq.size());
  // An all-empty column still gets a non-degenerate trailing axis.
  const std::size_t padded_len =
      longest == 0 ? multiple : RoundUp(longest, multiple);

  PaddedBlock block;
  block.rows = sequences.size();
  block.padded_len = padded_len;
  block.pad_value = spec.pad_value;
  block.values.assign(block.rows * padded_len, spec.pad_value);
  block.valid_lengths.reserve(block.rows);
  for (std::size_t i = 0; i < block.rows; ++i) {
    std::copy(sequences[i].begin(), sequences[i].end(),
              block.values.begin() + i * padded_len);
    block.valid_lengths.push_back(sequences[i].size());
  }
  return block;
}

std::vector<VarSeq> Depad(const PaddedBlock& block) {
  std::vector<VarSeq> out;
  out.reserve(block.rows);
  for (std::size_t i = 0; i < block.rows; ++i) {
    auto row = block.row(i).first(block.valid_lengths[i]);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

StackedBlock Stack(std::span<const Fixed> values) {
  if (values.empty()) {
    throw InvalidArgumentError("stack needs at least one row");
  }
  const std::vector<std::size_t>& shape = values.front().shape;
  StackedBlock block;
  block.shape.push_back(values.size());
  block.shape.insert(block.shape.end(), shape.begin(), shape.end());
  block.values.reserve(values.size() * values.front().element_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].shape != shape ||
        values[i].values.size() != values[i].element_count()) {
      throw ShapeError("row " + std::to_string(i) +
                       " does not match the shape of row 0");
    }
    block.values.insert(block.values.end(), values[i].values.begin(),
                        values[i].values.end());
  }
  return block;
}

StackedBlock Stack(std::span<const VarSeq> sequences) {
  if (sequences.empty()) {
    throw InvalidArgumentError("stack needs at least one row");
  }
  const std::size_t length = sequences.front().size();
  StackedBlock block;
  block.shape = {sequences.size(), length};
  block.values.reserve(sequences.size() * length);
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (sequences[i].size() != length) {
      throw ShapeError("row " + std::to_string(i) + " has length " +
                       std::to_string(sequences[i].size()) + ", row 0 has " +
                       std::to_string(length));
    }
    for (TokenId t : sequences[i]) block.values.push_back(static_cast<double>(t));
  }
  return block;
}

BatchifyFn BatchifyFn::Tuple(std::vector<FieldTransform> transforms) {
  for (const FieldTransform& t : transforms) {
    if (const auto* pad = std::get_if<PadField>(&t)) {
      if (pad->spec.round_to.has_value() && *pad->spec.round_to == 0) {
        throw InvalidArgumentError("round_to must be >= 1");
      }
    }
  }
  return BatchifyFn(std::move(transforms));
}

void BatchifyFn::CheckCompatible(const Schema& schema) const {
  if (schema.size() != arity()) {
    throw ArityError("batchify has arity " + std::to_string(arity()) +
                     " but the schema has " + std::to_string(schema.size()) +
                     " fields");
  }
  for (std::size_t k = 0; k < arity(); ++k) {
    if (std::holds_alternative<PadField>(transforms_[k]) &&
        schema[k].kind != FieldKind::kVarSeq) {
      throw SchemaError("pad applied to fixed field " + std::to_string(k));
    }
  }
}

Batch BatchifyFn::operator()(std::span<const Sample> samples) const {
  if (samples.empty()) {
    throw InvalidArgumentError("batchify needs at least one sample");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].fields.size() != arity()) {
      throw ArityError("sample " + std::to_string(i) + " has " +
                       std::to_string(samples[i].fields.size()) +
                       " fields, batchify has arity " +
                       std::to_string(arity()));
    }
  }

  Batch batch;
  batch.fields.reserve(arity());
  for (std::size_t k = 0; k < arity(); ++k) {
    if (const auto* pad = std::get_if<PadField>(&transforms_[k])) {
      if (!std::holds_alternative<VarSeq>(samples.front().fields[k])) {
        throw SchemaError("pad applied to fixed field " + std::to_string(k));
      }
      batch.fields.emplace_back(Pad(Column<VarSeq>(samples, k), pad->spec));
    } else if (std::holds_alternative<VarSeq>(samples.front().fields[k])) {
      batch.fields.emplace_back(Stack(std::span<const VarSeq>(
          Column<VarSeq>(samples, k))));
    } else {
      batch.fields.emplace_back(Stack(std::span<const Fixed>(
          Column<Fixed>(samples, k))));
    }
  }
  return batch;
}

BatchifyFn DefaultBatchifyFor(const Schema& schema) {
  std::vector<FieldTransform> transforms;
  for (const FieldSchema& field : schema) {
    if (field.kind == FieldKind::kVarSeq) {
      transforms.emplace_back(PadField{});
    } else {
      transforms.emplace_back(StackField{});
    }
  }
  return BatchifyFn::Tuple(std::move(transforms));
}

}  // namespace seqbatch
