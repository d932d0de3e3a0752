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
// Collation of a list of samples into one dense mini-batch.
//
// A BatchifyFn is a tuple of per-field transforms. PadField pads the
// variable-length sequences of its column to a common length along the
// trailing axis and records each row's valid length; StackField stacks
// equally-shaped values along a new leading batch axis:
//
//   auto fn = BatchifyFn::Tuple({PadField{}, StackField{}});
//   Batch batch = fn(samples);
//
// All transforms are pure and may be called concurrently.

#ifndef SEQBATCH_BATCHIFY_H_
#define SEQBATCH_BATCHIFY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "seqbatch/core.h"

namespace seqbatch {

struct PadSpec {
  TokenId pad_value = 0;
  // When set (>= 1), the padded length is rounded up to a multiple of this.
  std::optional<std::size_t> round_to;
};

// Row-major (rows x padded_len) block. Positions at or beyond a row's valid
// length hold pad_value.
struct PaddedBlock {
  std::size_t rows = 0;
  std::size_t padded_len = 0;
  TokenId pad_value = 0;
  std::vector<TokenId> values;
  std::vector<std::size_t> valid_lengths;

  std::span<const TokenId> row(std::size_t i) const {
    return std::span<const TokenId>(values).subspan(i * padded_len,
                                                    padded_len);
  }
  // rows * padded_len - sum(valid_lengths).
  std::size_t pad_count() const;

  bool operator==(const PaddedBlock&) const = default;
};

// Row-major block of shape (rows, ...element shape).
struct StackedBlock {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  bool operator==(const StackedBlock&) const = default;
};

using Block = std::variant<PaddedBlock, StackedBlock>;

struct Batch {
  std::vector<Block> fields;

  std::size_t batch_size() const;
  bool operator==(const Batch&) const = default;
};

// Throws InvalidArgumentError for an empty row list or round_to == 0.
PaddedBlock Pad(std::span<const VarSeq> sequences, const PadSpec& spec = {});

// Inverse of Pad: each row truncated to its valid length.
std::vector<VarSeq> Depad(const PaddedBlock& block);

// Throws ShapeError when the values do not all share one shape, and
// InvalidArgumentError for an empty list.
StackedBlock Stack(std::span<const Fixed> values);

// Stacks equal-length sequences into a (rows, length) block.
StackedBlock Stack(std::span<const VarSeq> sequences);

struct PadField {
  PadSpec spec;
};
struct StackField {};

using FieldTransform = std::variant<PadField, StackField>;

class BatchifyFn {
 public:
  static BatchifyFn Tuple(std::vector<FieldTransform> transforms);

  std::size_t arity() const { return transforms_.size(); }
  const std::vector<FieldTransform>& transforms() const { return transforms_; }

  // Throws ArityError or SchemaError when the transforms cannot apply to
  // datasets of this schema (e.g. PadField on a fixed field).
  void CheckCompatible(const Schema& schema) const;

  Batch operator()(std::span<const Sample> samples) const;

 private:
  explicit BatchifyFn(std::vector<FieldTransform> transforms)
      : transforms_(std::move(transforms)) {}

  std::vector<FieldTransform> transforms_;
};

inline Batch Batchify(const BatchifyFn& fn, std::span<const Sample> samples) {
  return fn(samples);
}

// PadField for every varseq field and StackField for every fixed field.
BatchifyFn DefaultBatchifyFor(const Schema& schema);

}  // namespace seqbatch

#endif  // SEQBATCH_BATCHIFY_H_
