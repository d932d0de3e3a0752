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
// Executes an epoch plan against a dataset.
//
// Batch j of the stream is always fn(dataset[plan.batches[j]...]), whatever
// the worker count. Workers claim batch positions in plan order and park the
// finished batches in a reordering buffer from which the consumer takes them
// in order. A worker may only claim position j while
// j < consumed + prefetch_depth, so the buffer never holds more than
// prefetch_depth batches.
//
// A failure while building a batch (bad index, throwing sample source,
// collation error) is delivered as a DataError from Next() at that batch's
// position. All earlier batches are delivered normally, and the stream ends
// after the error.

#ifndef SEQBATCH_LOADER_H_
#define SEQBATCH_LOADER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>

#include "seqbatch/batchify.h"
#include "seqbatch/core.h"
#include "seqbatch/sampler.h"

namespace seqbatch {

struct LoaderConfig {
  // 0 runs everything synchronously inside Next().
  std::size_t num_workers = 0;
  // Defaults to max(2, 2 * num_workers).
  std::optional<std::size_t> prefetch_depth;
  std::uint64_t seed = 0;

  std::size_t ResolvedPrefetchDepth() const;
};

class BatchStream {
 public:
  BatchStream(Dataset dataset, EpochPlan plan, BatchifyFn fn,
              LoaderConfig config);
  ~BatchStream();

  BatchStream(BatchStream&&) noexcept;
  BatchStream& operator=(BatchStream&&) noexcept;
  BatchStream(const BatchStream&) = delete;
  BatchStream& operator=(const BatchStream&) = delete;

  // The next batch in plan order, or nullopt at end of epoch.
  std::optional<Batch> Next();

  std::size_t num_batches() const;
  // Number of batches handed to the consumer so far.
  std::size_t position() const;
  // High-water mark of completed batches waiting in the reordering buffer.
  std::size_t max_buffered() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Throws SchemaError/ArityError when fn cannot apply to the dataset schema
// and InvalidArgumentError for prefetch_depth == 0.
BatchStream Load(Dataset dataset, EpochPlan plan, BatchifyFn fn,
                 LoaderConfig config = {});

struct ThroughputResult {
  std::size_t batches = 0;
  std::size_t samples = 0;
  std::size_t total_slots = 0;   // padded-block cells, pad included
  std::size_t padded_slots = 0;  // cells holding pad_value
  double wall_seconds = 0.0;
  std::uint64_t work_checksum = 0;

  double samples_per_sec() const;
  double padded_slots_per_sec() const;
};

// Drains a stream and charges per_token_cost units of simulated work for every
// cell of every padded block, i.e. for the full padded shape a model would
// compute over. One unit is one SplitMix64 round.
ThroughputResult MeasureThroughput(Dataset dataset, EpochPlan plan,
                                   BatchifyFn fn, LoaderConfig config,
                                   std::uint64_t per_token_cost);

}  // namespace seqbatch

#endif  // SEQBATCH_LOADER_H_
