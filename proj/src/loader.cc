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
#include "seqbatch/loader.h"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <variant>
#include <vector>

#include "seqbatch/errors.h"
#include "seqbatch/random.h"

namespace seqbatch {

std::size_t LoaderConfig::ResolvedPrefetchDepth() const {
  return prefetch_depth.value_or(std::max<std::size_t>(2, 2 * num_workers));
}

struct BatchStream::State {
  using Result = std::variant<Batch, DataError>;

  State(Dataset d, EpochPlan p, BatchifyFn f, LoaderConfig c)
      : dataset(std::move(d)),
        plan(std::move(p)),
        fn(std::move(f)),
        config(c),
        depth(c.ResolvedPrefetchDepth()) {}

  ~State() { Shutdown(); }

  Result Build(std::size_t position) const {
    const std::vector<std::size_t>& indices = plan.batches[position];
    try {
      std::vector<Sample> samples;
      samples.reserve(indices.size());
      for (std::size_t index : indices) {
        if (index >= dataset.size()) {
          return DataError("index " + std::to_string(index) +
                               " out of range for dataset of size " +
                               std::to_string(dataset.size()),
                           position);
        }
        samples.push_back(dataset.at(index));
      }
      return fn(samples);
    } catch (const std::exception& e) {
      return DataError(e.what(), position);
    } catch (...) {
      return DataError("unknown failure while building batch", position);
    }
  }

  void WorkerLoop() {
    for (;;) {
      std::size_t position;
      {
        std::unique_lock<std::mutex> lock(mu);
        work_cv.wait(lock, [&] {
          return stop || next_to_claim >= plan.batches.size() ||
                 next_to_claim < consumed + depth;
        });
        if (stop || next_to_claim >= plan.batches.size()) return;
        position = next_to_claim++;
      }
      Result result = Build(position);
      {
        std::lock_guard<std::mutex> lock(mu);
        buffer.emplace(position, std::move(result));
        max_buffered = std::max(max_buffered, buffer.size());
      }
      ready_cv.notify_one();
    }
  }

  void Start() {
    workers.reserve(config.num_workers);
    for (std::size_t i = 0; i < config.num_workers; ++i) {
      workers.emplace_back([this] { WorkerLoop(); });
    }
  }

  void Shutdown() {
    {
      std::lock_guard<std::mutex> lock(mu);
      stop = true;
    }
    work_cv.notify_all();
    for (std::thread& t : workers) {
      if (t.joinable()) t.join();
    }
    workers.clear();
  }

  Result Take() {
    if (config.num_workers == 0) {
      max_buffered = std::max<std::size_t>(max_buffered, 1);
      return Build(consumed);
    }
    Result result;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready_cv.wait(lock, [&] { return buffer.count(consumed) > 0; });
      auto it = buffer.find(consumed);
      result = std::move(it->second);
      buffer.erase(it);
    }
    return result;
  }

  const Dataset dataset;
  const EpochPlan plan;
  const BatchifyFn fn;
  const LoaderConfig config;
  const std::size_t depth;

  std::mutex mu;
  std::condition_variable work_cv;
  std::condition_variable ready_cv;
  std::map<std::size_t, Result> buffer;
  std::size_t next_to_claim = 0;
  std::size_t consumed = 0;
  std::size_t max_buffered = 0;
  bool stop = false;
  bool failed = false;
  std::vector<std::thread> workers;
};

BatchStream::BatchStream(Dataset dataset, EpochPlan plan, BatchifyFn fn,
                         LoaderConfig config) {
  if (config.ResolvedPrefetchDepth() == 0) {
    throw InvalidArgumentError("prefetch_depth must be >= 1");
  }
  fn.CheckCompatible(dataset.schema());
  state_ = std::make_unique<State>(std::move(dataset), std::move(plan),
                                   std::move(fn), config);
  state_->Start();
}

BatchStream::~BatchStream() = default;
BatchStream::BatchStream(BatchStream&&) noexcept = default;
BatchStream& BatchStream::operator=(BatchStream&&) noexcept = default;

std::optional<Batch> BatchStream::Next() {
  State& s = *state_;
  if (s.failed || s.consumed >= s.plan.batches.size()) return std::nullopt;

  State::Result result = s.Take();
  {
    std::lock_guard<std::mutex> lock(s.mu);
    ++s.consumed;
  }
  s.work_cv.notify_all();

  if (auto* error = std::get_if<DataError>(&result)) {
    s.failed = true;
    s.Shutdown();
    throw *error;
  }
  return std::move(std::get<Batch>(result));
}

std::size_t BatchStream::num_batches() const {
  return state_->plan.batches.size();
}

std::size_t BatchStream::position() const { return state_->consumed; }

std::size_t BatchStream::max_buffered() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->max_buffered;
}

BatchStream Load(Dataset dataset, EpochPlan plan, BatchifyFn fn,
                 LoaderConfig config) {
  return BatchStream(std::move(dataset), std::move(plan), std::move(fn),
                     config);
}

double ThroughputResult::samples_per_sec() const {
  return wall_seconds > 0.0 ? static_cast<double>(samples) / wall_seconds
                            : 0.0;
}

double ThroughputResult::padded_slots_per_sec() const {
  return wall_seconds > 0.0 ? static_cast<double>(padded_slots) / wall_seconds
                            : 0.0;
}

ThroughputResult MeasureThroughput(Dataset dataset, EpochPlan plan,
                                   BatchifyFn fn, LoaderConfig config,
                                   std::uint64_t per_token_cost) {
  ThroughputResult result;
  const auto start = std::chrono::steady_clock::now();
  BatchStream stream = Load(std::move(dataset), std::move(plan), std::move(fn),
                            config);
  std::uint64_t acc = 0;
  while (std::optional<Batch> batch = stream.Next()) {
    ++result.batches;
    result.samples += batch->batch_size();
    for (const Block& block : batch->fields) {
      const auto* padded = std::get_if<PaddedBlock>(&block);
      if (padded == nullptr) continue;
      const std::size_t cells = padded->rows * padded->padded_len;
      result.total_slots += cells;
      result.padded_slots += padded->pad_count();
      const std::uint64_t rounds = cells * per_token_cost;
      for (std::uint64_t r = 0; r < rounds; ++r) acc = SplitMix64(acc + r);
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  result.work_checksum = acc;
  return result;
}

}  // namespace seqbatch
