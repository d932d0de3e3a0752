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
// Epoch planners.
//
// PlanFixedBucket groups samples of similar length so that batches need less
// padding. Samples are assigned to the bucket whose length range contains
// them and each bucket is chunked into batches of at most batch_size. The
// random and sequential planners are baselines that ignore lengths.
//
// Shuffling is driven by one seed split into independent streams with
// DeriveSeed (random.h):
//
//   stream 0      permutation of the global batch order
//   stream 1 + k  permutation of the indices inside bucket k
//
// PlanRandom permutes {0..N-1} with stream 1, so a single-bucket fixed-bucket
// plan contains exactly the same batches as a random plan with the same seed
// and batch size (only their order differs).

#ifndef SEQBATCH_SAMPLER_H_
#define SEQBATCH_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqbatch/core.h"

namespace seqbatch {

enum class BucketScheme { kConstantWidth, kQuantile };

std::string ToString(BucketScheme scheme);
// Accepts "constant" / "constant-width" and "quantile".
BucketScheme ParseBucketScheme(std::string_view name);

// Inclusive length range [low, high].
struct Bucket {
  std::size_t low = 0;
  std::size_t high = 0;

  std::size_t width() const { return high - low; }
  bool contains(std::size_t length) const {
    return low <= length && length <= high;
  }
  bool operator==(const Bucket&) const = default;
};

struct BucketSpec {
  std::vector<Bucket> buckets;  // sorted, disjoint, all populated
  BucketScheme scheme = BucketScheme::kConstantWidth;
  std::size_t requested_buckets = 1;

  std::size_t num_buckets() const { return buckets.size(); }
  std::optional<std::size_t> Find(std::size_t length) const;

  bool operator==(const BucketSpec&) const = default;
};

struct EpochPlan {
  std::vector<std::vector<std::size_t>> batches;
  std::uint64_t seed = 0;
  bool drop_last = false;

  std::size_t num_indices() const;
  bool operator==(const EpochPlan&) const = default;
};

inline constexpr std::uint64_t kBatchOrderStream = 0;
inline constexpr std::uint64_t BucketStream(std::size_t bucket) {
  return 1 + static_cast<std::uint64_t>(bucket);
}

// Constant-width: width = ceil((max - min + 1) / num_buckets) and bucket k
// covers [min + k*width, min + (k+1)*width - 1], the last one clipped to max.
// Quantile: the populated lengths are split into min(num_buckets, distinct
// lengths) contiguous runs so that the largest |population - N / runs| is as
// small as possible; among such splits the one with the shortest leading
// buckets wins. Edges therefore sit at empirical length quantiles.
// Unpopulated buckets are dropped in both schemes.
//
// Throws InvalidArgumentError for num_buckets == 0 and EmptyDatasetError for
// empty stats.
BucketSpec MakeBuckets(const LengthStats& stats, std::size_t num_buckets,
                       BucketScheme scheme = BucketScheme::kConstantWidth);

// Throws InvalidArgumentError for batch_size == 0 and InternalError when a
// length falls outside every bucket.
EpochPlan PlanFixedBucket(const LengthStats& stats, const BucketSpec& spec,
                          std::size_t batch_size, bool shuffle,
                          std::uint64_t seed, bool drop_last = false);

// Seeded permutation of {0..n-1} chunked into consecutive batches.
EpochPlan PlanRandom(std::size_t n, std::size_t batch_size, std::uint64_t seed,
                     bool drop_last = false);

// {0..n-1} in order, chunked.
EpochPlan PlanSequential(std::size_t n, std::size_t batch_size,
                         bool drop_last = false);

struct PaddingCounts {
  std::size_t total_slots = 0;  // sum over batches of size * max length
  std::size_t token_slots = 0;  // sum of planned sample lengths
  std::size_t pad_slots() const { return total_slots - token_slots; }

  bool operator==(const PaddingCounts&) const = default;
};

// Throws InvalidArgumentError if the plan references an index outside stats.
PaddingCounts CountPadding(const EpochPlan& plan, const LengthStats& stats);

// Fraction of padded slots over the epoch, in [0, 1). 0 for an empty plan.
double PaddingRatio(const EpochPlan& plan, const LengthStats& stats);

// One batch per line, indices separated by single spaces, '\n' after every
// line. ParsePlan throws FormatError on anything else; seed and drop_last are
// not part of the text form.
std::string SerializePlan(const EpochPlan& plan);
EpochPlan ParsePlan(std::string_view text);

}  // namespace seqbatch

#endif  // SEQBATCH_SAMPLER_H_
