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
#include "seqbatch/sampler.h"

#include <algorithm>
#include <charconv>
#include <span>

#include "seqbatch/errors.h"
#include "seqbatch/random.h"

namespace seqbatch {
namespace {

void AppendChunks(const std::vector<std::size_t>& indices,
                  std::size_t batch_size, bool drop_last,
                  std::vector<std::vector<std::size_t>>* batches) {
  for (std::size_t begin = 0; begin < indices.size(); begin += batch_size) {
    const std::size_t end = std::min(indices.size(), begin + batch_size);
    if (drop_last && end - begin < batch_size) break;
    batches->emplace_back(indices.begin() + begin, indices.begin() + end);
  }
}

std::vector<Bucket> ConstantWidthBuckets(const LengthStats& stats,
                                         std::size_t num_buckets) {
  const std::size_t span = stats.max_length - stats.min_length + 1;
  const std::size_t width = (span + num_buckets - 1) / num_buckets;
  std::vector<Bucket> buckets;
  for (std::size_t low = stats.min_length; low <= stats.max_length;
       low += width) {
    buckets.push_back({low, std::min(stats.max_length, low + width - 1)});
  }
  return buckets;
}

// Splits the populated lengths into exactly min(num_buckets, distinct
// lengths) contiguous groups whose populations deviate as little as possible
// from N / groups, measured by the worst group. Among optimal partitions the
// one with the shortest leading groups is returned. Unpopulated lengths join
// the group above them.
std::vector<Bucket> QuantileBuckets(const LengthStats& stats,
                                    std::size_t num_buckets) {
  std::vector<std::size_t> values;  // distinct populated lengths
  std::vector<std::size_t> prefix{0};  // prefix[i] = count of values[0..i)
  for (std::size_t j = 0; j < stats.histogram.size(); ++j) {
    if (stats.histogram[j] == 0) continue;
    values.push_back(stats.min_length + j);
    prefix.push_back(prefix.back() + stats.histogram[j]);
  }
  const std::size_t d = values.size();
  const std::size_t groups = std::min(num_buckets, d);
  const std::size_t n = prefix.back();

  // Groups that start at value i and hold between lo and hi samples end at
  // a value in [first, last_excl); the range may be empty.
  auto end_range = [&](std::size_t i, std::size_t lo, std::size_t hi) {
    auto first = std::lower_bound(prefix.begin() + i + 1, prefix.end(),
                                  prefix[i] + std::max<std::size_t>(lo, 1));
    auto last = std::upper_bound(prefix.begin() + i + 1, prefix.end(),
                                 prefix[i] + hi);
    return std::pair<std::size_t, std::size_t>(
        static_cast<std::size_t>(first - prefix.begin()) - 1,
        static_cast<std::size_t>(last - prefix.begin()) - 1);
  };

  // feasible[k][i]: values [i, d) split into k groups within tolerance e,
  // where a population p is within tolerance when |groups * p - n| <= e.
  std::vector<std::vector<char>> feasible;
  auto solve = [&](std::size_t e) {
    const std::size_t lo = n > e ? (n - e + groups - 1) / groups : 0;
    const std::size_t hi = (n + e) / groups;
    std::vector<std::pair<std::size_t, std::size_t>> ends(d);
    for (std::size_t i = 0; i < d; ++i) ends[i] = end_range(i, lo, hi);
    feasible.assign(groups + 1, std::vector<char>(d + 1, 0));
    feasible[0][d] = 1;
    std::vector<std::size_t> count(d + 2, 0);
    for (std::size_t k = 1; k <= groups; ++k) {
      // count[j] = number of feasible[k-1][x] for x in [j, d].
      for (std::size_t j = d + 1; j-- > 0;) {
        count[j] = count[j + 1] + feasible[k - 1][j];
      }
      for (std::size_t i = 0; i < d; ++i) {
        const auto [first, last_excl] = ends[i];
        if (first >= last_excl) continue;
        // The next group starts at end + 1 for end in [first, last_excl).
        feasible[k][i] = count[first + 1] - count[last_excl + 1] > 0;
      }
    }
    return feasible[groups][0] != 0;
  };

  std::size_t lo_e = 0;
  std::size_t hi_e = groups * n;  // always feasible
  while (lo_e < hi_e) {
    const std::size_t mid = lo_e + (hi_e - lo_e) / 2;
    if (solve(mid)) {
      hi_e = mid;
    } else {
      lo_e = mid + 1;
    }
  }
  solve(lo_e);
  const std::size_t lo_pop = n > lo_e ? (n - lo_e + groups - 1) / groups : 0;
  const std::size_t hi_pop = (n + lo_e) / groups;

  std::vector<Bucket> buckets;
  std::size_t low = stats.min_length;
  std::size_t i = 0;
  for (std::size_t k = groups; k > 0; --k) {
    auto [first, last_excl] = end_range(i, lo_pop, hi_pop);
    std::size_t end = first;
    while (end + 1 < last_excl && !feasible[k - 1][end + 1]) ++end;
    const std::size_t high = k == 1 ? stats.max_length : values[end];
    buckets.push_back({low, high});
    low = high + 1;
    i = end + 1;
  }
  return buckets;
}

}  // namespace

std::string ToString(BucketScheme scheme) {
  return scheme == BucketScheme::kConstantWidth ? "constant" : "quantile";
}

BucketScheme ParseBucketScheme(std::string_view name) {
  if (name == "constant" || name == "constant-width") {
    return BucketScheme::kConstantWidth;
  }
  if (name == "quantile") return BucketScheme::kQuantile;
  throw InvalidArgumentError("unknown bucket scheme '" + std::string(name) +
                             "' (expected constant or quantile)");
}

std::optional<std::size_t> BucketSpec::Find(std::size_t length) const {
  auto it = std::lower_bound(
      buckets.begin(), buckets.end(), length,
      [](const Bucket& b, std::size_t len) { return b.high < len; });
  if (it == buckets.end() || !it->contains(length)) return std::nullopt;
  return static_cast<std::size_t>(it - buckets.begin());
}

std::size_t EpochPlan::num_indices() const {
  std::size_t n = 0;
  for (const auto& batch : batches) n += batch.size();
  return n;
}

BucketSpec MakeBuckets(const LengthStats& stats, std::size_t num_buckets,
                       BucketScheme scheme) {
  if (num_buckets == 0) {
    throw InvalidArgumentError("num_buckets must be >= 1");
  }
  if (stats.empty()) {
    throw EmptyDatasetError("cannot bucket an empty dataset");
  }
  std::vector<Bucket> candidates = scheme == BucketScheme::kConstantWidth
                                       ? ConstantWidthBuckets(stats, num_buckets)
                                       : QuantileBuckets(stats, num_buckets);
  BucketSpec spec;
  spec.scheme = scheme;
  spec.requested_buckets = num_buckets;
  for (const Bucket& b : candidates) {
    std::size_t population = 0;
    for (std::size_t len = b.low; len <= b.high; ++len) {
      population += stats.count(len);
    }
    if (population > 0) spec.buckets.push_back(b);
  }
  return spec;
}

EpochPlan PlanFixedBucket(const LengthStats& stats, const BucketSpec& spec,
                          std::size_t batch_size, bool shuffle,
                          std::uint64_t seed, bool drop_last) {
  if (batch_size == 0) throw InvalidArgumentError("batch_size must be >= 1");

  std::vector<std::vector<std::size_t>> members(spec.num_buckets());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    std::optional<std::size_t> bucket = spec.Find(stats.lengths[i]);
    if (!bucket.has_value()) {
      throw InternalError("length " + std::to_string(stats.lengths[i]) +
                          " of index " + std::to_string(i) +
                          " is not covered by any bucket");
    }
    members[*bucket].push_back(i);
  }

  EpochPlan plan;
  plan.seed = seed;
  plan.drop_last = drop_last;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (shuffle) {
      Rng rng(DeriveSeed(seed, BucketStream(k)));
      rng.Shuffle(std::span<std::size_t>(members[k]));
    }
    AppendChunks(members[k], batch_size, drop_last, &plan.batches);
  }
  if (shuffle) {
    Rng rng(DeriveSeed(seed, kBatchOrderStream));
    rng.Shuffle(std::span<std::vector<std::size_t>>(plan.batches));
  }
  return plan;
}

EpochPlan PlanRandom(std::size_t n, std::size_t batch_size, std::uint64_t seed,
                     bool drop_last) {
  if (n == 0) throw InvalidArgumentError("random plan needs N >= 1");
  if (batch_size == 0) throw InvalidArgumentError("batch_size must be >= 1");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(DeriveSeed(seed, BucketStream(0)));
  rng.Shuffle(std::span<std::size_t>(order));

  EpochPlan plan;
  plan.seed = seed;
  plan.drop_last = drop_last;
  AppendChunks(order, batch_size, drop_last, &plan.batches);
  return plan;
}

EpochPlan PlanSequential(std::size_t n, std::size_t batch_size,
                         bool drop_last) {
  if (batch_size == 0) throw InvalidArgumentError("batch_size must be >= 1");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  EpochPlan plan;
  plan.drop_last = drop_last;
  AppendChunks(order, batch_size, drop_last, &plan.batches);
  return plan;
}

PaddingCounts CountPadding(const EpochPlan& plan, const LengthStats& stats) {
  PaddingCounts counts;
  for (const auto& batch : plan.batches) {
    std::size_t longest = 0;
    for (std::size_t index : batch) {
      if (index >= stats.size()) {
        throw InvalidArgumentError("plan index " + std::to_string(index) +
                                   " out of range for " +
                                   std::to_string(stats.size()) + " lengths");
      }
      longest = std::max(longest, stats.lengths[index]);
      counts.token_slots += stats.lengths[index];
    }
    counts.total_slots += batch.size() * longest;
  }
  return counts;
}

double PaddingRatio(const EpochPlan& plan, const LengthStats& stats) {
  const PaddingCounts counts = CountPadding(plan, stats);
  if (counts.total_slots == 0) return 0.0;
  return static_cast<double>(counts.pad_slots()) /
         static_cast<double>(counts.total_slots);
}

std::string SerializePlan(const EpochPlan& plan) {
  std::string out;
  for (const auto& batch : plan.batches) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(batch[i]);
    }
    out += '\n';
  }
  return out;
}

EpochPlan ParsePlan(std::string_view text) {
  EpochPlan plan;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos) {
      throw FormatError("missing trailing newline", line_no);
    }
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol + 1);
    if (line.empty()) throw FormatError("empty batch", line_no);

    std::vector<std::size_t> batch;
    while (true) {
      std::size_t value = 0;
      auto [ptr, ec] =
          std::from_chars(line.data(), line.data() + line.size(), value);
      if (ec != std::errc() || ptr == line.data()) {
        throw FormatError("expected an index", line_no);
      }
      batch.push_back(value);
      line.remove_prefix(static_cast<std::size_t>(ptr - line.data()));
      if (line.empty()) break;
      if (line.front() != ' ' || line.size() == 1) {
        throw FormatError("indices must be separated by single spaces",
                          line_no);
      }
      line.remove_prefix(1);
    }
    plan.batches.push_back(std::move(batch));
  }
  return plan;
}

}  // namespace seqbatch
