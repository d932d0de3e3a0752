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
// The `seqbatch` command line.
//
//   seqbatch info    (--dataset NAME:SPLIT [--manifest F] | --synthetic SPEC)
//   seqbatch buckets (dataset flags) [--num-buckets N] [--scheme S]
//   seqbatch bench   (dataset flags) [--batch-size B] [--num-buckets N]
//                    [--scheme S] [--seed S] [--workers W]
//                    [--per-token-cost C] [--out REPORT.json]
//   seqbatch zoo list|pareto|export [--catalog F] [--task T] [--source S]
//                    [--metric M] [--out F.csv]
//
// Exit codes: 0 success, 1 runtime error, 2 usage error (bad flags, unknown
// dataset). Standard output never contains timings so it can be compared
// byte for byte; bench timings go to the report file only.
//
// Bench report (JSON):
//   {"environment": {"corpus", "seed", "batch_size", "workers",
//                    "per_token_cost", "scheme"},
//    "rows": [{"strategy", "num_buckets", "batch_size", "batches",
//              "padding_ratio", "padded_slots", "total_slots",
//              "samples_per_sec", "wall_ms"}, ...],
//    "padding_reduction": fraction}
// The report is written to a temporary file and renamed into place, so a
// failed run leaves either the complete previous file or none.

#ifndef SEQBATCH_CLI_H_
#define SEQBATCH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace seqbatch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Catalog used by `zoo` when neither --catalog nor $SEQBATCH_CATALOG is set.
std::string DefaultCatalogPath();

}  // namespace seqbatch

#endif  // SEQBATCH_CLI_H_
