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
// Locale-independent number formatting and line splitting.

#ifndef SEQBATCH_TEXT_H_
#define SEQBATCH_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace seqbatch {

// Shortest round-trip decimal, always with a fractional part: 81 -> "81.0",
// 79.2 -> "79.2".
std::string FormatDecimal(double value);

// Fixed notation with `precision` digits after the point.
std::string FormatFixed(double value, int precision);

// Splits on '\n' and strips one trailing '\r' from each line. A final '\n'
// does not produce an extra empty line.
std::vector<std::string_view> SplitLines(std::string_view text);

std::vector<std::string_view> Split(std::string_view text, char delimiter);

}  // namespace seqbatch

#endif  // SEQBATCH_TEXT_H_
