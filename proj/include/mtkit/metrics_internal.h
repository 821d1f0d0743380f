// include/mtkit/metrics_internal.h

// Copyright 2026  mtkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Implementation details exposed for tests; not part of the public API.

#ifndef MTKIT_METRICS_INTERNAL_H_
#define MTKIT_METRICS_INTERNAL_H_

#include <cstdint>
#include <string>
#include <vector>

namespace mtkit {
namespace metrics {
namespace internal {

std::uint32_t Levenshtein(const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// Exact distance when it is below limit, otherwise any value >= limit
// (banded DP with Ukkonen's cutoff).
std::uint32_t LevenshteinBounded(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b,
                                 std::uint32_t limit);

// Shifts plus final edit distance for one segment.
std::uint64_t TerSegmentEdits(const std::vector<std::string>& hypothesis,
                              const std::vector<std::string>& reference);

}  // namespace internal
}  // namespace metrics
}  // namespace mtkit

#endif  // MTKIT_METRICS_INTERNAL_H_
