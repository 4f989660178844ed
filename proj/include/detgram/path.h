// Copyright 2026 The Detgram Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DETGRAM_PATH_H_
#define DETGRAM_PATH_H_

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace detgram {

inline constexpr int kDefaultDepthBound = 16;

// An output string emitted on an accepting path, placed before the token at
// `position` (or at the end of the match when position == end).
struct Emission {
  size_t position = 0;
  std::string text;

  auto operator<=>(const Emission &) const = default;
};

// One accepting path from a fixed start token: the index one past the last
// consumed token and the outputs along the way.
struct PathResult {
  size_t end = 0;
  std::vector<Emission> emissions;

  auto operator<=>(const PathResult &) const = default;
};

}  // namespace detgram

#endif  // DETGRAM_PATH_H_
