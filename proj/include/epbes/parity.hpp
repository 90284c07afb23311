/*
 * Copyright 2026 The epbes authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

namespace epbes {

/// Max-parity game: circle wins a play iff the largest priority seen
/// infinitely often is even; a player who cannot move loses.
struct ParityGame {
  std::vector<int> priority;
  std::vector<bool> circleOwned;
  std::vector<std::vector<int>> succ;

  int size() const { return static_cast<int>(priority.size()); }
};

struct ParitySolution {
  std::vector<bool> circleWins;
  /// Chosen successor for vertices owned by their winner; -1 elsewhere.
  /// The choice never leaves the winner's region.
  std::vector<int> strategy;
};

/// Recursive attractor decomposition; exact winners on every vertex.
ParitySolution solveParity(const ParityGame& g);

}  // namespace epbes
