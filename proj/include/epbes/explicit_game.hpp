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

#include <cstdint>
#include <string>
#include <vector>

#include "epbes/enf.hpp"
#include "epbes/parity.hpp"

namespace epbes {

struct ExplicitBounds {
  std::uint64_t valueCap = 256;
  std::uint64_t witnessCap = 64;
  size_t vertexCap = 100000;
};

/// Bounded concrete instantiation of the dependency space. ∨-vertices
/// are signatures, ∧-vertices are clause instances (i,k,v⃗,w⃗). Frontier
/// ∨-vertices (value cap or vertex cap) are stuck, so circle loses
/// there; True answers stay sound on unclosed games.
struct ExplicitGame {
  struct OrVertex {
    Signature sig;
    bool frontier = false;
  };
  struct AndVertex {
    int eq = 0;
    int clause = 0;
    std::vector<Value> witness;
  };

  std::vector<OrVertex> orVertices;
  std::vector<AndVertex> andVertices;
  // game vertex v: v < orVertices.size() is ∨, otherwise ∧
  ParityGame game;
  bool closed = true;
  int root = 0;
  int priorityBase = 0;

  size_t size() const { return orVertices.size() + andVertices.size(); }
  bool isOr(int v) const { return v < static_cast<int>(orVertices.size()); }
};

/// BFS instantiation from sig. Witness tuples are enumerated fairly (by
/// maximum component, then lexicographically) up to the witness cap;
/// an ∧-vertex appears only when φ_ik evaluates to true.
ExplicitGame explore(const ClausePbes& c, const Signature& sig, const ExplicitBounds& b);

enum class OracleVerdict { True, False, Unknown };

const char* oracleVerdictName(OracleVerdict v);

/// Circle wins the root: True (sound even unclosed). Box wins and the
/// game closed: False. Box wins an unclosed game: Unknown.
OracleVerdict solveExplicit(const ExplicitGame& g);

}  // namespace epbes
