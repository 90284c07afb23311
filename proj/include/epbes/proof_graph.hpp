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

#include <optional>
#include <string>
#include <vector>

#include "epbes/game.hpp"

namespace epbes {

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Concrete witness graph: one vertex per signature with the chosen
/// clause and witness tuple; edges go to the clause's call values.
struct ConcreteProofGraph {
  struct Vertex {
    Signature sig;
    int clause = -1;  // -1: unexpanded frontier vertex
    std::vector<Value> witness;
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> succ;
  bool closed = true;
  std::vector<int> frontier;

  int indexOf(const Signature& sig) const;
};

/// Unrolls the winning strategy from `sig` into concrete vertices,
/// querying the solver for a witness tuple per vertex. Stops when the
/// graph closes or the vertex budget is hit (closed = false).
ConcreteProofGraph extractConcrete(const SolvedPbes& solved, const Signature& sig,
                                   size_t budget, SolverSession& s);

struct Violation {
  int condition = 0;  // 1, 2, or 0 for structural rejections
  std::string location;
  std::string detail;
};

/// Checks both proof-graph conditions: evaluation per vertex under the
/// annotated clause and witness with postset covering the call targets,
/// and even minimum rank on every cycle (via SCCs per odd rank).
std::optional<Violation> validateConcrete(const ConcreteProofGraph& pg,
                                          const ClausePbes& c);

/// Subgraph of the reduced game induced by circle's winning region:
/// circle vertices keep only the strategy edge, box vertices keep all.
struct ReducedStrategyGraph {
  std::vector<int> gameVertices;       // indices into the reduced game
  std::vector<std::vector<int>> succ;  // local indices
  int root = -1;

  int localOf(int gameVertex) const;
};

ReducedStrategyGraph strategySubgraph(const SolvedPbes& solved, const Signature& sig,
                                      SolverSession& s);

/// Prop-B.1-style uniformity of one reduced edge, by an UNSAT check:
/// every concrete member of the source block has a successor in the
/// target block.
bool edgeIsUniform(const ClausePbes& c, const Block& src, const Block& dst,
                   SolverSession& s);

/// Every cycle has even maximum priority, and every edge passes the
/// symbolic edge-soundness check.
std::optional<Violation> validateReducedStrategy(const ReducedStrategyGraph& rsg,
                                                 const SolvedPbes& solved,
                                                 SolverSession& s);

}  // namespace epbes
