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

#include <map>
#include <optional>

#include "epbes/parity.hpp"
#include "epbes/refine.hpp"

namespace epbes {

/// The finite quotient of the dependency space, read as a parity game:
/// OrBlocks are circle vertices with priority u − rank(X_i), AndBlocks
/// are box vertices with priority 0.
struct ReducedGame {
  std::vector<Block> vertices;  // ascending block id
  ParityGame game;              // indices aligned with `vertices`
  int priorityBase = 0;         // u
  std::map<BlockId, int> vertexOfBlock;

  int vertexOf(BlockId id) const;
};

/// Edge tests are solver emptiness checks on block shapes:
/// ∨→∧ needs a pair in ψ ∩ φ_ik whose first component lies in φ;
/// ∧→∨ needs a pair in ψ sent into φ′ by some call's argument map.
ReducedGame buildReducedGame(const PartitionFamily& P, const ClausePbes& c,
                             SolverSession& s);

/// Drops vertices unreachable from the block containing `root`.
ReducedGame pruneReachable(const ReducedGame& g, const PartitionFamily& P,
                           const ClausePbes& c, const Signature& root, SolverSession& s);

enum class Verdict { True, False, Diverged };

struct PipelineConfig {
  int maxIter = 100;
  bool keepTrace = false;
  size_t maxClauses = 10000;
  IterationHook hook;
};

/// Saturation plus game construction and solving; answers any number of
/// membership queries against one solved game.
struct SolvedPbes {
  ClausePbes clauses;
  PartitionFamily family;
  ReducedGame game;
  ParitySolution solution;
  int iterations = 0;
  std::vector<SplitEvent> trace;

  bool query(const Signature& sig, SolverSession& s) const;
};

struct PipelineResult {
  bool diverged = false;
  int iterations = 0;
  std::optional<SolvedPbes> solved;          // when saturated
  std::optional<SaturationResult> partial;   // when diverged
};

PipelineResult runPipeline(const Pbes& p, const PipelineConfig& cfg, SolverSession& s);

/// Short human-readable name of a game vertex, e.g. "X1#3" or "X1.k2#5".
std::string blockLabel(const SolvedPbes& solved, int vertex);

/// toClauseForm → saturate → build → solve → winner of the root block.
Verdict membership(const Pbes& p, const Signature& sig, const PipelineConfig& cfg,
                   SolverSession& s);

}  // namespace epbes
