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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epbes/enf.hpp"
#include "epbes/set_expr.hpp"
#include "epbes/smt.hpp"

namespace epbes {

using BlockId = int;

/// One partition class. OrBlocks partition 𝔻* per equation; AndBlocks
/// partition 𝔻*×𝔻* per clause. Shapes are nonempty by construction.
struct Block {
  BlockId id = -1;
  bool isAnd = false;
  int eq = 0;
  int clause = -1;  // AndBlocks only
  SetExpr shape;
};

/// Provenance of one refinement split.
struct SplitEvent {
  int iteration = 0;
  bool dividedAnd = false;  // false: an OrBlock family was divided
  int eq = 0;
  int clause = 0;
  int call = -1;             // j, for AndBlock divisions
  BlockId splitterBlock = -1;
  BlockId parent = -1;
  BlockId left = -1;
  BlockId right = -1;
};

struct PartitionFamily {
  std::vector<std::vector<Block>> phi;               // per equation
  std::vector<std::vector<std::vector<Block>>> psi;  // per equation, per clause
  int iterations = 0;
  BlockId nextId = 0;

  size_t totalBlocks() const;
  BlockId freshId() { return nextId++; }
};

/// ⟨{𝔻*},…,{𝔻*×𝔻*},…⟩: one full block per partition.
PartitionFamily initialFamily(const ClausePbes& c);

/// F′_ik(ψ): onto-d⃗ projection of φ_ik ∩ ψ.
SetExpr splitterF(const ClausePbes& c, int i, int k, const Block& psiBlock);

/// G′_ik per call j: inverse image of an OrBlock of equation a_ikj under
/// the argument map f⃗_ikj.
SetExpr splitterG(const ClausePbes& c, int i, int k, int j, const Block& phiBlock);

/// ⊗: splits every block by the splitter, discarding empty sides; blocks
/// that do not split are kept unchanged (same id and shape).
void divide(std::vector<Block>& blocks, const SetExpr& splitter, SolverSession& s,
            PartitionFamily& family, std::vector<SplitEvent>* trace,
            const SplitEvent& proto);

/// H^D: for every clause, divides Φ_i by the F′-splitters of Ψ_ik.
void stepHD(const ClausePbes& c, PartitionFamily& P, SolverSession& s,
            std::vector<SplitEvent>* trace);

/// H^B: for every clause and call, divides Ψ_ik by the G′-splitters of
/// the called equations' Φ blocks.
void stepHB(const ClausePbes& c, PartitionFamily& P, SolverSession& s,
            std::vector<SplitEvent>* trace);

struct SaturationResult {
  bool saturated = false;
  PartitionFamily family;
  int iterations = 0;
  std::vector<SplitEvent> trace;
};

using IterationHook = std::function<void(const PartitionFamily&, int iteration)>;

/// Applies H = H^B ∘ H^D from the trivial family until the nonempty block
/// count is stable (⊗ only refines, so equal counts mean a fixed point)
/// or maxIter is hit.
SaturationResult saturate(const ClausePbes& c, int maxIter, SolverSession& s,
                          bool keepTrace = false, const IterationHook& hook = {});

/// The unique OrBlock of Φ_i containing the signature's values.
const Block& blockOf(const PartitionFamily& P, const ClausePbes& c, const Signature& sig,
                     SolverSession& s);

}  // namespace epbes
