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

#include <string>

#include "epbes/explicit_game.hpp"
#include "epbes/proof_graph.hpp"

namespace epbes {

// DOT (Graphviz): ovals for ∨-blocks, rectangles for ∧-blocks, labels
// carrying the block formulas and priorities.
std::string gameToDot(const SolvedPbes& solved);
std::string explicitToDot(const ExplicitGame& g, const ClausePbes& c);
std::string proofGraphToDot(const ConcreteProofGraph& pg);
std::string strategyGraphToDot(const ReducedStrategyGraph& rsg, const SolvedPbes& solved);

// JSON (stable field order; byte-identical across runs for identical
// inputs). Shapes documented in schemas/.
std::string gameToJson(const SolvedPbes& solved);
std::string proofGraphToJson(const ConcreteProofGraph& pg);
std::string traceToJson(const std::vector<SplitEvent>& trace, int iterations,
                        bool saturated);
std::string partitionToJson(const PartitionFamily& P, const ClausePbes& c);

/// Reads back the proofGraphToJson format.
ConcreteProofGraph proofGraphFromJson(const std::string& text);

}  // namespace epbes
