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
#include <span>
#include <string>
#include <vector>

#include "epbes/ast.hpp"
#include "epbes/smt.hpp"

namespace epbes {

/// A subset of 𝔻* (primary binders only) or 𝔻*×𝔻* (primary and
/// secondary) as a lambda-bound Boolean expression.
struct SetExpr {
  std::vector<Param> primary;
  std::vector<Param> secondary;
  DataExprPtr body;

  bool sameSignature(const SetExpr& o) const {
    return primary == o.primary && secondary == o.secondary;
  }
  std::vector<Param> allBinders() const;
  std::string str() const;  // { d:N, e:N | body }
};

SetExpr fullSet(std::vector<Param> primary, std::vector<Param> secondary = {});

/// Intersection; binder signatures must match.
SetExpr meet(const SetExpr& a, const SetExpr& b);

/// Complement within the full domain of the signature.
SetExpr complement(const SetExpr& a);

/// Projects a pair set onto its primary tuple: body gains ∃e⃗.
SetExpr existsProject(const SetExpr& a);

/// Inverse image: replaces the target's primary binders by `args` (terms
/// over the new binder tuple). Capture-avoiding.
SetExpr substituteInto(const SetExpr& target, const std::vector<Param>& newPrimary,
                       const std::vector<Param>& newSecondary,
                       const std::vector<DataExprPtr>& args);

/// Emptiness via the solver; Unknown raises SolverUnknown.
bool isEmpty(const SetExpr& a, SolverSession& s);

/// Membership of a concrete point (primary followed by secondary values).
bool contains(const SetExpr& a, std::span<const Value> point, SolverSession& s);

/// A model of the secondary binders for a fixed primary point within
/// `a ∧ extra` (extra may be null); nullopt when none exists.
std::optional<std::vector<Value>> secondaryWitness(const SetExpr& a,
                                                   std::span<const Value> primaryPoint,
                                                   const DataExprPtr& extra,
                                                   SolverSession& s);

}  // namespace epbes
