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
#include <vector>

#include "epbes/ast.hpp"

namespace epbes {

class UniversalNotAllowed : public Error {
 public:
  using Error::Error;
};

class DnfExplosion : public Error {
 public:
  using Error::Error;
};

/// One disjunct ∃e⃗. φ ∧ X_a1(f⃗1) ∧ … ∧ X_ap(f⃗p) of a clause-form equation.
struct Clause {
  struct CallRef {
    int target = 0;  // equation index
    std::vector<DataExprPtr> args;
  };

  std::vector<Param> exists;  // e⃗, pruned to variables that occur
  DataExprPtr constraint;     // φ, quantifier-free, no calls
  std::vector<CallRef> calls;
};

struct ClauseEquation {
  bool isMu = false;
  std::string name;
  std::vector<Param> params;
  std::vector<Clause> clauses;
};

/// A PBES where every right-hand side is a disjunction of clauses.
struct ClausePbes {
  std::vector<ClauseEquation> equations;

  int indexOf(const std::string& name) const;
  std::vector<bool> muSequence() const;
  int rankOf(int eq) const;
  /// Minimum even u with u >= rank(X_i) for all i.
  int priorityBase() const;
};

/// Renames bound variables apart: binder names become pairwise distinct
/// and distinct from the free variables of f.
FormulaPtr renameApart(const FormulaPtr& f, const std::set<std::string>& reserved);

struct LiftedFormula {
  std::vector<Param> binders;
  FormulaPtr matrix;  // quantifier-free
};

/// Hoists all existential binders to one outer prefix. Throws
/// UniversalNotAllowed on a forall. Binders must be renamed apart first.
LiftedFormula liftExistentials(const FormulaPtr& f);

struct ClauseCore {
  std::vector<DataExprPtr> dataLits;
  std::vector<std::pair<std::string, std::vector<DataExprPtr>>> calls;
};

/// Disjunctive normal form of a quantifier-free matrix; each disjunct is
/// split into data literals and predicate calls, in left-to-right order.
std::vector<ClauseCore> dnfSplit(const FormulaPtr& matrix, size_t maxClauses = 10000);

/// Full normalization: rename apart, lift existentials, DNF, prune each
/// clause's binder list to variables that actually occur.
ClausePbes toClauseForm(const Pbes& p, size_t maxClauses = 10000);

/// Rebuilds an ordinary PBES with the same meaning (clauses as nested
/// formulas); used for round-trips and cross-checks.
Pbes clausePbesToPbes(const ClausePbes& c);

/// Surface-grammar text, one clause per line.
std::string printClausePbes(const ClausePbes& c);

bool structurallyEqual(const ClausePbes& a, const ClausePbes& b);

}  // namespace epbes
