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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace presburger {

using Int = long long;

class SolverLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Int checkedAdd(Int a, Int b);
Int checkedMul(Int a, Int b);
Int gcdInt(Int a, Int b);
Int lcmInt(Int a, Int b);
/// Mathematical floor division / nonnegative remainder.
Int floorDiv(Int a, Int b);
Int modNonNeg(Int a, Int b);

/// Linear term over integer variables: Σ coef[v]·v + c.
struct LinTerm {
  std::map<int, Int> coef;
  Int c = 0;

  static LinTerm constant(Int v);
  static LinTerm variable(int v);
  LinTerm plus(const LinTerm& o) const;
  LinTerm minus(const LinTerm& o) const;
  LinTerm negated() const;
  LinTerm scaled(Int k) const;
  LinTerm withConst(Int delta) const;
  /// Coefficient of v (0 if absent).
  Int coefOf(int v) const;
  LinTerm without(int v) const;
  /// Replace v by s; requires coefOf(v) recorded by caller.
  LinTerm substitute(int v, const LinTerm& s) const;
  bool isGround() const { return coef.empty(); }
  bool operator==(const LinTerm&) const = default;
};

enum class Kind { True, False, Lt, Eq, Dvd, Ndvd, And, Or, Not, Exists, Forall };

struct Node;
using NPtr = std::shared_ptr<const Node>;

/// Formula node. Atom meanings: Lt: t < 0; Eq: t = 0; Dvd: m | t.
struct Node {
  Kind kind;
  LinTerm t;
  Int m = 0;
  int var = -1;
  std::vector<NPtr> kids;
};

NPtr mkTrue();
NPtr mkFalse();
NPtr mkBool(bool v);
NPtr mkLt(LinTerm t);          // folds ground atoms
NPtr mkEq(LinTerm t);
NPtr mkDvd(Int m, LinTerm t);  // normalizes m > 0; m == 1 -> true
NPtr mkNdvd(Int m, LinTerm t);
NPtr mkAnd(std::vector<NPtr> kids);
NPtr mkOr(std::vector<NPtr> kids);
NPtr mkNot(NPtr a);
NPtr mkExists(int var, NPtr body);
NPtr mkForall(int var, NPtr body);

size_t nodeCount(const NPtr& f);
bool containsVar(const NPtr& f, int var);

/// Negation normal form; atoms only under And/Or (no Not nodes remain).
/// Quantifiers flip under negation.
NPtr nnf(const NPtr& f, bool negate);

/// Cooper's elimination of ∃var from a quantifier-free NNF body.
NPtr cooperEliminate(int var, const NPtr& body);

/// Eliminates every quantifier, innermost first.
NPtr eliminateAll(const NPtr& f);

bool evalGround(const NPtr& f);
NPtr substGroundVar(const NPtr& f, int var, Int value);

struct DecideResult {
  bool sat = false;
  std::map<int, Int> model;  // populated when sat and wantModel
};

/// Satisfiability over the integers of a closed-except-freeOrder formula;
/// model values are found by eliminating the free variables in reverse
/// order and scanning each one-variable slice.
DecideResult decide(const NPtr& f, const std::vector<int>& freeOrder, bool wantModel);

std::string toStringDebug(const NPtr& f);

}  // namespace presburger
