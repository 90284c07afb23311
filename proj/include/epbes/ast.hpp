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
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace epbes {

enum class Sort { Nat, Bool };

const char* sortName(Sort s);

/// Typed parameter or binder: name with its sort.
struct Param {
  std::string name;
  Sort sort = Sort::Nat;

  bool operator==(const Param&) const = default;
};

/// Ground value of either sort.
struct Value {
  Sort sort = Sort::Nat;
  std::uint64_t nat = 0;
  bool b = false;

  static Value ofNat(std::uint64_t v) { return Value{Sort::Nat, v, false}; }
  static Value ofBool(bool v) { return Value{Sort::Bool, 0, v}; }

  bool operator==(const Value&) const = default;
  bool operator<(const Value& o) const {
    if (sort != o.sort) return sort < o.sort;
    return sort == Sort::Nat ? nat < o.nat : b < o.b;
  }
  std::string str() const;
};

enum class DataOp {
  NatConst,
  BoolConst,
  Var,
  Add,
  Monus,     // natural subtraction, truncated at 0
  MulConst,  // k * e, k a literal
  ModConst,  // e mod k, k a literal >= 1
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Not,
  And,
  Or,
  Exists,  // only in set-expression bodies, never produced by the parser
};

struct DataExpr;
using DataExprPtr = std::shared_ptr<const DataExpr>;

/// Data expression tree. Boolean-sorted trees double as constraint
/// formulas; Exists nodes appear only in symbolic set bodies.
struct DataExpr {
  DataOp op;
  std::uint64_t k = 0;       // NatConst value, MulConst factor, ModConst modulus
  bool bval = false;         // BoolConst
  std::string name;          // Var / Exists binder
  Sort varSort = Sort::Nat;  // Var / Exists
  std::vector<DataExprPtr> args;
};

// Constructors.
namespace dx {
DataExprPtr natc(std::uint64_t v);
DataExprPtr boolc(bool v);
DataExprPtr var(std::string name, Sort sort);
DataExprPtr add(DataExprPtr a, DataExprPtr b);
DataExprPtr monus(DataExprPtr a, DataExprPtr b);
DataExprPtr mulc(std::uint64_t k, DataExprPtr e);
DataExprPtr modc(DataExprPtr e, std::uint64_t k);
DataExprPtr cmp(DataOp op, DataExprPtr a, DataExprPtr b);
DataExprPtr notE(DataExprPtr a);
DataExprPtr andE(std::vector<DataExprPtr> kids);  // empty -> true
DataExprPtr orE(std::vector<DataExprPtr> kids);   // empty -> false
DataExprPtr exists(std::string name, Sort sort, DataExprPtr body);
}  // namespace dx

bool structurallyEqual(const DataExpr& a, const DataExpr& b);
bool structurallyEqual(const DataExprPtr& a, const DataExprPtr& b);

/// Free variables of e, respecting Exists binders.
void collectFreeVars(const DataExprPtr& e, std::set<std::string>& out);

/// Capture-avoiding simultaneous substitution.
DataExprPtr substituteData(const DataExprPtr& e,
                           const std::map<std::string, DataExprPtr>& sub);

/// Constant folding and and/or flattening. Keeps the denotation; used on
/// symbolic set bodies, never on parsed user syntax.
DataExprPtr simplifyData(const DataExprPtr& e);

/// Result sort of a well-sorted expression; throws SortError otherwise.
Sort sortOfData(const DataExprPtr& e, const std::map<std::string, Sort>& vars);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

enum class FormulaOp { Data, AndF, OrF, ExistsF, ForallF, Call };

struct PredicateFormula;
using FormulaPtr = std::shared_ptr<const PredicateFormula>;

/// Predicate formula: data leaves, conjunction/disjunction, quantifiers,
/// and predicate-variable calls. Negation never occurs above data leaves.
struct PredicateFormula {
  FormulaOp op;
  DataExprPtr data;                    // Data
  std::string name;                    // ExistsF/ForallF binder, Call target
  Sort varSort = Sort::Nat;            // ExistsF/ForallF
  std::vector<DataExprPtr> callArgs;   // Call
  std::vector<FormulaPtr> kids;        // AndF/OrF (2), ExistsF/ForallF (1)
};

namespace pf {
FormulaPtr leaf(DataExprPtr d);
FormulaPtr andF(FormulaPtr a, FormulaPtr b);
FormulaPtr orF(FormulaPtr a, FormulaPtr b);
FormulaPtr existsF(std::string name, Sort sort, FormulaPtr body);
FormulaPtr forallF(std::string name, Sort sort, FormulaPtr body);
FormulaPtr call(std::string name, std::vector<DataExprPtr> args);
}  // namespace pf

bool structurallyEqual(const FormulaPtr& a, const FormulaPtr& b);
void collectFreeVars(const FormulaPtr& f, std::set<std::string>& out);
bool containsForall(const FormulaPtr& f);

struct Equation {
  bool isMu = false;  // false: nu
  std::string name;
  std::vector<Param> params;
  FormulaPtr body;
};

struct Pbes {
  std::vector<Equation> equations;

  /// Index of the equation binding `name`, or -1.
  int indexOf(const std::string& name) const;
};

bool structurallyEqual(const Pbes& a, const Pbes& b);

/// (X, v⃗): the atoms the membership problem asks about.
struct Signature {
  std::string var;
  std::vector<Value> args;

  bool operator==(const Signature&) const = default;
  bool operator<(const Signature& o) const {
    if (var != o.var) return var < o.var;
    return args < o.args;
  }
  std::string str() const;
};

/// Alternation count of the binder prefix ν σ1 … σi for X = X_i.
/// Even iff σ_i = ν, odd iff σ_i = μ.
int rank(const Pbes& p, const std::string& name);
int rankOfIndex(const std::vector<bool>& isMuSeq, int i);

/// Well-formedness: distinct equation names, distinct parameters, closed,
/// well-sorted, call arities match. Throws SortError/Error on violation.
void checkPbes(const Pbes& p);

}  // namespace epbes
