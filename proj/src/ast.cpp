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

#include "epbes/ast.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace epbes {

const char* sortName(Sort s) { return s == Sort::Nat ? "N" : "B"; }

std::string Value::str() const {
  if (sort == Sort::Nat) return std::to_string(nat);
  return b ? "true" : "false";
}

namespace dx {

static DataExprPtr mk(DataExpr e) {
  return std::make_shared<const DataExpr>(std::move(e));
}

DataExprPtr natc(std::uint64_t v) {
  DataExpr e;
  e.op = DataOp::NatConst;
  e.k = v;
  return mk(std::move(e));
}

DataExprPtr boolc(bool v) {
  DataExpr e;
  e.op = DataOp::BoolConst;
  e.bval = v;
  return mk(std::move(e));
}

DataExprPtr var(std::string name, Sort sort) {
  DataExpr e;
  e.op = DataOp::Var;
  e.name = std::move(name);
  e.varSort = sort;
  return mk(std::move(e));
}

static DataExprPtr binary(DataOp op, DataExprPtr a, DataExprPtr b) {
  DataExpr e;
  e.op = op;
  e.args = {std::move(a), std::move(b)};
  return mk(std::move(e));
}

DataExprPtr add(DataExprPtr a, DataExprPtr b) {
  return binary(DataOp::Add, std::move(a), std::move(b));
}

DataExprPtr monus(DataExprPtr a, DataExprPtr b) {
  return binary(DataOp::Monus, std::move(a), std::move(b));
}

DataExprPtr mulc(std::uint64_t k, DataExprPtr e) {
  DataExpr r;
  r.op = DataOp::MulConst;
  r.k = k;
  r.args = {std::move(e)};
  return mk(std::move(r));
}

DataExprPtr modc(DataExprPtr e, std::uint64_t k) {
  DataExpr r;
  r.op = DataOp::ModConst;
  r.k = k;
  r.args = {std::move(e)};
  return mk(std::move(r));
}

DataExprPtr cmp(DataOp op, DataExprPtr a, DataExprPtr b) {
  return binary(op, std::move(a), std::move(b));
}

DataExprPtr notE(DataExprPtr a) {
  DataExpr e;
  e.op = DataOp::Not;
  e.args = {std::move(a)};
  return mk(std::move(e));
}

DataExprPtr andE(std::vector<DataExprPtr> kids) {
  if (kids.empty()) return boolc(true);
  if (kids.size() == 1) return kids[0];
  DataExpr e;
  e.op = DataOp::And;
  e.args = std::move(kids);
  return mk(std::move(e));
}

DataExprPtr orE(std::vector<DataExprPtr> kids) {
  if (kids.empty()) return boolc(false);
  if (kids.size() == 1) return kids[0];
  DataExpr e;
  e.op = DataOp::Or;
  e.args = std::move(kids);
  return mk(std::move(e));
}

DataExprPtr exists(std::string name, Sort sort, DataExprPtr body) {
  DataExpr e;
  e.op = DataOp::Exists;
  e.name = std::move(name);
  e.varSort = sort;
  e.args = {std::move(body)};
  return mk(std::move(e));
}

}  // namespace dx

bool structurallyEqual(const DataExpr& a, const DataExpr& b) {
  if (a.op != b.op || a.k != b.k || a.bval != b.bval || a.name != b.name ||
      a.varSort != b.varSort || a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!structurallyEqual(*a.args[i], *b.args[i])) return false;
  return true;
}

bool structurallyEqual(const DataExprPtr& a, const DataExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return structurallyEqual(*a, *b);
}

void collectFreeVars(const DataExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == DataOp::Var) {
    out.insert(e->name);
    return;
  }
  if (e->op == DataOp::Exists) {
    std::set<std::string> inner;
    collectFreeVars(e->args[0], inner);
    inner.erase(e->name);
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (const auto& a : e->args) collectFreeVars(a, out);
}

namespace {

std::string freshName(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace

DataExprPtr substituteData(const DataExprPtr& e,
                           const std::map<std::string, DataExprPtr>& sub) {
  if (sub.empty()) return e;
  switch (e->op) {
    case DataOp::NatConst:
    case DataOp::BoolConst:
      return e;
    case DataOp::Var: {
      auto it = sub.find(e->name);
      return it == sub.end() ? e : it->second;
    }
    case DataOp::Exists: {
      std::map<std::string, DataExprPtr> inner = sub;
      inner.erase(e->name);
      // Avoid capturing free variables of the replacement terms.
      std::set<std::string> avoid;
      for (const auto& [k, v] : inner) {
        (void)k;
        collectFreeVars(v, avoid);
      }
      std::string binder = e->name;
      DataExprPtr body = e->args[0];
      if (avoid.count(binder)) {
        std::set<std::string> used = avoid;
        collectFreeVars(body, used);
        std::string fresh = freshName(binder, used);
        std::map<std::string, DataExprPtr> ren{{binder, dx::var(fresh, e->varSort)}};
        body = substituteData(body, ren);
        binder = fresh;
      }
      if (inner.empty()) {
        if (binder == e->name && body == e->args[0]) return e;
        return dx::exists(binder, e->varSort, body);
      }
      return dx::exists(binder, e->varSort, substituteData(body, inner));
    }
    default: {
      DataExpr r = *e;
      bool changed = false;
      for (auto& a : r.args) {
        DataExprPtr n = substituteData(a, sub);
        if (n != a) changed = true;
        a = n;
      }
      if (!changed) return e;
      return std::make_shared<const DataExpr>(std::move(r));
    }
  }
}

namespace {

bool isBoolConst(const DataExprPtr& e, bool v) {
  return e->op == DataOp::BoolConst && e->bval == v;
}

bool isNatConst(const DataExprPtr& e) { return e->op == DataOp::NatConst; }

}  // namespace

DataExprPtr simplifyData(const DataExprPtr& e) {
  switch (e->op) {
    case DataOp::NatConst:
    case DataOp::BoolConst:
    case DataOp::Var:
      return e;
    case DataOp::Add: {
      auto a = simplifyData(e->args[0]), b = simplifyData(e->args[1]);
      if (isNatConst(a) && isNatConst(b)) return dx::natc(a->k + b->k);
      if (isNatConst(a) && a->k == 0) return b;
      if (isNatConst(b) && b->k == 0) return a;
      return dx::add(a, b);
    }
    case DataOp::Monus: {
      auto a = simplifyData(e->args[0]), b = simplifyData(e->args[1]);
      if (isNatConst(a) && isNatConst(b)) return dx::natc(a->k >= b->k ? a->k - b->k : 0);
      if (isNatConst(b) && b->k == 0) return a;
      return dx::monus(a, b);
    }
    case DataOp::MulConst: {
      auto a = simplifyData(e->args[0]);
      if (e->k == 0) return dx::natc(0);
      if (e->k == 1) return a;
      if (isNatConst(a)) return dx::natc(e->k * a->k);
      return dx::mulc(e->k, a);
    }
    case DataOp::ModConst: {
      auto a = simplifyData(e->args[0]);
      if (e->k == 1) return dx::natc(0);
      if (isNatConst(a)) return dx::natc(a->k % e->k);
      return dx::modc(a, e->k);
    }
    case DataOp::Eq:
    case DataOp::Ne:
    case DataOp::Lt:
    case DataOp::Le:
    case DataOp::Gt:
    case DataOp::Ge: {
      auto a = simplifyData(e->args[0]), b = simplifyData(e->args[1]);
      if (isNatConst(a) && isNatConst(b)) {
        std::uint64_t x = a->k, y = b->k;
        bool v = false;
        switch (e->op) {
          case DataOp::Eq: v = x == y; break;
          case DataOp::Ne: v = x != y; break;
          case DataOp::Lt: v = x < y; break;
          case DataOp::Le: v = x <= y; break;
          case DataOp::Gt: v = x > y; break;
          default: v = x >= y; break;
        }
        return dx::boolc(v);
      }
      if (a->op == DataOp::BoolConst && b->op == DataOp::BoolConst &&
          (e->op == DataOp::Eq || e->op == DataOp::Ne)) {
        bool v = (a->bval == b->bval) == (e->op == DataOp::Eq);
        return dx::boolc(v);
      }
      return dx::cmp(e->op, a, b);
    }
    case DataOp::Not: {
      auto a = simplifyData(e->args[0]);
      if (a->op == DataOp::BoolConst) return dx::boolc(!a->bval);
      if (a->op == DataOp::Not) return a->args[0];
      return dx::notE(a);
    }
    case DataOp::And:
    case DataOp::Or: {
      bool isAnd = e->op == DataOp::And;
      std::vector<DataExprPtr> kids;
      bool shortCircuit = false;
      std::function<void(const DataExprPtr&)> flatten = [&](const DataExprPtr& x) {
        DataExprPtr s = simplifyData(x);
        if (s->op == e->op) {
          for (const auto& k : s->args) flatten(k);
          return;
        }
        if (isBoolConst(s, isAnd)) return;            // neutral element
        if (isBoolConst(s, !isAnd)) shortCircuit = true;  // absorbing element
        kids.push_back(s);
      };
      for (const auto& k : e->args) flatten(k);
      if (shortCircuit) return dx::boolc(!isAnd);
      // Drop structural duplicates, keeping first occurrences.
      std::vector<DataExprPtr> uniq;
      for (const auto& k : kids) {
        bool dup = false;
        for (const auto& u : uniq)
          if (structurallyEqual(u, k)) {
            dup = true;
            break;
          }
        if (!dup) uniq.push_back(k);
      }
      return isAnd ? dx::andE(std::move(uniq)) : dx::orE(std::move(uniq));
    }
    case DataOp::Exists: {
      auto body = simplifyData(e->args[0]);
      if (body->op == DataOp::BoolConst) return body;  // domains are nonempty
      std::set<std::string> fv;
      collectFreeVars(body, fv);
      if (!fv.count(e->name)) return body;
      return dx::exists(e->name, e->varSort, body);
    }
  }
  return e;
}

Sort sortOfData(const DataExprPtr& e, const std::map<std::string, Sort>& vars) {
  auto need = [&](const DataExprPtr& x, Sort s, const char* what) {
    if (sortOfData(x, vars) != s)
      throw SortError(std::string("expected ") + sortName(s) + " operand in " + what);
  };
  switch (e->op) {
    case DataOp::NatConst:
      return Sort::Nat;
    case DataOp::BoolConst:
      return Sort::Bool;
    case DataOp::Var: {
      auto it = vars.find(e->name);
      if (it == vars.end()) throw SortError("unbound data variable '" + e->name + "'");
      return it->second;
    }
    case DataOp::Add:
    case DataOp::Monus:
      need(e->args[0], Sort::Nat, "arithmetic");
      need(e->args[1], Sort::Nat, "arithmetic");
      return Sort::Nat;
    case DataOp::MulConst:
    case DataOp::ModConst:
      need(e->args[0], Sort::Nat, "arithmetic");
      return Sort::Nat;
    case DataOp::Eq:
    case DataOp::Ne: {
      Sort a = sortOfData(e->args[0], vars);
      Sort b = sortOfData(e->args[1], vars);
      if (a != b) throw SortError("comparison of mismatched sorts");
      return Sort::Bool;
    }
    case DataOp::Lt:
    case DataOp::Le:
    case DataOp::Gt:
    case DataOp::Ge:
      need(e->args[0], Sort::Nat, "comparison");
      need(e->args[1], Sort::Nat, "comparison");
      return Sort::Bool;
    case DataOp::Not:
      need(e->args[0], Sort::Bool, "negation");
      return Sort::Bool;
    case DataOp::And:
    case DataOp::Or:
      for (const auto& a : e->args) need(a, Sort::Bool, "connective");
      return Sort::Bool;
    case DataOp::Exists: {
      auto inner = vars;
      inner[e->name] = e->varSort;
      if (sortOfData(e->args[0], inner) != Sort::Bool)
        throw SortError("quantifier body must be Boolean");
      return Sort::Bool;
    }
  }
  throw SortError("malformed expression");
}

namespace pf {

static FormulaPtr mk(PredicateFormula f) {
  return std::make_shared<const PredicateFormula>(std::move(f));
}

FormulaPtr leaf(DataExprPtr d) {
  PredicateFormula f;
  f.op = FormulaOp::Data;
  f.data = std::move(d);
  return mk(std::move(f));
}

FormulaPtr andF(FormulaPtr a, FormulaPtr b) {
  PredicateFormula f;
  f.op = FormulaOp::AndF;
  f.kids = {std::move(a), std::move(b)};
  return mk(std::move(f));
}

FormulaPtr orF(FormulaPtr a, FormulaPtr b) {
  PredicateFormula f;
  f.op = FormulaOp::OrF;
  f.kids = {std::move(a), std::move(b)};
  return mk(std::move(f));
}

FormulaPtr existsF(std::string name, Sort sort, FormulaPtr body) {
  PredicateFormula f;
  f.op = FormulaOp::ExistsF;
  f.name = std::move(name);
  f.varSort = sort;
  f.kids = {std::move(body)};
  return mk(std::move(f));
}

FormulaPtr forallF(std::string name, Sort sort, FormulaPtr body) {
  PredicateFormula f;
  f.op = FormulaOp::ForallF;
  f.name = std::move(name);
  f.varSort = sort;
  f.kids = {std::move(body)};
  return mk(std::move(f));
}

FormulaPtr call(std::string name, std::vector<DataExprPtr> args) {
  PredicateFormula f;
  f.op = FormulaOp::Call;
  f.name = std::move(name);
  f.callArgs = std::move(args);
  return mk(std::move(f));
}

}  // namespace pf

bool structurallyEqual(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name || a->varSort != b->varSort ||
      a->callArgs.size() != b->callArgs.size() || a->kids.size() != b->kids.size())
    return false;
  if (a->op == FormulaOp::Data && !structurallyEqual(a->data, b->data)) return false;
  for (size_t i = 0; i < a->callArgs.size(); ++i)
    if (!structurallyEqual(a->callArgs[i], b->callArgs[i])) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!structurallyEqual(a->kids[i], b->kids[i])) return false;
  return true;
}

void collectFreeVars(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->op) {
    case FormulaOp::Data:
      collectFreeVars(f->data, out);
      return;
    case FormulaOp::Call:
      for (const auto& a : f->callArgs) collectFreeVars(a, out);
      return;
    case FormulaOp::ExistsF:
    case FormulaOp::ForallF: {
      std::set<std::string> inner;
      collectFreeVars(f->kids[0], inner);
      inner.erase(f->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : f->kids) collectFreeVars(k, out);
      return;
  }
}

bool containsForall(const FormulaPtr& f) {
  if (f->op == FormulaOp::ForallF) return true;
  for (const auto& k : f->kids)
    if (containsForall(k)) return true;
  return false;
}

int Pbes::indexOf(const std::string& name) const {
  for (size_t i = 0; i < equations.size(); ++i)
    if (equations[i].name == name) return static_cast<int>(i);
  return -1;
}

bool structurallyEqual(const Pbes& a, const Pbes& b) {
  if (a.equations.size() != b.equations.size()) return false;
  for (size_t i = 0; i < a.equations.size(); ++i) {
    const Equation &x = a.equations[i], &y = b.equations[i];
    if (x.isMu != y.isMu || x.name != y.name || x.params != y.params) return false;
    if (!structurallyEqual(x.body, y.body)) return false;
  }
  return true;
}

std::string Signature::str() const {
  std::string s = var + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i].str();
  }
  return s + ")";
}

int rankOfIndex(const std::vector<bool>& isMuSeq, int i) {
  int r = 0;
  bool curMu = false;  // leading ν
  for (int j = 0; j <= i; ++j) {
    if (isMuSeq[j] != curMu) {
      ++r;
      curMu = isMuSeq[j];
    }
  }
  return r;
}

int rank(const Pbes& p, const std::string& name) {
  int i = p.indexOf(name);
  if (i < 0) throw Error("unknown predicate variable '" + name + "'");
  std::vector<bool> seq;
  seq.reserve(p.equations.size());
  for (const auto& e : p.equations) seq.push_back(e.isMu);
  return rankOfIndex(seq, i);
}

namespace {

void checkFormula(const Pbes& p, const FormulaPtr& f,
                  std::map<std::string, Sort>& vars) {
  switch (f->op) {
    case FormulaOp::Data:
      if (sortOfData(f->data, vars) != Sort::Bool)
        throw SortError("data leaf must be Boolean");
      return;
    case FormulaOp::Call: {
      int i = p.indexOf(f->name);
      if (i < 0) throw Error("unbound predicate variable '" + f->name + "'");
      const auto& params = p.equations[i].params;
      if (params.size() != f->callArgs.size())
        throw Error("arity mismatch in call of '" + f->name + "': expected " +
                    std::to_string(params.size()) + " arguments, got " +
                    std::to_string(f->callArgs.size()));
      for (size_t j = 0; j < params.size(); ++j)
        if (sortOfData(f->callArgs[j], vars) != params[j].sort)
          throw SortError("argument " + std::to_string(j + 1) + " of '" + f->name +
                          "' has wrong sort");
      return;
    }
    case FormulaOp::ExistsF:
    case FormulaOp::ForallF: {
      auto saved = vars.find(f->name);
      std::optional<Sort> old;
      if (saved != vars.end()) old = saved->second;
      vars[f->name] = f->varSort;
      checkFormula(p, f->kids[0], vars);
      if (old)
        vars[f->name] = *old;
      else
        vars.erase(f->name);
      return;
    }
    default:
      for (const auto& k : f->kids) checkFormula(p, k, vars);
      return;
  }
}

}  // namespace

void checkPbes(const Pbes& p) {
  if (p.equations.empty()) throw Error("no equations");
  std::set<std::string> names;
  for (const auto& e : p.equations) {
    if (!names.insert(e.name).second)
      throw Error("duplicate equation name '" + e.name + "'");
    std::set<std::string> pn;
    for (const auto& prm : e.params)
      if (!pn.insert(prm.name).second)
        throw Error("duplicate parameter '" + prm.name + "' in equation '" + e.name + "'");
  }
  for (const auto& e : p.equations) {
    std::map<std::string, Sort> vars;
    for (const auto& prm : e.params) vars[prm.name] = prm.sort;
    checkFormula(p, e.body, vars);
    std::set<std::string> fv;
    collectFreeVars(e.body, fv);
    for (const auto& prm : e.params) fv.erase(prm.name);
    if (!fv.empty())
      throw Error("free data variable '" + *fv.begin() + "' in equation '" + e.name + "'");
  }
}

}  // namespace epbes
