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

#include "epbes/enf.hpp"

#include <algorithm>
#include <optional>

#include "epbes/printer.hpp"

namespace epbes {

int ClausePbes::indexOf(const std::string& name) const {
  for (size_t i = 0; i < equations.size(); ++i)
    if (equations[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<bool> ClausePbes::muSequence() const {
  std::vector<bool> seq;
  seq.reserve(equations.size());
  for (const auto& e : equations) seq.push_back(e.isMu);
  return seq;
}

int ClausePbes::rankOf(int eq) const { return rankOfIndex(muSequence(), eq); }

int ClausePbes::priorityBase() const {
  int mx = 0;
  for (size_t i = 0; i < equations.size(); ++i)
    mx = std::max(mx, rankOf(static_cast<int>(i)));
  return mx % 2 == 0 ? mx : mx + 1;
}

namespace {

std::string freshName(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

FormulaPtr substituteVars(const FormulaPtr& f,
                          const std::map<std::string, DataExprPtr>& sub) {
  if (sub.empty()) return f;
  switch (f->op) {
    case FormulaOp::Data:
      return pf::leaf(substituteData(f->data, sub));
    case FormulaOp::Call: {
      std::vector<DataExprPtr> args;
      args.reserve(f->callArgs.size());
      for (const auto& a : f->callArgs) args.push_back(substituteData(a, sub));
      return pf::call(f->name, std::move(args));
    }
    case FormulaOp::ExistsF:
    case FormulaOp::ForallF: {
      auto inner = sub;
      inner.erase(f->name);
      FormulaPtr body = substituteVars(f->kids[0], inner);
      return f->op == FormulaOp::ExistsF ? pf::existsF(f->name, f->varSort, body)
                                         : pf::forallF(f->name, f->varSort, body);
    }
    case FormulaOp::AndF:
      return pf::andF(substituteVars(f->kids[0], sub), substituteVars(f->kids[1], sub));
    case FormulaOp::OrF:
      return pf::orF(substituteVars(f->kids[0], sub), substituteVars(f->kids[1], sub));
  }
  return f;
}

FormulaPtr renameRec(const FormulaPtr& f, std::set<std::string>& used,
                     std::map<std::string, DataExprPtr>& ren) {
  switch (f->op) {
    case FormulaOp::Data:
      return pf::leaf(substituteData(f->data, ren));
    case FormulaOp::Call: {
      std::vector<DataExprPtr> args;
      args.reserve(f->callArgs.size());
      for (const auto& a : f->callArgs) args.push_back(substituteData(a, ren));
      return pf::call(f->name, std::move(args));
    }
    case FormulaOp::AndF:
      return pf::andF(renameRec(f->kids[0], used, ren), renameRec(f->kids[1], used, ren));
    case FormulaOp::OrF:
      return pf::orF(renameRec(f->kids[0], used, ren), renameRec(f->kids[1], used, ren));
    case FormulaOp::ExistsF:
    case FormulaOp::ForallF: {
      std::string name = freshName(f->name, used);
      used.insert(name);
      auto saved = ren.find(f->name);
      std::optional<DataExprPtr> old;
      if (saved != ren.end()) old = saved->second;
      if (name != f->name)
        ren[f->name] = dx::var(name, f->varSort);
      else
        ren.erase(f->name);
      FormulaPtr body = renameRec(f->kids[0], used, ren);
      if (old)
        ren[f->name] = *old;
      else
        ren.erase(f->name);
      return f->op == FormulaOp::ExistsF ? pf::existsF(name, f->varSort, body)
                                         : pf::forallF(name, f->varSort, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr renameApart(const FormulaPtr& f, const std::set<std::string>& reserved) {
  std::set<std::string> used = reserved;
  collectFreeVars(f, used);
  std::map<std::string, DataExprPtr> ren;
  return renameRec(f, used, ren);
}

LiftedFormula liftExistentials(const FormulaPtr& f) {
  switch (f->op) {
    case FormulaOp::Data:
    case FormulaOp::Call:
      return {{}, f};
    case FormulaOp::ForallF:
      throw UniversalNotAllowed("universal quantifier is not allowed in an existential PBES");
    case FormulaOp::ExistsF: {
      LiftedFormula inner = liftExistentials(f->kids[0]);
      std::vector<Param> binders{{f->name, f->varSort}};
      binders.insert(binders.end(), inner.binders.begin(), inner.binders.end());
      return {std::move(binders), inner.matrix};
    }
    case FormulaOp::AndF:
    case FormulaOp::OrF: {
      LiftedFormula a = liftExistentials(f->kids[0]);
      LiftedFormula b = liftExistentials(f->kids[1]);
      std::vector<Param> binders = std::move(a.binders);
      binders.insert(binders.end(), b.binders.begin(), b.binders.end());
      FormulaPtr matrix = f->op == FormulaOp::AndF ? pf::andF(a.matrix, b.matrix)
                                                   : pf::orF(a.matrix, b.matrix);
      return {std::move(binders), matrix};
    }
  }
  return {{}, f};
}

std::vector<ClauseCore> dnfSplit(const FormulaPtr& matrix, size_t maxClauses) {
  switch (matrix->op) {
    case FormulaOp::Data:
      return {ClauseCore{{matrix->data}, {}}};
    case FormulaOp::Call:
      return {ClauseCore{{}, {{matrix->name, matrix->callArgs}}}};
    case FormulaOp::OrF: {
      auto l = dnfSplit(matrix->kids[0], maxClauses);
      auto r = dnfSplit(matrix->kids[1], maxClauses);
      if (l.size() + r.size() > maxClauses)
        throw DnfExplosion("DNF exceeds " + std::to_string(maxClauses) + " clauses");
      l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      return l;
    }
    case FormulaOp::AndF: {
      auto l = dnfSplit(matrix->kids[0], maxClauses);
      auto r = dnfSplit(matrix->kids[1], maxClauses);
      if (l.size() * r.size() > maxClauses)
        throw DnfExplosion("DNF exceeds " + std::to_string(maxClauses) + " clauses");
      std::vector<ClauseCore> out;
      out.reserve(l.size() * r.size());
      for (const auto& a : l)
        for (const auto& b : r) {
          ClauseCore c = a;
          c.dataLits.insert(c.dataLits.end(), b.dataLits.begin(), b.dataLits.end());
          c.calls.insert(c.calls.end(), b.calls.begin(), b.calls.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    default:
      throw Error("dnfSplit expects a quantifier-free matrix");
  }
}

ClausePbes toClauseForm(const Pbes& p, size_t maxClauses) {
  ClausePbes out;
  std::set<std::string> reserved;
  for (const auto& eq : p.equations) reserved.insert(eq.name);
  for (const auto& eq : p.equations) {
    std::set<std::string> used = reserved;
    for (const auto& prm : eq.params) used.insert(prm.name);
    FormulaPtr body = renameApart(eq.body, used);
    if (containsForall(body))
      throw UniversalNotAllowed("universal quantifier in equation '" + eq.name + "'");
    LiftedFormula lifted = liftExistentials(body);
    std::vector<ClauseCore> cores = dnfSplit(lifted.matrix, maxClauses);

    ClauseEquation ce;
    ce.isMu = eq.isMu;
    ce.name = eq.name;
    ce.params = eq.params;
    for (const auto& core : cores) {
      Clause cl;
      cl.constraint = dx::andE(core.dataLits);
      for (const auto& [name, args] : core.calls) {
        int idx = p.indexOf(name);
        if (idx < 0) throw Error("unbound predicate variable '" + name + "'");
        cl.calls.push_back({idx, args});
      }
      std::set<std::string> occ;
      collectFreeVars(cl.constraint, occ);
      for (const auto& c : cl.calls)
        for (const auto& a : c.args) collectFreeVars(a, occ);
      for (const auto& b : lifted.binders)
        if (occ.count(b.name)) cl.exists.push_back(b);
      ce.clauses.push_back(std::move(cl));
    }
    out.equations.push_back(std::move(ce));
  }
  return out;
}

namespace {

FormulaPtr clauseToFormula(const ClausePbes& c, const Clause& cl) {
  FormulaPtr f = pf::leaf(cl.constraint);
  for (const auto& call : cl.calls)
    f = pf::andF(f, pf::call(c.equations[call.target].name, call.args));
  for (auto it = cl.exists.rbegin(); it != cl.exists.rend(); ++it)
    f = pf::existsF(it->name, it->sort, f);
  return f;
}

}  // namespace

Pbes clausePbesToPbes(const ClausePbes& c) {
  Pbes p;
  for (const auto& ce : c.equations) {
    Equation eq;
    eq.isMu = ce.isMu;
    eq.name = ce.name;
    eq.params = ce.params;
    FormulaPtr body;
    for (const auto& cl : ce.clauses) {
      FormulaPtr f = clauseToFormula(c, cl);
      body = body ? pf::orF(body, f) : f;
    }
    if (!body) body = pf::leaf(dx::boolc(false));
    eq.body = body;
    p.equations.push_back(std::move(eq));
  }
  return p;
}

std::string printClausePbes(const ClausePbes& c) {
  std::string out;
  for (const auto& ce : c.equations) {
    out += ce.isMu ? "mu " : "nu ";
    out += ce.name + "(";
    for (size_t i = 0; i < ce.params.size(); ++i) {
      if (i) out += ", ";
      out += ce.params[i].name + ":" + sortName(ce.params[i].sort);
    }
    out += ") =";
    if (ce.clauses.empty()) out += " false";
    for (size_t k = 0; k < ce.clauses.size(); ++k) {
      const Clause& cl = ce.clauses[k];
      out += "\n  ";
      out += k == 0 ? "   " : "|| ";
      std::string line;
      for (const auto& b : cl.exists)
        line += "exists " + b.name + ":" + sortName(b.sort) + " . ";
      line += printDataExpr(cl.constraint);
      for (const auto& call : cl.calls) {
        line += " && " + c.equations[call.target].name + "(";
        for (size_t j = 0; j < call.args.size(); ++j) {
          if (j) line += ", ";
          line += printDataExpr(call.args[j]);
        }
        line += ")";
      }
      if (ce.clauses.size() > 1) line = "(" + line + ")";
      out += line;
    }
    out += ";\n";
  }
  return out;
}

bool structurallyEqual(const ClausePbes& a, const ClausePbes& b) {
  if (a.equations.size() != b.equations.size()) return false;
  for (size_t i = 0; i < a.equations.size(); ++i) {
    const auto &x = a.equations[i], &y = b.equations[i];
    if (x.isMu != y.isMu || x.name != y.name || x.params != y.params ||
        x.clauses.size() != y.clauses.size())
      return false;
    for (size_t k = 0; k < x.clauses.size(); ++k) {
      const auto &cx = x.clauses[k], &cy = y.clauses[k];
      if (cx.exists != cy.exists || cx.calls.size() != cy.calls.size()) return false;
      if (!structurallyEqual(cx.constraint, cy.constraint)) return false;
      for (size_t j = 0; j < cx.calls.size(); ++j) {
        if (cx.calls[j].target != cy.calls[j].target ||
            cx.calls[j].args.size() != cy.calls[j].args.size())
          return false;
        for (size_t m = 0; m < cx.calls[j].args.size(); ++m)
          if (!structurallyEqual(cx.calls[j].args[m], cy.calls[j].args[m])) return false;
      }
    }
  }
  return true;
}

}  // namespace epbes
