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

#include "epbes/set_expr.hpp"

#include "epbes/printer.hpp"

namespace epbes {

std::vector<Param> SetExpr::allBinders() const {
  std::vector<Param> all = primary;
  all.insert(all.end(), secondary.begin(), secondary.end());
  return all;
}

std::string SetExpr::str() const {
  std::string s = "{ ";
  auto all = allBinders();
  for (size_t i = 0; i < all.size(); ++i) {
    if (i) s += ", ";
    s += all[i].name + ":" + sortName(all[i].sort);
  }
  if (!all.empty()) s += " ";
  s += "| " + printDataExpr(body) + " }";
  return s;
}

SetExpr fullSet(std::vector<Param> primary, std::vector<Param> secondary) {
  return SetExpr{std::move(primary), std::move(secondary), dx::boolc(true)};
}

SetExpr meet(const SetExpr& a, const SetExpr& b) {
  if (!a.sameSignature(b)) throw Error("set signature mismatch in meet");
  return SetExpr{a.primary, a.secondary, simplifyData(dx::andE({a.body, b.body}))};
}

SetExpr complement(const SetExpr& a) {
  return SetExpr{a.primary, a.secondary, simplifyData(dx::notE(a.body))};
}

SetExpr existsProject(const SetExpr& a) {
  DataExprPtr body = a.body;
  for (auto it = a.secondary.rbegin(); it != a.secondary.rend(); ++it)
    body = dx::exists(it->name, it->sort, body);
  return SetExpr{a.primary, {}, simplifyData(body)};
}

SetExpr substituteInto(const SetExpr& target, const std::vector<Param>& newPrimary,
                       const std::vector<Param>& newSecondary,
                       const std::vector<DataExprPtr>& args) {
  if (!target.secondary.empty())
    throw Error("substitution target must be a primary-only set");
  if (target.primary.size() != args.size())
    throw Error("arity mismatch in set substitution");
  std::map<std::string, DataExprPtr> sub;
  for (size_t i = 0; i < args.size(); ++i) sub[target.primary[i].name] = args[i];
  return SetExpr{newPrimary, newSecondary, simplifyData(substituteData(target.body, sub))};
}

bool isEmpty(const SetExpr& a, SolverSession& s) {
  SmtQuery q;
  q.consts = a.allBinders();
  q.assertion = a.body;
  return smtCheckVerdict(s, q) == SmtVerdict::Unsat;
}

namespace {

DataExprPtr bindPoint(const SetExpr& a, std::span<const Value> point, size_t count) {
  if (point.size() != count) throw Error("point arity mismatch");
  std::map<std::string, DataExprPtr> sub;
  for (size_t i = 0; i < count; ++i) {
    const Param& p = i < a.primary.size() ? a.primary[i]
                                          : a.secondary[i - a.primary.size()];
    const Value& v = point[i];
    if (v.sort != p.sort) throw Error("point sort mismatch at " + p.name);
    sub[p.name] = v.sort == Sort::Nat ? dx::natc(v.nat) : dx::boolc(v.b);
  }
  return substituteData(a.body, sub);
}

}  // namespace

bool contains(const SetExpr& a, std::span<const Value> point, SolverSession& s) {
  SmtQuery q;
  q.assertion = simplifyData(bindPoint(a, point, a.primary.size() + a.secondary.size()));
  if (q.assertion->op == DataOp::BoolConst) return q.assertion->bval;
  return smtCheckVerdict(s, q) == SmtVerdict::Sat;
}

std::optional<std::vector<Value>> secondaryWitness(const SetExpr& a,
                                                   std::span<const Value> primaryPoint,
                                                   const DataExprPtr& extra,
                                                   SolverSession& s) {
  if (primaryPoint.size() != a.primary.size()) throw Error("point arity mismatch");
  std::map<std::string, DataExprPtr> sub;
  for (size_t i = 0; i < a.primary.size(); ++i) {
    const Value& v = primaryPoint[i];
    if (v.sort != a.primary[i].sort) throw Error("point sort mismatch");
    sub[a.primary[i].name] = v.sort == Sort::Nat ? dx::natc(v.nat) : dx::boolc(v.b);
  }
  SmtQuery q;
  q.consts = a.secondary;
  DataExprPtr body = substituteData(a.body, sub);
  if (extra) body = dx::andE({body, substituteData(extra, sub)});
  q.assertion = simplifyData(body);
  SmtResult r = s.check(q, /*wantModel=*/true);
  if (r.verdict == SmtVerdict::Unknown)
    throw SolverUnknown("SMT solver returned unknown", s.lastScript());
  if (r.verdict == SmtVerdict::Unsat) return std::nullopt;
  std::vector<Value> w;
  for (const auto& p : a.secondary) {
    auto it = r.model.find(p.name);
    if (it == r.model.end()) {
      // solver may omit untouched constants; default them
      w.push_back(p.sort == Sort::Nat ? Value::ofNat(0) : Value::ofBool(false));
    } else {
      Value v = it->second;
      if (p.sort == Sort::Bool && v.sort != Sort::Bool) v = Value::ofBool(v.nat != 0);
      w.push_back(v);
    }
  }
  return w;
}

}  // namespace epbes
