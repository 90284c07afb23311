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

#include "epbes/printer.hpp"

namespace epbes {

namespace {

// Shared precedence scale; a child is parenthesized when its level is
// below the level its context requires.
constexpr int kRoot = -1;
constexpr int kOr = 0;
constexpr int kAnd = 1;
constexpr int kCmp = 3;
constexpr int kAdd = 4;
constexpr int kMod = 5;
constexpr int kMul = 6;
constexpr int kAtom = 7;

std::string parens(const std::string& s) { return "(" + s + ")"; }

const char* cmpSym(DataOp op) {
  switch (op) {
    case DataOp::Eq: return " = ";
    case DataOp::Ne: return " != ";
    case DataOp::Lt: return " < ";
    case DataOp::Le: return " <= ";
    case DataOp::Gt: return " > ";
    default: return " >= ";
  }
}

std::string printData(const DataExprPtr& e, int need);

// even(e) / odd(e) for `e mod 2 = 0|1`.
bool sugarParity(const DataExprPtr& e, std::string& out) {
  if (e->op != DataOp::Eq) return false;
  const auto& l = e->args[0];
  const auto& r = e->args[1];
  if (l->op != DataOp::ModConst || l->k != 2) return false;
  if (r->op != DataOp::NatConst || r->k > 1) return false;
  out = std::string(r->k == 0 ? "even" : "odd") + "(" + printData(l->args[0], kRoot) + ")";
  return true;
}

std::string printData(const DataExprPtr& e, int need) {
  std::string s;
  int lvl = kAtom;
  switch (e->op) {
    case DataOp::NatConst:
      s = std::to_string(e->k);
      break;
    case DataOp::BoolConst:
      s = e->bval ? "true" : "false";
      break;
    case DataOp::Var:
      s = e->name;
      break;
    case DataOp::Add:
      s = printData(e->args[0], kAdd) + " + " + printData(e->args[1], kMod);
      lvl = kAdd;
      break;
    case DataOp::Monus:
      s = printData(e->args[0], kAdd) + " - " + printData(e->args[1], kMod);
      lvl = kAdd;
      break;
    case DataOp::MulConst:
      s = std::to_string(e->k) + "*" + printData(e->args[0], kAtom);
      lvl = kMul;
      break;
    case DataOp::ModConst:
      s = printData(e->args[0], kMod) + " mod " + std::to_string(e->k);
      lvl = kMod;
      break;
    case DataOp::Eq:
      if (sugarParity(e, s)) break;
      [[fallthrough]];
    case DataOp::Ne:
    case DataOp::Lt:
    case DataOp::Le:
    case DataOp::Gt:
    case DataOp::Ge:
      s = printData(e->args[0], kAdd) + cmpSym(e->op) + printData(e->args[1], kAdd);
      lvl = kCmp;
      break;
    case DataOp::Not:
      s = "!" + printData(e->args[0], kAtom);
      lvl = kAtom;
      break;
    case DataOp::And: {
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += " && ";
        s += printData(e->args[i], kAnd + (i ? 1 : 0));
      }
      lvl = kAnd;
      break;
    }
    case DataOp::Or: {
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += " || ";
        s += printData(e->args[i], kOr + (i ? 1 : 0));
      }
      lvl = kOr;
      break;
    }
    case DataOp::Exists:
      s = "exists " + e->name + ":" + sortName(e->varSort) + " . " +
          printData(e->args[0], kRoot);
      lvl = kRoot;
      break;
  }
  return lvl < need ? parens(s) : s;
}

std::string printF(const FormulaPtr& f, int need) {
  std::string s;
  int lvl = kAtom;
  switch (f->op) {
    case FormulaOp::Data:
      return printData(f->data, need);
    case FormulaOp::Call: {
      s = f->name + "(";
      for (size_t i = 0; i < f->callArgs.size(); ++i) {
        if (i) s += ", ";
        s += printData(f->callArgs[i], kRoot);
      }
      s += ")";
      break;
    }
    case FormulaOp::AndF:
      s = printF(f->kids[0], kAnd) + " && " + printF(f->kids[1], kAnd + 1);
      lvl = kAnd;
      break;
    case FormulaOp::OrF:
      s = printF(f->kids[0], kOr) + " || " + printF(f->kids[1], kOr + 1);
      lvl = kOr;
      break;
    case FormulaOp::ExistsF:
    case FormulaOp::ForallF:
      s = std::string(f->op == FormulaOp::ExistsF ? "exists " : "forall ") + f->name +
          ":" + sortName(f->varSort) + " . " + printF(f->kids[0], kRoot);
      lvl = kRoot;
      break;
  }
  return lvl < need ? parens(s) : s;
}

}  // namespace

std::string printDataExpr(const DataExprPtr& e) { return printData(e, kRoot); }

std::string printFormula(const FormulaPtr& f) { return printF(f, kRoot); }

std::string printPbes(const Pbes& p) {
  std::string out;
  for (const auto& eq : p.equations) {
    out += eq.isMu ? "mu " : "nu ";
    out += eq.name + "(";
    for (size_t i = 0; i < eq.params.size(); ++i) {
      if (i) out += ", ";
      out += eq.params[i].name + ":" + sortName(eq.params[i].sort);
    }
    out += ") = " + printF(eq.body, kRoot) + ";\n";
  }
  return out;
}

}  // namespace epbes
