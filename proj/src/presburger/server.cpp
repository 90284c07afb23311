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

#include "server.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace presburger {

namespace {

bool isNumeral(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int parseNumeral(const std::string& s) {
  Int v = 0;
  for (char c : s) {
    v = checkedMul(v, 10);
    v = checkedAdd(v, c - '0');
  }
  return v;
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

bool needsQuoting(const std::string& name) {
  if (name.empty()) return true;
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return true;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (std::string("~!@$%^&*_-+=<>.?/").find(c) != std::string::npos) continue;
    return true;
  }
  return false;
}

std::string printSymbol(const std::string& name) {
  return needsQuoting(name) ? "|" + name + "|" : name;
}

// 0 <= x <= 1, the encoding of a Boolean as an integer
NPtr boolRange(int var) {
  LinTerm x = LinTerm::variable(var);
  return mkAnd({mkLt(x.negated().withConst(-1)), mkLt(x.withConst(-2))});
}

NPtr boolIsTrue(int var) { return mkEq(LinTerm::variable(var).withConst(-1)); }

}  // namespace

const SmtServer::Decl* SmtServer::lookup(
    const std::string& name, const std::vector<std::pair<std::string, Decl>>& scope) const {
  for (auto it = scope.rbegin(); it != scope.rend(); ++it)
    if (it->first == name) return &it->second;
  for (auto lvl = declLevels_.rbegin(); lvl != declLevels_.rend(); ++lvl)
    for (auto it = lvl->rbegin(); it != lvl->rend(); ++it)
      if (it->name == name) return &*it;
  return nullptr;
}

bool SmtServer::inferIsInt(const Sexpr& s,
                           const std::vector<std::pair<std::string, Decl>>& scope) const {
  if (s.isAtom) {
    if (isNumeral(s.atom)) return true;
    if (s.atom == "true" || s.atom == "false") return false;
    const Decl* d = lookup(s.atom, scope);
    if (!d) fail("unknown constant '" + s.atom + "'");
    return d->isInt;
  }
  if (s.kids.empty() || !s.kids[0].isAtom) fail("malformed term");
  const std::string& h = s.kids[0].atom;
  if (h == "+" || h == "-" || h == "*" || h == "mod" || h == "div") return true;
  if (h == "ite") {
    if (s.kids.size() != 4) fail("ite needs 3 arguments");
    return inferIsInt(s.kids[2], scope);
  }
  return false;  // connectives, relations, quantifiers
}

NPtr SmtServer::translateBool(const Sexpr& s,
                              std::vector<std::pair<std::string, Decl>>& scope) {
  if (s.isAtom) {
    if (s.atom == "true") return mkTrue();
    if (s.atom == "false") return mkFalse();
    const Decl* d = lookup(s.atom, scope);
    if (!d) fail("unknown constant '" + s.atom + "'");
    if (d->isInt) fail("'" + s.atom + "' is not Boolean");
    return boolIsTrue(d->varId);
  }
  if (s.kids.empty() || !s.kids[0].isAtom) fail("malformed term");
  const std::string& h = s.kids[0].atom;

  auto boolArgs = [&](size_t atLeast) {
    if (s.kids.size() < atLeast + 1) fail("'" + h + "' needs arguments");
    std::vector<NPtr> out;
    for (size_t i = 1; i < s.kids.size(); ++i) out.push_back(translateBool(s.kids[i], scope));
    return out;
  };

  if (h == "and") return mkAnd(boolArgs(1));
  if (h == "or") return mkOr(boolArgs(1));
  if (h == "not") {
    auto a = boolArgs(1);
    if (a.size() != 1) fail("'not' is unary");
    return mkNot(a[0]);
  }
  if (h == "=>") {
    auto a = boolArgs(2);
    // right-associative chain
    NPtr r = a.back();
    for (size_t i = a.size() - 1; i-- > 0;) r = mkOr({mkNot(a[i]), r});
    return r;
  }
  if (h == "xor") {
    auto a = boolArgs(2);
    NPtr r = a[0];
    for (size_t i = 1; i < a.size(); ++i)
      r = mkOr({mkAnd({r, mkNot(a[i])}), mkAnd({mkNot(r), a[i]})});
    return r;
  }
  if (h == "exists" || h == "forall") {
    if (s.kids.size() != 3 || s.kids[1].isAtom) fail("malformed quantifier");
    bool ex = h == "exists";
    size_t scopeMark = scope.size();
    std::vector<std::pair<int, bool>> binders;  // (varId, isInt)
    for (const auto& b : s.kids[1].kids) {
      if (b.isAtom || b.kids.size() != 2 || !b.kids[0].isAtom || !b.kids[1].isAtom)
        fail("malformed binder");
      const std::string& sort = b.kids[1].atom;
      if (sort != "Int" && sort != "Bool") fail("unsupported sort '" + sort + "'");
      Decl d;
      d.name = b.kids[0].atom;
      d.isInt = sort == "Int";
      d.varId = nextFresh_++;
      scope.emplace_back(d.name, d);
      binders.emplace_back(d.varId, d.isInt);
    }
    NPtr body = translateBool(s.kids[2], scope);
    scope.resize(scopeMark);
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      auto [id, isInt] = *it;
      if (ex) {
        body = isInt ? mkExists(id, body) : mkExists(id, mkAnd({boolRange(id), body}));
      } else {
        body = isInt ? mkForall(id, body)
                     : mkForall(id, mkOr({mkNot(boolRange(id)), body}));
      }
    }
    return body;
  }
  if (h == "ite") {
    if (s.kids.size() != 4) fail("ite needs 3 arguments");
    NPtr c = translateBool(s.kids[1], scope);
    NPtr a = translateBool(s.kids[2], scope);
    NPtr b = translateBool(s.kids[3], scope);
    return mkOr({mkAnd({c, a}), mkAnd({mkNot(c), b})});
  }

  auto relate = [&](const char* op) -> NPtr {
    if (s.kids.size() != 3) fail(std::string("'") + op + "' is binary");
    auto lhs = translateInt(s.kids[1], scope);
    auto rhs = translateInt(s.kids[2], scope);
    std::vector<NPtr> cases;
    for (const auto& a : lhs)
      for (const auto& b : rhs) {
        LinTerm d = a.term.minus(b.term);
        NPtr atom;
        if (op[0] == '<' && op[1] == 0) atom = mkLt(d);
        else if (op[0] == '<') atom = mkLt(d.withConst(-1));
        else if (op[0] == '>' && op[1] == 0) atom = mkLt(d.negated());
        else if (op[0] == '>') atom = mkLt(d.negated().withConst(-1));
        else atom = mkEq(d);  // '='
        NPtr body = mkAnd({a.guard, b.guard, atom});
        for (auto it = b.fresh.rbegin(); it != b.fresh.rend(); ++it)
          body = mkExists(*it, body);
        for (auto it = a.fresh.rbegin(); it != a.fresh.rend(); ++it)
          body = mkExists(*it, body);
        cases.push_back(std::move(body));
      }
    return mkOr(std::move(cases));
  };

  if (h == "<") return relate("<");
  if (h == "<=") return relate("<=");
  if (h == ">") return relate(">");
  if (h == ">=") return relate(">=");
  if (h == "=" || h == "distinct") {
    if (s.kids.size() < 3) fail("'" + h + "' needs two arguments");
    bool ints = inferIsInt(s.kids[1], scope);
    std::vector<NPtr> parts;
    for (size_t i = 1; i + 1 < s.kids.size(); ++i) {
      // chain pairwise over consecutive operands
      const Sexpr& x = s.kids[i];
      const Sexpr& y = s.kids[i + 1];
      NPtr eq;
      if (ints) {
        Sexpr pair;
        pair.kids = {Sexpr{true, "=", {}}, x, y};
        eq = relateEquals(pair, scope);
      } else {
        NPtr a = translateBool(x, scope);
        NPtr b = translateBool(y, scope);
        eq = mkOr({mkAnd({a, b}), mkAnd({mkNot(a), mkNot(b)})});
      }
      parts.push_back(h == "=" ? eq : mkNot(eq));
    }
    return mkAnd(std::move(parts));
  }
  fail("unsupported operator '" + h + "'");
}

// out-of-line helper for integer equality, shared by = / distinct
NPtr SmtServer::relateEquals(const Sexpr& s,
                             std::vector<std::pair<std::string, Decl>>& scope) {
  auto lhs = translateInt(s.kids[1], scope);
  auto rhs = translateInt(s.kids[2], scope);
  std::vector<NPtr> cases;
  for (const auto& a : lhs)
    for (const auto& b : rhs) {
      NPtr body = mkAnd({a.guard, b.guard, mkEq(a.term.minus(b.term))});
      for (auto it = b.fresh.rbegin(); it != b.fresh.rend(); ++it)
        body = mkExists(*it, body);
      for (auto it = a.fresh.rbegin(); it != a.fresh.rend(); ++it)
        body = mkExists(*it, body);
      cases.push_back(std::move(body));
    }
  return mkOr(std::move(cases));
}

std::vector<SmtServer::IntCase> SmtServer::translateInt(
    const Sexpr& s, std::vector<std::pair<std::string, Decl>>& scope) {
  if (s.isAtom) {
    if (isNumeral(s.atom))
      return {IntCase{mkTrue(), {}, LinTerm::constant(parseNumeral(s.atom))}};
    const Decl* d = lookup(s.atom, scope);
    if (!d) fail("unknown constant '" + s.atom + "'");
    if (!d->isInt) fail("'" + s.atom + "' is not an Int");
    return {IntCase{mkTrue(), {}, LinTerm::variable(d->varId)}};
  }
  if (s.kids.empty() || !s.kids[0].isAtom) fail("malformed term");
  const std::string& h = s.kids[0].atom;

  auto combine = [&](const std::vector<IntCase>& a, const std::vector<IntCase>& b,
                     auto merge) {
    std::vector<IntCase> out;
    for (const auto& x : a)
      for (const auto& y : b) {
        IntCase c;
        c.guard = mkAnd({x.guard, y.guard});
        c.fresh = x.fresh;
        c.fresh.insert(c.fresh.end(), y.fresh.begin(), y.fresh.end());
        c.term = merge(x.term, y.term);
        out.push_back(std::move(c));
      }
    return out;
  };

  if (h == "+") {
    if (s.kids.size() < 2) fail("'+' needs arguments");
    auto acc = translateInt(s.kids[1], scope);
    for (size_t i = 2; i < s.kids.size(); ++i)
      acc = combine(acc, translateInt(s.kids[i], scope),
                    [](const LinTerm& a, const LinTerm& b) { return a.plus(b); });
    return acc;
  }
  if (h == "-") {
    if (s.kids.size() == 2) {
      auto a = translateInt(s.kids[1], scope);
      for (auto& c : a) c.term = c.term.negated();
      return a;
    }
    if (s.kids.size() < 3) fail("'-' needs arguments");
    auto acc = translateInt(s.kids[1], scope);
    for (size_t i = 2; i < s.kids.size(); ++i)
      acc = combine(acc, translateInt(s.kids[i], scope),
                    [](const LinTerm& a, const LinTerm& b) { return a.minus(b); });
    return acc;
  }
  if (h == "*") {
    if (s.kids.size() < 3) fail("'*' needs two arguments");
    auto acc = translateInt(s.kids[1], scope);
    for (size_t i = 2; i < s.kids.size(); ++i)
      acc = combine(acc, translateInt(s.kids[i], scope),
                    [](const LinTerm& a, const LinTerm& b) -> LinTerm {
                      if (a.isGround()) return b.scaled(a.c);
                      if (b.isGround()) return a.scaled(b.c);
                      throw std::runtime_error("nonlinear multiplication");
                    });
    return acc;
  }
  if (h == "mod") {
    if (s.kids.size() != 3) fail("'mod' is binary");
    auto base = translateInt(s.kids[1], scope);
    auto modArg = translateInt(s.kids[2], scope);
    if (modArg.size() != 1 || !modArg[0].term.isGround() || modArg[0].term.c <= 0)
      fail("'mod' needs a positive constant modulus");
    Int k = modArg[0].term.c;
    std::vector<IntCase> out;
    for (const auto& b : base) {
      int m = nextFresh_++;
      IntCase c;
      LinTerm mv = LinTerm::variable(m);
      c.guard = mkAnd({b.guard, mkLt(mv.negated().withConst(-1)),
                       mkLt(mv.minus(LinTerm::constant(k))),
                       mkDvd(k, b.term.minus(mv))});
      c.fresh = b.fresh;
      c.fresh.push_back(m);
      c.term = mv;
      out.push_back(std::move(c));
    }
    return out;
  }
  if (h == "ite") {
    if (s.kids.size() != 4) fail("ite needs 3 arguments");
    NPtr cond = translateBool(s.kids[1], scope);
    auto a = translateInt(s.kids[2], scope);
    auto b = translateInt(s.kids[3], scope);
    std::vector<IntCase> out;
    for (const auto& x : a) {
      IntCase c = x;
      c.guard = mkAnd({cond, x.guard});
      out.push_back(std::move(c));
    }
    NPtr ncond = mkNot(cond);
    for (const auto& y : b) {
      IntCase c = y;
      c.guard = mkAnd({ncond, y.guard});
      out.push_back(std::move(c));
    }
    return out;
  }
  fail("unsupported Int operator '" + h + "'");
}

std::string SmtServer::doCheckSat() {
  std::vector<NPtr> parts;
  std::vector<int> freeOrder;
  std::vector<const Decl*> decls;
  for (const auto& lvl : declLevels_)
    for (const auto& d : lvl) {
      freeOrder.push_back(d.varId);
      decls.push_back(&d);
      if (!d.isInt) parts.push_back(boolRange(d.varId));
    }
  for (const auto& lvl : assertLevels_)
    for (const auto& a : lvl) parts.push_back(a);

  model_.reset();
  try {
    DecideResult r = decide(mkAnd(std::move(parts)), freeOrder, /*wantModel=*/true);
    if (!r.sat) return "unsat";
    std::vector<ModelEntry> model;
    for (const Decl* d : decls) {
      ModelEntry e;
      e.name = d->name;
      e.isInt = d->isInt;
      auto it = r.model.find(d->varId);
      e.value = it == r.model.end() ? 0 : it->second;
      model.push_back(std::move(e));
    }
    model_ = std::move(model);
    return "sat";
  } catch (const SolverLimit&) {
    return "unknown";
  }
}

std::string SmtServer::doGetModel() const {
  if (!model_) return "(error \"model is not available\")";
  std::string out = "(\n";
  for (const auto& e : *model_) {
    out += "  (define-fun " + printSymbol(e.name) + " () ";
    if (e.isInt) {
      out += "Int ";
      out += e.value < 0 ? "(- " + std::to_string(-e.value) + ")" : std::to_string(e.value);
    } else {
      out += "Bool ";
      out += e.value == 1 ? "true" : "false";
    }
    out += ")\n";
  }
  return out + ")";
}

void SmtServer::doReset() {
  declLevels_.assign(1, {});
  assertLevels_.assign(1, {});
  nextVar_ = 0;
  nextFresh_ = 1 << 24;
  model_.reset();
}

std::string SmtServer::evalCommand(const Sexpr& cmd) {
  if (cmd.isAtom) fail("expected a command");
  if (cmd.kids.empty() || !cmd.kids[0].isAtom) fail("expected a command");
  const std::string& h = cmd.kids[0].atom;

  if (h == "set-logic" || h == "set-info" || h == "set-option") return "";
  if (h == "exit") {
    exited_ = true;
    return "";
  }
  if (h == "reset") {
    doReset();
    return "";
  }
  if (h == "echo") {
    if (cmd.kids.size() != 2) fail("echo needs one argument");
    return cmd.kids[1].atom;
  }
  if (h == "declare-const" || h == "declare-fun") {
    size_t sortIdx = h == "declare-const" ? 2 : 3;
    if (cmd.kids.size() != sortIdx + 1 || !cmd.kids[1].isAtom)
      fail("malformed " + h);
    if (h == "declare-fun" && (cmd.kids[2].isAtom || !cmd.kids[2].kids.empty()))
      fail("only arity-0 declare-fun is supported");
    if (!cmd.kids[sortIdx].isAtom) fail("malformed sort");
    const std::string& sort = cmd.kids[sortIdx].atom;
    if (sort != "Int" && sort != "Bool") fail("unsupported sort '" + sort + "'");
    Decl d;
    d.name = cmd.kids[1].atom;
    d.isInt = sort == "Int";
    d.varId = nextVar_++;
    declLevels_.back().push_back(std::move(d));
    return "";
  }
  if (h == "assert") {
    if (cmd.kids.size() != 2) fail("assert needs one argument");
    std::vector<std::pair<std::string, Decl>> scope;
    assertLevels_.back().push_back(translateBool(cmd.kids[1], scope));
    return "";
  }
  if (h == "push" || h == "pop") {
    Int n = 1;
    if (cmd.kids.size() == 2) {
      if (!cmd.kids[1].isAtom || !isNumeral(cmd.kids[1].atom)) fail("malformed " + h);
      n = parseNumeral(cmd.kids[1].atom);
    }
    for (Int i = 0; i < n; ++i) {
      if (h == "push") {
        declLevels_.emplace_back();
        assertLevels_.emplace_back();
      } else {
        if (declLevels_.size() <= 1) fail("pop without matching push");
        declLevels_.pop_back();
        assertLevels_.pop_back();
      }
    }
    return "";
  }
  if (h == "check-sat") return doCheckSat();
  if (h == "get-model") return doGetModel();
  fail("unsupported command '" + h + "'");
}

void SmtServer::run(std::istream& in, std::ostream& out) {
  for (;;) {
    std::optional<Sexpr> cmd;
    try {
      cmd = readSexpr(in);
    } catch (const std::exception& e) {
      out << "(error \"" << e.what() << "\")" << std::endl;
      return;
    }
    if (!cmd) return;
    std::string resp;
    try {
      resp = evalCommand(*cmd);
    } catch (const std::exception& e) {
      resp = std::string("(error \"") + e.what() + "\")";
    }
    if (!resp.empty()) out << resp << std::endl;
    if (exited_) return;
  }
}

}  // namespace presburger
