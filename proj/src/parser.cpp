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

#include "epbes/parser.hpp"

#include <cctype>
#include <optional>

namespace epbes {

namespace {

enum class Tok {
  End,
  Ident,
  Nat,
  LParen,
  RParen,
  Comma,
  Colon,
  Semi,
  Dot,
  Plus,
  Minus,
  Star,
  Bang,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  AndAnd,
  OrOr,
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::uint64_t nat = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      bump();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.type = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_' || src_[pos_] == '\''))
        bump();
      tok_.type = Tok::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        std::uint64_t d = static_cast<std::uint64_t>(src_[pos_] - '0');
        if (v > (UINT64_MAX - d) / 10)
          throw ParseError("numeric literal too large", line_, col_);
        v = v * 10 + d;
        bump();
      }
      tok_.type = Tok::Nat;
      tok_.nat = v;
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('&', '&')) {
      bump(); bump();
      tok_.type = Tok::AndAnd;
      return;
    }
    if (two('|', '|')) {
      bump(); bump();
      tok_.type = Tok::OrOr;
      return;
    }
    if (two('!', '=')) {
      bump(); bump();
      tok_.type = Tok::Ne;
      return;
    }
    if (two('<', '=')) {
      bump(); bump();
      tok_.type = Tok::Le;
      return;
    }
    if (two('>', '=')) {
      bump(); bump();
      tok_.type = Tok::Ge;
      return;
    }
    bump();
    switch (c) {
      case '(': tok_.type = Tok::LParen; return;
      case ')': tok_.type = Tok::RParen; return;
      case ',': tok_.type = Tok::Comma; return;
      case ':': tok_.type = Tok::Colon; return;
      case ';': tok_.type = Tok::Semi; return;
      case '.': tok_.type = Tok::Dot; return;
      case '+': tok_.type = Tok::Plus; return;
      case '-': tok_.type = Tok::Minus; return;
      case '*': tok_.type = Tok::Star; return;
      case '!': tok_.type = Tok::Bang; return;
      case '=': tok_.type = Tok::Eq; return;
      case '<': tok_.type = Tok::Lt; return;
      case '>': tok_.type = Tok::Gt; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

bool isKw(const Token& t, const char* kw) {
  return t.type == Tok::Ident && t.text == kw;
}

/// Parse result below the && level: either a predicate formula or a pure
/// data expression with its sort.
struct PTerm {
  FormulaPtr f;
  DataExprPtr d;
  Sort dsort = Sort::Nat;
  int line = 1, col = 1;
};

struct CallSite {
  std::string name;
  std::vector<Sort> argSorts;
  int line, col;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Pbes parse() {
    Pbes p;
    if (lex_.peek().type == Tok::End) lex_.fail("no equations");
    while (lex_.peek().type != Tok::End) p.equations.push_back(equation());
    resolveCalls(p);
    checkPbes(p);
    return p;
  }

 private:
  Equation equation() {
    Token t = lex_.take();
    bool isMu;
    if (isKw(t, "mu"))
      isMu = true;
    else if (isKw(t, "nu"))
      isMu = false;
    else
      throw ParseError("expected 'mu' or 'nu'", t.line, t.col);
    Equation eq;
    eq.isMu = isMu;
    eq.name = expectIdent("equation name");
    expect(Tok::LParen, "'('");
    scope_.clear();
    if (lex_.peek().type != Tok::RParen) {
      for (;;) {
        std::string pn = expectIdent("parameter name");
        expect(Tok::Colon, "':'");
        Sort s = sort();
        if (scope_.count(pn)) {
          Token cur = lex_.peek();
          throw ParseError("duplicate parameter '" + pn + "'", cur.line, cur.col);
        }
        scope_[pn] = s;
        eq.params.push_back({pn, s});
        if (lex_.peek().type != Tok::Comma) break;
        lex_.take();
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Eq, "'='");
    eq.body = toFormula(parseOr());
    expect(Tok::Semi, "';'");
    return eq;
  }

  Sort sort() {
    Token t = lex_.take();
    if (isKw(t, "N")) return Sort::Nat;
    if (isKw(t, "B")) return Sort::Bool;
    throw ParseError("expected sort 'N' or 'B'", t.line, t.col);
  }

  static FormulaPtr toFormula(const PTerm& p) {
    if (p.f) return p.f;
    return pf::leaf(p.d);
  }

  DataExprPtr needData(const PTerm& p, Sort s, const char* what) {
    if (p.f)
      throw ParseError(std::string("predicate formula cannot be an operand of ") + what,
                       p.line, p.col);
    if (p.dsort != s)
      throw ParseError(std::string("expected ") + sortName(s) + "-sorted operand of " + what,
                       p.line, p.col);
    return p.d;
  }

  PTerm dataTerm(DataExprPtr d, Sort s, const Token& at) {
    PTerm p;
    p.d = std::move(d);
    p.dsort = s;
    p.line = at.line;
    p.col = at.col;
    return p;
  }

  PTerm formulaTerm(FormulaPtr f, const Token& at) {
    PTerm p;
    p.f = std::move(f);
    p.line = at.line;
    p.col = at.col;
    return p;
  }

  PTerm parseOr() {
    PTerm l = parseAnd();
    while (lex_.peek().type == Tok::OrOr) {
      Token op = lex_.take();
      PTerm r = parseAnd();
      l = formulaTerm(pf::orF(toFormula(l), toFormula(r)), op);
    }
    return l;
  }

  PTerm parseAnd() {
    PTerm l = parseCmp();
    while (lex_.peek().type == Tok::AndAnd) {
      Token op = lex_.take();
      PTerm r = parseCmp();
      l = formulaTerm(pf::andF(toFormula(l), toFormula(r)), op);
    }
    return l;
  }

  static std::optional<DataOp> cmpOf(Tok t) {
    switch (t) {
      case Tok::Eq: return DataOp::Eq;
      case Tok::Ne: return DataOp::Ne;
      case Tok::Lt: return DataOp::Lt;
      case Tok::Le: return DataOp::Le;
      case Tok::Gt: return DataOp::Gt;
      case Tok::Ge: return DataOp::Ge;
      default: return std::nullopt;
    }
  }

  PTerm parseCmp() {
    PTerm l = parseSum();
    auto op = cmpOf(lex_.peek().type);
    if (!op) return l;
    Token t = lex_.take();
    PTerm r = parseSum();
    if (l.f || r.f)
      throw ParseError("predicate formula cannot be compared", t.line, t.col);
    DataExprPtr d;
    if (*op == DataOp::Eq || *op == DataOp::Ne) {
      if (l.dsort != r.dsort)
        throw ParseError("comparison of mismatched sorts", t.line, t.col);
      d = dx::cmp(*op, l.d, r.d);
    } else {
      if (l.dsort != Sort::Nat || r.dsort != Sort::Nat)
        throw ParseError("ordering compares naturals", t.line, t.col);
      d = dx::cmp(*op, l.d, r.d);
    }
    if (cmpOf(lex_.peek().type)) {
      Token nx = lex_.peek();
      throw ParseError("comparisons do not chain", nx.line, nx.col);
    }
    return dataTerm(d, Sort::Bool, t);
  }

  PTerm parseSum() {
    PTerm l = parseTerm();
    for (;;) {
      Tok t = lex_.peek().type;
      if (t != Tok::Plus && t != Tok::Minus) return l;
      Token op = lex_.take();
      PTerm r = parseTerm();
      DataExprPtr a = needData(l, Sort::Nat, "'+'/'-'");
      DataExprPtr b = needData(r, Sort::Nat, "'+'/'-'");
      l = dataTerm(t == Tok::Plus ? dx::add(a, b) : dx::monus(a, b), Sort::Nat, op);
    }
  }

  PTerm parseTerm() {
    PTerm l = parseFactor();
    while (isKw(lex_.peek(), "mod")) {
      Token op = lex_.take();
      Token k = lex_.take();
      if (k.type != Tok::Nat) throw ParseError("'mod' needs a constant modulus", k.line, k.col);
      if (k.nat == 0) throw ParseError("modulus must be positive", k.line, k.col);
      l = dataTerm(dx::modc(needData(l, Sort::Nat, "'mod'"), k.nat), Sort::Nat, op);
    }
    return l;
  }

  PTerm parseFactor() {
    PTerm l = parsePrimary();
    if (lex_.peek().type != Tok::Star) return l;
    Token op = lex_.take();
    PTerm r = parseFactor();
    // one side must be a literal: k*e
    if (!l.f && l.d->op == DataOp::NatConst) {
      return dataTerm(dx::mulc(l.d->k, needData(r, Sort::Nat, "'*'")), Sort::Nat, op);
    }
    if (!r.f && r.d->op == DataOp::NatConst) {
      return dataTerm(dx::mulc(r.d->k, needData(l, Sort::Nat, "'*'")), Sort::Nat, op);
    }
    throw ParseError("multiplication needs a constant factor", op.line, op.col);
  }

  PTerm parsePrimary() {
    Token t = lex_.take();
    switch (t.type) {
      case Tok::Nat:
        return dataTerm(dx::natc(t.nat), Sort::Nat, t);
      case Tok::Bang: {
        PTerm a = parsePrimary();
        return dataTerm(dx::notE(needData(a, Sort::Bool, "'!'")), Sort::Bool, t);
      }
      case Tok::LParen: {
        PTerm inner = parseOr();
        expect(Tok::RParen, "')'");
        inner.line = t.line;
        inner.col = t.col;
        return inner;
      }
      case Tok::Ident:
        break;
      default:
        throw ParseError("unexpected token", t.line, t.col);
    }
    if (isKw(t, "true")) return dataTerm(dx::boolc(true), Sort::Bool, t);
    if (isKw(t, "false")) return dataTerm(dx::boolc(false), Sort::Bool, t);
    if (isKw(t, "exists") || isKw(t, "forall")) {
      bool ex = t.text == "exists";
      std::string v = expectIdent("bound variable");
      expect(Tok::Colon, "':'");
      Sort s = sort();
      expect(Tok::Dot, "'.'");
      auto shadow = setScope(v, s);
      FormulaPtr body = toFormula(parseOr());
      restoreScope(v, shadow);
      return formulaTerm(ex ? pf::existsF(v, s, body) : pf::forallF(v, s, body), t);
    }
    if (isKw(t, "even") || isKw(t, "odd")) {
      expect(Tok::LParen, "'('");
      PTerm a = parseOr();
      expect(Tok::RParen, "')'");
      DataExprPtr e = needData(a, Sort::Nat, t.text == "even" ? "even()" : "odd()");
      return dataTerm(dx::cmp(DataOp::Eq, dx::modc(e, 2), dx::natc(t.text == "even" ? 0 : 1)),
                      Sort::Bool, t);
    }
    if (lex_.peek().type == Tok::LParen) {
      // predicate call; target resolved after the whole system is read
      lex_.take();
      std::vector<DataExprPtr> args;
      std::vector<Sort> argSorts;
      if (lex_.peek().type != Tok::RParen) {
        for (;;) {
          PTerm a = parseOr();
          if (a.f)
            throw ParseError("call arguments are data expressions", a.line, a.col);
          args.push_back(a.d);
          argSorts.push_back(a.dsort);
          if (lex_.peek().type != Tok::Comma) break;
          lex_.take();
        }
      }
      expect(Tok::RParen, "')'");
      calls_.push_back({t.text, std::move(argSorts), t.line, t.col});
      return formulaTerm(pf::call(t.text, std::move(args)), t);
    }
    auto it = scope_.find(t.text);
    if (it == scope_.end())
      throw ParseError("unbound data variable '" + t.text + "'", t.line, t.col);
    return dataTerm(dx::var(t.text, it->second), it->second, t);
  }

  std::optional<Sort> setScope(const std::string& name, Sort s) {
    std::optional<Sort> old;
    auto it = scope_.find(name);
    if (it != scope_.end()) old = it->second;
    scope_[name] = s;
    return old;
  }

  void restoreScope(const std::string& name, std::optional<Sort> old) {
    if (old)
      scope_[name] = *old;
    else
      scope_.erase(name);
  }

  void resolveCalls(const Pbes& p) {
    for (const auto& c : calls_) {
      int i = p.indexOf(c.name);
      if (i < 0)
        throw ParseError("unbound predicate variable '" + c.name + "'", c.line, c.col);
      const auto& params = p.equations[i].params;
      if (params.size() != c.argSorts.size())
        throw ParseError("call of '" + c.name + "' expects " +
                             std::to_string(params.size()) + " arguments, got " +
                             std::to_string(c.argSorts.size()),
                         c.line, c.col);
      for (size_t j = 0; j < params.size(); ++j)
        if (params[j].sort != c.argSorts[j])
          throw ParseError("argument " + std::to_string(j + 1) + " of '" + c.name +
                               "' must have sort " + sortName(params[j].sort),
                           c.line, c.col);
    }
  }

  std::string expectIdent(const char* what) {
    Token t = lex_.take();
    if (t.type != Tok::Ident)
      throw ParseError(std::string("expected ") + what, t.line, t.col);
    return t.text;
  }

  void expect(Tok type, const char* what) {
    Token t = lex_.take();
    if (t.type != type)
      throw ParseError(std::string("expected ") + what, t.line, t.col);
  }

  Lexer lex_;
  std::map<std::string, Sort> scope_;
  std::vector<CallSite> calls_;
};

}  // namespace

Pbes parsePbes(std::string_view text) { return Parser(text).parse(); }

Signature parseQuery(std::string_view text) {
  Lexer lex(text);
  Token name = lex.take();
  if (name.type != Tok::Ident)
    throw ParseError("expected a predicate variable", name.line, name.col);
  Signature sig;
  sig.var = name.text;
  Token lp = lex.take();
  if (lp.type != Tok::LParen) throw ParseError("expected '('", lp.line, lp.col);
  if (lex.peek().type != Tok::RParen) {
    for (;;) {
      Token v = lex.take();
      if (v.type == Tok::Nat)
        sig.args.push_back(Value::ofNat(v.nat));
      else if (isKw(v, "true"))
        sig.args.push_back(Value::ofBool(true));
      else if (isKw(v, "false"))
        sig.args.push_back(Value::ofBool(false));
      else
        throw ParseError("expected a value", v.line, v.col);
      if (lex.peek().type != Tok::Comma) break;
      lex.take();
    }
  }
  Token rp = lex.take();
  if (rp.type != Tok::RParen) throw ParseError("expected ')'", rp.line, rp.col);
  if (lex.peek().type != Tok::End) {
    Token t = lex.take();
    throw ParseError("trailing input after query", t.line, t.col);
  }
  return sig;
}

void checkQuery(const Pbes& p, const Signature& sig) {
  int i = p.indexOf(sig.var);
  if (i < 0) throw Error("unknown predicate variable '" + sig.var + "'");
  const auto& params = p.equations[i].params;
  if (params.size() != sig.args.size())
    throw Error("query arity mismatch: '" + sig.var + "' has " +
                std::to_string(params.size()) + " parameters");
  for (size_t j = 0; j < params.size(); ++j)
    if (params[j].sort != sig.args[j].sort)
      throw Error("query argument " + std::to_string(j + 1) + " must have sort " +
                  sortName(params[j].sort));
}

}  // namespace epbes
