// Oracle-first checks of the quantifier elimination engine: every
// decision is compared against brute-force enumeration on windows wide
// enough to be exact for the generated coefficient ranges.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "presburger/presburger.hpp"
#include "presburger/server.hpp"

using namespace presburger;

namespace {

// direct evaluation of a formula tree under an assignment, quantifiers
// enumerated over [-W, W]
bool evalRef(const NPtr& f, std::map<int, Int>& env, Int w) {
  switch (f->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lt:
    case Kind::Eq:
    case Kind::Dvd:
    case Kind::Ndvd: {
      Int v = f->t.c;
      for (const auto& [var, k] : f->t.coef) v += k * env.at(var);
      switch (f->kind) {
        case Kind::Lt: return v < 0;
        case Kind::Eq: return v == 0;
        case Kind::Dvd: return modNonNeg(v, f->m) == 0;
        default: return modNonNeg(v, f->m) != 0;
      }
    }
    case Kind::Not:
      return !evalRef(f->kids[0], env, w);
    case Kind::And:
      for (const auto& k : f->kids)
        if (!evalRef(k, env, w)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : f->kids)
        if (evalRef(k, env, w)) return true;
      return false;
    case Kind::Exists: {
      for (Int v = -w; v <= w; ++v) {
        env[f->var] = v;
        bool ok = evalRef(f->kids[0], env, w);
        env.erase(f->var);
        if (ok) return true;
      }
      return false;
    }
    case Kind::Forall: {
      for (Int v = -w; v <= w; ++v) {
        env[f->var] = v;
        bool ok = evalRef(f->kids[0], env, w);
        env.erase(f->var);
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  Int pick(Int lo, Int hi) {
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
  }

  LinTerm term(const std::vector<int>& vars) {
    LinTerm t;
    for (int v : vars)
      if (pick(0, 2) > 0) {
        Int c = pick(-3, 3);
        if (c != 0) t.coef[v] = c;
      }
    t.c = pick(-8, 8);
    return t;
  }

  NPtr atom(const std::vector<int>& vars) {
    switch (pick(0, 3)) {
      case 0: return mkLt(term(vars));
      case 1: return mkEq(term(vars));
      case 2: return mkDvd(pick(2, 4), term(vars));
      default: return mkNdvd(pick(2, 4), term(vars));
    }
  }

  NPtr formula(std::vector<int> vars, int depth, int nextVar) {
    if (depth == 0 || pick(0, 3) == 0) return atom(vars);
    switch (pick(0, 3)) {
      case 0:
        return mkAnd({formula(vars, depth - 1, nextVar + 10),
                      formula(vars, depth - 1, nextVar + 20)});
      case 1:
        return mkOr({formula(vars, depth - 1, nextVar + 10),
                     formula(vars, depth - 1, nextVar + 20)});
      case 2:
        return mkNot(formula(vars, depth - 1, nextVar + 10));
      default: {
        int v = nextVar;
        vars.push_back(v);
        NPtr body = formula(vars, depth - 1, nextVar + 10);
        return pick(0, 1) ? mkExists(v, body) : mkForall(v, body);
      }
    }
  }
};

}  // namespace

TEST_CASE("linear term arithmetic") {
  LinTerm a = LinTerm::variable(0).scaled(3).plus(LinTerm::constant(5));
  LinTerm b = LinTerm::variable(0).scaled(3);
  LinTerm d = a.minus(b);
  CHECK(d.isGround());
  CHECK(d.c == 5);
  CHECK(a.substitute(0, LinTerm::constant(2)).c == 11);
}

TEST_CASE("nnf removes negations and preserves meaning") {
  Gen gen(7);
  std::vector<int> free{0, 1};
  for (int trial = 0; trial < 300; ++trial) {
    NPtr f = gen.formula(free, 2, 100);
    NPtr g = nnf(f, false);
    std::function<bool(const NPtr&)> noNot = [&](const NPtr& x) {
      if (x->kind == Kind::Not) return false;
      for (const auto& k : x->kids)
        if (!noNot(k)) return false;
      return true;
    };
    CHECK(noNot(g));
    for (Int x = -4; x <= 4; ++x)
      for (Int y = -4; y <= 4; ++y) {
        std::map<int, Int> env{{0, x}, {1, y}};
        REQUIRE(evalRef(f, env, 30) == evalRef(g, env, 30));
      }
  }
}

TEST_CASE("cooper elimination agrees with enumeration") {
  Gen gen(11);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<int> vars{0, 1};  // 1 is bound, 0 stays free
    NPtr body = nnf(gen.formula(vars, 2, 100), false);
    // the generated formula may itself contain quantifiers: clear them
    body = nnf(eliminateAll(body), false);
    NPtr eliminated = cooperEliminate(1, body);
    CHECK(!containsVar(eliminated, 1));
    for (Int x = -6; x <= 6; ++x) {
      std::map<int, Int> env{{0, x}};
      bool direct = false;
      for (Int y = -400; y <= 400 && !direct; ++y) {
        env[1] = y;
        if (evalRef(body, env, 0)) direct = true;
      }
      env.erase(1);
      bool viaCooper = evalRef(eliminated, env, 0);
      REQUIRE(viaCooper == direct);
    }
  }
}

TEST_CASE("decide matches enumeration on closed formulas") {
  // positive-∃ formulas only, so a bounded-window witness is a real one
  Gen gen(23);
  std::function<NPtr(Gen&, std::vector<int>, int, int)> posFormula =
      [&](Gen& g, std::vector<int> vars, int depth, int nextVar) -> NPtr {
    if (depth == 0 || g.pick(0, 3) == 0) return g.atom(vars);
    switch (g.pick(0, 2)) {
      case 0:
        return mkAnd({posFormula(g, vars, depth - 1, nextVar + 10),
                      posFormula(g, vars, depth - 1, nextVar + 20)});
      case 1:
        return mkOr({posFormula(g, vars, depth - 1, nextVar + 10),
                     posFormula(g, vars, depth - 1, nextVar + 20)});
      default: {
        int v = nextVar;
        vars.push_back(v);
        return mkExists(v, posFormula(g, vars, depth - 1, nextVar + 10));
      }
    }
  };
  for (int trial = 0; trial < 300; ++trial) {
    NPtr f = posFormula(gen, {0, 1}, 3, 100);
    DecideResult r = decide(f, {0, 1}, true);
    bool direct = false;
    for (Int x = -25; x <= 25 && !direct; ++x)
      for (Int y = -25; y <= 25 && !direct; ++y) {
        std::map<int, Int> env{{0, x}, {1, y}};
        if (evalRef(f, env, 12)) direct = true;
      }
    // enumeration windows are generous relative to generated constants,
    // but only trust disagreements in the sound direction
    if (direct) REQUIRE(r.sat);
    std::function<bool(const NPtr&)> hasQuant = [&](const NPtr& x) {
      if (x->kind == Kind::Exists || x->kind == Kind::Forall) return true;
      for (const auto& k : x->kids)
        if (hasQuant(k)) return true;
      return false;
    };
    if (r.sat && !hasQuant(f)) {
      std::map<int, Int> env{{0, r.model.at(0)}, {1, r.model.at(1)}};
      REQUIRE(evalRef(f, env, 0));
    }
  }
}

TEST_CASE("smt server answers the paper-style queries") {
  SmtServer server;
  auto evalAll = [&](const std::string& text) {
    std::string last;
    for (const auto& s : parseAllSexprs(text)) {
      std::string r = server.evalCommand(s);
      if (!r.empty()) last = r;
    }
    return last;
  };
  CHECK(evalAll("(set-logic ALL)") == "");
  CHECK(evalAll("(push 1)(assert (= 0 1))(check-sat)") == "unsat");
  CHECK(evalAll("(pop 1)") == "");
  CHECK(evalAll("(push 1)(declare-const n Int)(assert (>= n 0))(assert (< n 1))"
                "(check-sat)") == "sat");
  std::string model = evalAll("(get-model)");
  CHECK(model.find("define-fun n () Int 0") != std::string::npos);
  CHECK(evalAll("(pop 1)") == "");
  // exists e. 6+5e=11, witness e=1
  CHECK(evalAll("(push 1)(assert (exists ((e Int)) (and (>= e 0) (= (+ 6 (* 5 e)) "
                "11))))(check-sat)(pop 1)") == "sat");
  // even(n) && odd(n) is empty
  CHECK(evalAll("(push 1)(declare-const n Int)(assert (>= n 0))"
                "(assert (= (mod n 2) 0))(assert (= (mod n 2) 1))(check-sat)(pop 1)") ==
        "unsat");
  // even(n) && n=2 && 3n+5m=11 has the witness m=1
  CHECK(evalAll("(push 1)(declare-const n Int)(declare-const m Int)"
                "(assert (>= n 0))(assert (>= m 0))(assert (= (mod n 2) 0))"
                "(assert (= n 2))(assert (= (+ (* 3 n) (* 5 m)) 11))(check-sat)") ==
        "sat");
  std::string m2 = evalAll("(get-model)");
  CHECK(m2.find("define-fun m () Int 1") != std::string::npos);
  CHECK(evalAll("(pop 1)") == "");
  // monus: 1-2 clamps to 0
  CHECK(evalAll("(push 1)(assert (= (ite (>= 1 2) (- 1 2) 0) 0))(check-sat)(pop 1)") ==
        "sat");
  // quantifier alternation: forall n >= 0 exists m. n = 2m or n = 2m+1
  CHECK(evalAll("(push 1)(assert (forall ((n Int)) (=> (>= n 0) (exists ((m Int)) "
                "(and (>= m 0) (or (= n (* 2 m)) (= n (+ (* 2 m) 1))))))))"
                "(check-sat)(pop 1)") == "sat");
  CHECK(evalAll("(push 1)(assert (forall ((n Int)) (exists ((m Int)) (= n (* 2 m)))))"
                "(check-sat)(pop 1)") == "unsat");
}

TEST_CASE("smt server handles bool constants and scopes") {
  SmtServer server;
  auto evalAll = [&](const std::string& text) {
    std::string last;
    for (const auto& s : parseAllSexprs(text)) {
      std::string r;
      try {
        r = server.evalCommand(s);
      } catch (const std::exception& e) {
        r = std::string("(error \"") + e.what() + "\")";
      }
      if (!r.empty()) last = r;
    }
    return last;
  };
  CHECK(evalAll("(declare-const b Bool)(push 1)(assert b)(check-sat)") == "sat");
  CHECK(evalAll("(get-model)").find("define-fun b () Bool true") != std::string::npos);
  CHECK(evalAll("(assert (not b))(check-sat)") == "unsat");
  CHECK(evalAll("(pop 1)(push 1)(assert (not b))(check-sat)") == "sat");
  CHECK(evalAll("(get-model)").find("define-fun b () Bool false") != std::string::npos);
  CHECK(evalAll("(pop 1)") == "");
  // declarations vanish after pop
  CHECK(evalAll("(push 1)(declare-const fresh Int)(pop 1)(push 1)(assert (= fresh 0))")
            .find("error") != std::string::npos);
}
