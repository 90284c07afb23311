#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epbes/enf.hpp"
#include "epbes/eval.hpp"
#include "epbes/parser.hpp"
#include "epbes/printer.hpp"
#include "helpers.hpp"

using namespace epbes;

namespace {

void collectBinders(const FormulaPtr& f, std::vector<std::string>& out) {
  if (f->op == FormulaOp::ExistsF || f->op == FormulaOp::ForallF) out.push_back(f->name);
  for (const auto& k : f->kids) collectBinders(k, out);
}

bool bindersDistinct(const FormulaPtr& f) {
  std::vector<std::string> names;
  collectBinders(f, names);
  std::set<std::string> uniq(names.begin(), names.end());
  return uniq.size() == names.size();
}

// bounded evaluation of a formula with calls interpreted by a fixed
// pseudo-random predicate table
bool evalWithTable(const FormulaPtr& f, Env& env, std::uint64_t bound,
                   std::uint64_t tableSeed) {
  switch (f->op) {
    case FormulaOp::Data:
      return evalBool(f->data, env);
    case FormulaOp::AndF:
      return evalWithTable(f->kids[0], env, bound, tableSeed) &&
             evalWithTable(f->kids[1], env, bound, tableSeed);
    case FormulaOp::OrF:
      return evalWithTable(f->kids[0], env, bound, tableSeed) ||
             evalWithTable(f->kids[1], env, bound, tableSeed);
    case FormulaOp::ExistsF:
    case FormulaOp::ForallF: {
      bool ex = f->op == FormulaOp::ExistsF;
      for (std::uint64_t v = 0; v <= bound; ++v) {
        env[f->name] = f->varSort == Sort::Nat ? Value::ofNat(v) : Value::ofBool(v % 2);
        bool b = evalWithTable(f->kids[0], env, bound, tableSeed);
        env.erase(f->name);
        if (ex && b) return true;
        if (!ex && !b) return false;
        if (f->varSort == Sort::Bool && v == 1) break;
      }
      return !ex;
    }
    case FormulaOp::Call: {
      std::uint64_t h = tableSeed;
      for (char c : f->name) h = h * 1315423911u + static_cast<unsigned char>(c);
      for (const auto& a : f->callArgs) {
        Value v = evalData(a, env);
        h = h * 2654435761u + (v.sort == Sort::Nat ? v.nat : (v.b ? 1 : 2));
      }
      return (h >> 7) % 2 == 0;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("renameApart separates binders") {
  Pbes p = parsePbes(
      "nu X(d:N) = (exists e:N . X(e)) || (exists e:N . X(e + d));");
  FormulaPtr renamed = renameApart(p.equations[0].body, {"X"});
  CHECK(bindersDistinct(renamed));
  // alpha-equivalence spot check at desk scale
  for (std::uint64_t d = 0; d < 4; ++d) {
    Env env{{"d", Value::ofNat(d)}};
    CHECK(evalWithTable(p.equations[0].body, env, 6, 42) ==
          evalWithTable(renamed, env, 6, 42));
  }

  // binder-free formulas are unchanged
  Pbes q = parsePbes("nu X(d:N) = d = 0 && X(d);");
  CHECK(structurallyEqual(renameApart(q.equations[0].body, {}), q.equations[0].body));

  // idempotence
  FormulaPtr once = renameApart(p.equations[0].body, {"X"});
  FormulaPtr twice = renameApart(once, {"X"});
  CHECK(structurallyEqual(once, twice));
}

TEST_CASE("liftExistentials pulls binders out") {
  Pbes p = parsePbes("nu X(d:N) = (exists e:N . d + e < 10 && X(e)) || d = 0;");
  LiftedFormula lf = liftExistentials(renameApart(p.equations[0].body, {"X"}));
  REQUIRE(lf.binders.size() == 1);
  CHECK(lf.binders[0].name == "e");
  // matrix is quantifier-free
  std::vector<std::string> binders;
  collectBinders(lf.matrix, binders);
  CHECK(binders.empty());

  // bounded-domain equivalence: ∃e.matrix ≡ original on d in {0..12}
  for (std::uint64_t d = 0; d <= 12; ++d) {
    Env env{{"d", Value::ofNat(d)}};
    bool original = evalWithTable(p.equations[0].body, env, 12, 1);
    bool viaMatrix = false;
    for (std::uint64_t e = 0; e <= 12 && !viaMatrix; ++e) {
      env["e"] = Value::ofNat(e);
      viaMatrix = evalWithTable(lf.matrix, env, 12, 1);
      env.erase("e");
    }
    CHECK(original == viaMatrix);
  }

  // quantifier-free input: no binders, matrix unchanged
  Pbes q = parsePbes("nu X(d:N) = d = 0 && X(d);");
  LiftedFormula qf = liftExistentials(q.equations[0].body);
  CHECK(qf.binders.empty());
  CHECK(structurallyEqual(qf.matrix, q.equations[0].body));

  // forall is rejected
  Pbes r = parsePbes("nu X(d:N) = forall e:N . e >= 0 || X(d);");
  CHECK_THROWS_AS(liftExistentials(r.equations[0].body), UniversalNotAllowed);
}

TEST_CASE("dnfSplit distributes and splits literals from calls") {
  Pbes p = parsePbes("nu X(a:B, e:N) = (a || !a) && X(a, e);");
  // matrix: (a ∨ !a) ∧ X(a,e) → two clauses sharing the call
  LiftedFormula lf = liftExistentials(p.equations[0].body);
  auto cores = dnfSplit(lf.matrix);
  REQUIRE(cores.size() == 2);
  CHECK(cores[0].dataLits.size() == 1);
  CHECK(cores[0].calls.size() == 1);
  CHECK(cores[1].dataLits.size() == 1);
  CHECK(cores[1].calls.size() == 1);

  // single conjunction keeps call order
  Pbes q = parsePbes("nu X(e:N) = e = 0 && X(e) && X(e+1);");
  auto qc = dnfSplit(liftExistentials(q.equations[0].body).matrix);
  REQUIRE(qc.size() == 1);
  CHECK(qc[0].calls.size() == 2);

  // pure data formula: one clause with no calls
  Pbes r = parsePbes("nu X(e:N) = e = 0;");
  auto rc = dnfSplit(r.equations[0].body);
  REQUIRE(rc.size() == 1);
  CHECK(rc[0].calls.empty());

  // truth tables of the data skeleton agree
  Pbes s = parsePbes("nu X(a:B, b:B, c:B) = (a || b) && (c || a && b);");
  auto sc = dnfSplit(s.equations[0].body);
  for (int bits = 0; bits < 8; ++bits) {
    Env env{{"a", Value::ofBool(bits & 1)},
            {"b", Value::ofBool(bits & 2)},
            {"c", Value::ofBool(bits & 4)}};
    bool direct = evalWithTable(s.equations[0].body, env, 1, 0);
    bool viaDnf = false;
    for (const auto& core : sc) {
      bool all = true;
      for (const auto& lit : core.dataLits)
        if (!evalBool(lit, env)) all = false;
      if (all) viaDnf = true;
    }
    CHECK(direct == viaDnf);
  }

  // explosion guard fires loudly
  std::string big = "nu X(";
  for (int i = 0; i < 15; ++i)
    big += std::string(i ? ", " : "") + "b" + std::to_string(i) + ":B";
  big += ") = ";
  for (int i = 0; i < 15; ++i)
    big += std::string(i ? " && " : "") + "(b" + std::to_string(i) + " || !b" +
           std::to_string(i) + ")";
  big += ";";
  CHECK_THROWS_AS(toClauseForm(parsePbes(big), 10000), DnfExplosion);
}

TEST_CASE("toClauseForm on the paper systems") {
  // two clauses for the first equation: (n=0; X1(n+2)) and (n>0; X2(n-1), X1(n+2))
  ClausePbes e2 = toClauseForm(testutil::loadFixture("e2.pbes"));
  REQUIRE(e2.equations.size() == 2);
  REQUIRE(e2.equations[0].clauses.size() == 2);
  {
    const Clause& c1 = e2.equations[0].clauses[0];
    CHECK(c1.exists.empty());
    CHECK(printDataExpr(c1.constraint) == "n = 0");
    REQUIRE(c1.calls.size() == 1);
    CHECK(c1.calls[0].target == 0);
    const Clause& c2 = e2.equations[0].clauses[1];
    CHECK(printDataExpr(c2.constraint) == "n > 0");
    REQUIRE(c2.calls.size() == 2);
    CHECK(c2.calls[0].target == 1);  // X2(n-1) first
    CHECK(c2.calls[1].target == 0);
  }

  // one clause with binder n', constraint even(n), two calls
  ClausePbes e4 = toClauseForm(testutil::loadFixture("e4.pbes"));
  REQUIRE(e4.equations.size() == 1);
  REQUIRE(e4.equations[0].clauses.size() == 1);
  const Clause& c = e4.equations[0].clauses[0];
  REQUIRE(c.exists.size() == 1);
  CHECK(c.exists[0].name == "n'");
  CHECK(printDataExpr(c.constraint) == "even(n)");
  REQUIRE(c.calls.size() == 2);

  // already-clause-form input is reproduced
  ClausePbes again = toClauseForm(clausePbesToPbes(e4));
  CHECK(structurallyEqual(e4, again));
  ClausePbes e2again = toClauseForm(clausePbesToPbes(e2));
  CHECK(structurallyEqual(e2, e2again));
}

TEST_CASE("normalize output reparses to the same clause form") {
  for (const char* name : {"e1.pbes", "e2.pbes", "e4.pbes", "countdown.pbes",
                           "mccarthy3.pbes", "trivial_nu.pbes"}) {
    ClausePbes c = toClauseForm(testutil::loadFixture(name));
    std::string text = printClausePbes(c);
    ClausePbes c2 = toClauseForm(parsePbes(text));
    CHECK_MESSAGE(structurallyEqual(c, c2), "clause form not stable for ", name,
                  "\n", text);
  }
}

TEST_CASE("unused clause binders are pruned") {
  Pbes p = parsePbes("nu X(d:N) = exists e:N . (d = 0 && X(d)) || (d > 0 && X(e));");
  ClausePbes c = toClauseForm(p);
  REQUIRE(c.equations[0].clauses.size() == 2);
  CHECK(c.equations[0].clauses[0].exists.empty());      // e unused here
  CHECK(c.equations[0].clauses[1].exists.size() == 1);  // e used here
}

TEST_CASE("clause invariants hold structurally") {
  for (const char* name :
       {"e1.pbes", "e2.pbes", "e4.pbes", "countdown.pbes", "mccarthy3.pbes"}) {
    ClausePbes c = toClauseForm(testutil::loadFixture(name));
    for (const auto& eq : c.equations) {
      std::set<std::string> params;
      for (const auto& prm : eq.params) params.insert(prm.name);
      for (const auto& cl : eq.clauses) {
        std::set<std::string> allowed = params;
        for (const auto& b : cl.exists) allowed.insert(b.name);
        std::set<std::string> fv;
        collectFreeVars(cl.constraint, fv);
        for (const auto& call : cl.calls)
          for (const auto& a : call.args) collectFreeVars(a, fv);
        for (const auto& v : fv) CHECK_MESSAGE(allowed.count(v), name, ": stray ", v);
      }
    }
  }
}

TEST_CASE("semantic preservation on random mod-k systems") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t k = 2 + trial % 4;
    Pbes p = testutil::randomModKPbes(rng, k);
    ClausePbes c = toClauseForm(p);
    Pbes back = clausePbesToPbes(c);
    testutil::FiniteSemantics original(p, k);
    testutil::FiniteSemantics normalized(back, k);
    for (const auto& eq : p.equations)
      for (std::uint64_t v = 0; v < k; ++v) {
        Signature sig{eq.name, {Value::ofNat(v)}};
        REQUIRE_MESSAGE(original.holds(sig) == normalized.holds(sig),
                        "mismatch at ", sig.str(), " in\n", printPbes(p));
      }
  }
}
