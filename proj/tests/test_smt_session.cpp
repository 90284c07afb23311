#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epbes/eval.hpp"
#include "epbes/smt.hpp"
#include "helpers.hpp"

using namespace epbes;

TEST_CASE("session answers basic queries") {
  SolverSession s(testutil::testSmtConfig());

  SmtQuery q1;
  q1.assertion = dx::cmp(DataOp::Eq, dx::natc(0), dx::natc(1));
  CHECK(s.check(q1).verdict == SmtVerdict::Unsat);

  SmtQuery q2;
  q2.consts = {{"n", Sort::Nat}};
  q2.assertion = dx::cmp(DataOp::Lt, dx::var("n", Sort::Nat), dx::natc(1));
  SmtResult r2 = s.check(q2, true);
  REQUIRE(r2.verdict == SmtVerdict::Sat);
  CHECK(r2.model.at("n") == Value::ofNat(0));

  // exists e. 6+5e = 11
  SmtQuery q3;
  q3.assertion = dx::exists(
      "e", Sort::Nat,
      dx::cmp(DataOp::Eq, dx::add(dx::natc(6), dx::mulc(5, dx::var("e", Sort::Nat))),
              dx::natc(11)));
  CHECK(s.check(q3).verdict == SmtVerdict::Sat);

  CHECK(s.queryCount() == 3);
}

TEST_CASE("session caches repeated scripts") {
  SolverSession s(testutil::testSmtConfig());
  SmtQuery q;
  q.consts = {{"n", Sort::Nat}};
  q.assertion = dx::cmp(DataOp::Ge, dx::var("n", Sort::Nat), dx::natc(5));
  CHECK(s.check(q).verdict == SmtVerdict::Sat);
  std::uint64_t calls = s.solverCallCount();
  for (int i = 0; i < 10; ++i) CHECK(s.check(q).verdict == SmtVerdict::Sat);
  CHECK(s.solverCallCount() == calls);
  CHECK(s.queryCount() == 11);
}

TEST_CASE("session survives a solver crash") {
  SolverSession s(testutil::testSmtConfig());
  SmtQuery q;
  q.assertion = dx::boolc(true);
  CHECK(s.check(q).verdict == SmtVerdict::Sat);
  // a garbage executable path fails immediately
  SolverSession bad(SmtConfig{{"/nonexistent-solver-binary"}, 1000});
  CHECK_THROWS_AS(bad.check(q), SolverCrash);
}

TEST_CASE("evalData agrees with the SMT encoding on random ground terms") {
  SolverSession s(testutil::testSmtConfig());
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> op(0, 9);
  std::uniform_int_distribution<std::uint64_t> cst(0, 12);
  std::uniform_int_distribution<int> varPick(0, 2);

  const std::vector<std::string> natVars{"a", "b"};
  const std::string boolVar = "p";

  std::function<DataExprPtr(int, bool)> gen = [&](int depth, bool wantBool) -> DataExprPtr {
    if (wantBool) {
      if (depth == 0) return dx::boolc(cst(rng) % 2 == 0);
      switch (op(rng) % 6) {
        case 0: return dx::cmp(DataOp::Eq, gen(depth - 1, false), gen(depth - 1, false));
        case 1: return dx::cmp(DataOp::Le, gen(depth - 1, false), gen(depth - 1, false));
        case 2: return dx::cmp(DataOp::Gt, gen(depth - 1, false), gen(depth - 1, false));
        case 3: return dx::notE(gen(depth - 1, true));
        case 4: return dx::andE({gen(depth - 1, true), gen(depth - 1, true)});
        default: return dx::var(boolVar, Sort::Bool);
      }
    }
    if (depth == 0) {
      if (op(rng) % 2)
        return dx::var(natVars[varPick(rng) % 2], Sort::Nat);
      return dx::natc(cst(rng));
    }
    switch (op(rng) % 5) {
      case 0: return dx::add(gen(depth - 1, false), gen(depth - 1, false));
      case 1: return dx::monus(gen(depth - 1, false), gen(depth - 1, false));
      case 2: return dx::mulc(cst(rng) % 4, gen(depth - 1, false));
      case 3: return dx::modc(gen(depth - 1, false), 1 + cst(rng) % 5);
      default: return dx::natc(cst(rng));
    }
  };

  for (int trial = 0; trial < 1000; ++trial) {
    DataExprPtr e = gen(3, trial % 2 == 0);
    Env env{{"a", Value::ofNat(cst(rng))},
            {"b", Value::ofNat(cst(rng))},
            {"p", Value::ofBool(cst(rng) % 2 == 0)}};
    Value v = evalData(e, env);

    // assert enc(e) != v under the env bindings; must be unsat
    std::map<std::string, DataExprPtr> sub;
    for (const auto& [name, val] : env)
      sub[name] = val.sort == Sort::Nat ? dx::natc(val.nat) : dx::boolc(val.b);
    DataExprPtr bound = substituteData(e, sub);
    DataExprPtr expected = v.sort == Sort::Nat ? dx::natc(v.nat) : dx::boolc(v.b);
    SmtQuery q;
    q.assertion = dx::cmp(DataOp::Ne, bound, expected);
    REQUIRE(s.check(q).verdict == SmtVerdict::Unsat);
  }
}

TEST_CASE("monus encoding matches the guarded conditional") {
  SolverSession s(testutil::testSmtConfig());
  // 1 - 2 = 0 under monus
  SmtQuery q;
  q.assertion = dx::cmp(DataOp::Eq, dx::monus(dx::natc(1), dx::natc(2)), dx::natc(0));
  CHECK(s.check(q).verdict == SmtVerdict::Sat);
  CHECK(evalData(dx::monus(dx::natc(1), dx::natc(2)), {}) == Value::ofNat(0));
}
