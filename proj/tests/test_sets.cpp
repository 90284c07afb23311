#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epbes/eval.hpp"
#include "epbes/set_expr.hpp"
#include "helpers.hpp"

using namespace epbes;

namespace {

DataExprPtr evenOf(const std::string& v) {
  return dx::cmp(DataOp::Eq, dx::modc(dx::var(v, Sort::Nat), 2), dx::natc(0));
}

SetExpr natSet(DataExprPtr body) { return SetExpr{{{"n", Sort::Nat}}, {}, body}; }

// brute-force membership of a 1-nat-var set via ground evaluation; the
// body must be quantifier-free
bool bruteContains(const SetExpr& a, std::uint64_t n) {
  Env env{{a.primary[0].name, Value::ofNat(n)}};
  return evalBool(a.body, env);
}

}  // namespace

TEST_CASE("meet intersects") {
  SolverSession s(testutil::testSmtConfig());
  SetExpr evens = natSet(evenOf("n"));
  SetExpr small = natSet(dx::cmp(DataOp::Lt, dx::var("n", Sort::Nat), dx::natc(4)));
  SetExpr both = meet(evens, small);
  // {0, 2}: enumerate n <= 10
  for (std::uint64_t n = 0; n <= 10; ++n) {
    bool expect = n % 2 == 0 && n < 4;
    CHECK(contains(both, std::vector<Value>{Value::ofNat(n)}, s) == expect);
  }
  // identity element
  SetExpr full = fullSet({{"n", Sort::Nat}});
  CHECK(isEmpty(meet(meet(evens, full), complement(evens)), s));
  // contradiction
  CHECK(isEmpty(meet(evens, complement(evens)), s));
  // signature mismatch
  SetExpr other{{{"m", Sort::Nat}}, {}, dx::boolc(true)};
  CHECK_THROWS_AS(meet(evens, other), Error);
}

TEST_CASE("complement laws") {
  SolverSession s(testutil::testSmtConfig());
  SetExpr evens = natSet(evenOf("n"));
  // double complement is denotationally the identity: the symmetric
  // difference with the original is empty
  SetExpr cc = complement(complement(evens));
  CHECK(isEmpty(meet(evens, complement(cc)), s));
  CHECK(isEmpty(meet(cc, complement(evens)), s));
  // complement of empty is full
  SetExpr empty = natSet(dx::boolc(false));
  CHECK(isEmpty(empty, s));
  CHECK(!isEmpty(complement(empty), s));
  // complement(n >= 10) = {n < 10} over Nat
  SetExpr big = natSet(dx::cmp(DataOp::Ge, dx::var("n", Sort::Nat), dx::natc(10)));
  SetExpr low = complement(big);
  for (std::uint64_t n = 0; n <= 20; ++n)
    CHECK(contains(low, std::vector<Value>{Value::ofNat(n)}, s) == (n < 10));
}

TEST_CASE("isEmpty on the paper examples") {
  SolverSession s(testutil::testSmtConfig());
  // {n | n < 0} is empty over Nat
  CHECK(isEmpty(natSet(dx::cmp(DataOp::Lt, dx::var("n", Sort::Nat), dx::natc(0))), s));
  // even && odd is empty
  auto oddOf = dx::cmp(DataOp::Eq, dx::modc(dx::var("n", Sort::Nat), 2), dx::natc(1));
  CHECK(isEmpty(natSet(dx::andE({evenOf("n"), oddOf})), s));
  // pair set: even(n) && n=2 && 3n+5n' = 11 is nonempty (witness n'=1)
  SetExpr pair{{{"n", Sort::Nat}},
               {{"n'", Sort::Nat}},
               dx::andE({evenOf("n"),
                         dx::cmp(DataOp::Eq, dx::var("n", Sort::Nat), dx::natc(2)),
                         dx::cmp(DataOp::Eq,
                                 dx::add(dx::mulc(3, dx::var("n", Sort::Nat)),
                                         dx::mulc(5, dx::var("n'", Sort::Nat))),
                                 dx::natc(11))})};
  CHECK(!isEmpty(pair, s));
  auto w = secondaryWitness(pair, std::vector<Value>{Value::ofNat(2)}, nullptr, s);
  REQUIRE(w.has_value());
  CHECK((*w)[0] == Value::ofNat(1));
}

TEST_CASE("contains decides membership through the solver") {
  SolverSession s(testutil::testSmtConfig());
  SetExpr evens = natSet(evenOf("n"));
  CHECK(contains(evens, std::vector<Value>{Value::ofNat(2)}, s));
  CHECK(!contains(evens, std::vector<Value>{Value::ofNat(3)}, s));
  // body with a quantifier: {n | exists e. n + e < 10} at 9 (witness 0)
  SetExpr withQ = natSet(dx::exists(
      "e", Sort::Nat,
      dx::cmp(DataOp::Lt, dx::add(dx::var("n", Sort::Nat), dx::var("e", Sort::Nat)),
              dx::natc(10))));
  CHECK(contains(withQ, std::vector<Value>{Value::ofNat(9)}, s));
  CHECK(!contains(withQ, std::vector<Value>{Value::ofNat(10)}, s));
}

TEST_CASE("existsProject projects pair sets") {
  SolverSession s(testutil::testSmtConfig());
  // λ(d,e). d+e<10 → {d | d < 10}
  SetExpr pair{{{"d", Sort::Nat}},
               {{"e", Sort::Nat}},
               dx::cmp(DataOp::Lt,
                       dx::add(dx::var("d", Sort::Nat), dx::var("e", Sort::Nat)),
                       dx::natc(10))};
  SetExpr proj = existsProject(pair);
  CHECK(proj.secondary.empty());
  for (std::uint64_t d = 0; d <= 15; ++d)
    CHECK(contains(proj, std::vector<Value>{Value::ofNat(d)}, s) == (d < 10));
  // empty pair set projects to empty
  SetExpr emptyPair{{{"d", Sort::Nat}}, {{"e", Sort::Nat}}, dx::boolc(false)};
  CHECK(isEmpty(existsProject(emptyPair), s));
  // λ(d,e). e = d+1 projects to the full set
  SetExpr succ{{{"d", Sort::Nat}},
               {{"e", Sort::Nat}},
               dx::cmp(DataOp::Eq, dx::var("e", Sort::Nat),
                       dx::add(dx::var("d", Sort::Nat), dx::natc(1)))};
  CHECK(isEmpty(complement(existsProject(succ)), s));
}

TEST_CASE("substituteInto computes inverse images") {
  SolverSession s(testutil::testSmtConfig());
  // target λn. even(n), args (3n+5n') → λ(n,n'). even(3n+5n')
  SetExpr evens = natSet(evenOf("n"));
  std::vector<Param> prim{{"n", Sort::Nat}};
  std::vector<Param> sec{{"n'", Sort::Nat}};
  DataExprPtr arg = dx::add(dx::mulc(3, dx::var("n", Sort::Nat)),
                            dx::mulc(5, dx::var("n'", Sort::Nat)));
  SetExpr inv = substituteInto(evens, prim, sec, {arg});
  CHECK(contains(inv, std::vector<Value>{Value::ofNat(2), Value::ofNat(0)}, s));
  CHECK(!contains(inv, std::vector<Value>{Value::ofNat(2), Value::ofNat(1)}, s));
  // identity map keeps the body
  SetExpr same = substituteInto(evens, prim, {}, {dx::var("n", Sort::Nat)});
  CHECK(structurallyEqual(same.body, evens.body));
  // empty target stays empty
  SetExpr none = natSet(dx::boolc(false));
  CHECK(isEmpty(substituteInto(none, prim, sec, {arg}), s));
  // arity mismatch
  CHECK_THROWS_AS(substituteInto(evens, prim, sec, {arg, arg}), Error);
}

TEST_CASE("substitution into projected bodies avoids capture") {
  SolverSession s(testutil::testSmtConfig());
  // target {d | exists e. d = 2e}: even numbers via a quantified body
  SetExpr target{{{"d", Sort::Nat}},
                 {},
                 dx::exists("e", Sort::Nat,
                            dx::cmp(DataOp::Eq, dx::var("d", Sort::Nat),
                                    dx::mulc(2, dx::var("e", Sort::Nat))))};
  // substitute the argument map d := d + e where e is a *binder* name of
  // the new signature
  std::vector<Param> prim{{"d", Sort::Nat}};
  std::vector<Param> sec{{"e", Sort::Nat}};
  DataExprPtr arg = dx::add(dx::var("d", Sort::Nat), dx::var("e", Sort::Nat));
  SetExpr inv = substituteInto(target, prim, sec, {arg});
  // (d,e) in inv iff d+e even
  for (std::uint64_t d = 0; d <= 4; ++d)
    for (std::uint64_t e = 0; e <= 4; ++e)
      CHECK(contains(inv, std::vector<Value>{Value::ofNat(d), Value::ofNat(e)}, s) ==
            ((d + e) % 2 == 0));
}

TEST_CASE("bounded agreement between contains and direct evaluation") {
  SolverSession s(testutil::testSmtConfig());
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::uint64_t> cst(0, 9);
  std::uniform_int_distribution<int> pick(0, 5);
  std::function<DataExprPtr(int)> gen = [&](int depth) -> DataExprPtr {
    DataExprPtr v = dx::var("n", Sort::Nat);
    if (depth == 0 || pick(rng) == 0) {
      switch (pick(rng) % 4) {
        case 0: return dx::cmp(DataOp::Le, v, dx::natc(cst(rng)));
        case 1: return dx::cmp(DataOp::Eq, dx::modc(v, 1 + cst(rng) % 4),
                               dx::natc(cst(rng) % 2));
        case 2: return dx::cmp(DataOp::Gt, dx::add(v, dx::natc(cst(rng))),
                               dx::natc(cst(rng)));
        default: return dx::cmp(DataOp::Eq, v, dx::natc(cst(rng)));
      }
    }
    switch (pick(rng) % 3) {
      case 0: return dx::andE({gen(depth - 1), gen(depth - 1)});
      case 1: return dx::orE({gen(depth - 1), gen(depth - 1)});
      default: return dx::notE(gen(depth - 1));
    }
  };
  for (int trial = 0; trial < 60; ++trial) {
    SetExpr a = natSet(gen(3));
    bool sawMember = false;
    for (std::uint64_t n = 0; n < 64; ++n) {
      bool direct = bruteContains(a, n);
      CHECK(contains(a, std::vector<Value>{Value::ofNat(n)}, s) == direct);
      if (direct) sawMember = true;
    }
    // isEmpty ⇔ no member below the bound, for this atom vocabulary
    // (constants stay below 20, so 64 covers every boundary)
    CHECK(isEmpty(a, s) == !sawMember);
  }
}

TEST_CASE("boolean algebra laws via symmetric differences") {
  SolverSession s(testutil::testSmtConfig());
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::uint64_t> cst(0, 9);
  auto randomSet = [&]() {
    DataExprPtr v = dx::var("n", Sort::Nat);
    DataExprPtr a = dx::cmp(DataOp::Le, v, dx::natc(cst(rng)));
    DataExprPtr b = dx::cmp(DataOp::Eq, dx::modc(v, 2 + cst(rng) % 3),
                            dx::natc(cst(rng) % 2));
    return natSet(cst(rng) % 2 ? dx::andE({a, b}) : dx::orE({a, b}));
  };
  auto equalSets = [&](const SetExpr& x, const SetExpr& y) {
    return isEmpty(meet(x, complement(y)), s) && isEmpty(meet(y, complement(x)), s);
  };
  for (int trial = 0; trial < 25; ++trial) {
    SetExpr a = randomSet(), b = randomSet(), c = randomSet();
    // commutativity and associativity of meet
    CHECK(equalSets(meet(a, b), meet(b, a)));
    CHECK(equalSets(meet(meet(a, b), c), meet(a, meet(b, c))));
    // de Morgan: ¬(a ∩ b) = ¬a ∪ ¬b, checked through complements
    SetExpr lhs = complement(meet(a, b));
    SetExpr rhs = complement(meet(complement(complement(a)), complement(complement(b))));
    CHECK(equalSets(lhs, rhs));
    // idempotence
    CHECK(equalSets(meet(a, a), a));
  }
}
