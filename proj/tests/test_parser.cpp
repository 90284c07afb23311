#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epbes/parser.hpp"
#include "epbes/printer.hpp"
#include "helpers.hpp"

using namespace epbes;

TEST_CASE("parses the even-doubling system") {
  Pbes p = parsePbes(
      "nu X1(n:N) = exists n':N . even(n) && X1(3*n+5*n') && X1(4*n+5*n');");
  REQUIRE(p.equations.size() == 1);
  const Equation& eq = p.equations[0];
  CHECK(!eq.isMu);
  CHECK(eq.name == "X1");
  REQUIRE(eq.params.size() == 1);
  CHECK(eq.params[0].name == "n");
  CHECK(eq.params[0].sort == Sort::Nat);
  REQUIRE(eq.body->op == FormulaOp::ExistsF);
  CHECK(eq.body->name == "n'");
}

TEST_CASE("empty input is a syntax error") {
  CHECK_THROWS_WITH_AS(parsePbes(""), "1:1: no equations", ParseError);
  CHECK_THROWS_AS(parsePbes("   \n  "), ParseError);
}

TEST_CASE("round trip is the identity on all fixtures") {
  for (const char* name : {"e1.pbes", "e2.pbes", "e4.pbes", "countdown.pbes",
                           "mccarthy3.pbes", "mccarthy10.pbes", "trivial_nu.pbes"}) {
    Pbes p = parsePbes(testutil::readFile(testutil::fixturePath(name)));
    Pbes q = parsePbes(printPbes(p));
    CHECK_MESSAGE(structurallyEqual(p, q), "round trip failed for ", name);
    // and printing is stable
    CHECK(printPbes(p) == printPbes(q));
  }
}

TEST_CASE("precedence and scope") {
  // && binds tighter than ||
  Pbes p = parsePbes("nu X(a:B, b:B, c:B, d:B) = a && b || c && d;");
  REQUIRE(p.equations[0].body->op == FormulaOp::OrF);
  CHECK(p.equations[0].body->kids[0]->op == FormulaOp::AndF);
  CHECK(p.equations[0].body->kids[1]->op == FormulaOp::AndF);

  // quantifier scope extends maximally right
  Pbes q = parsePbes("nu X(n:N) = exists m:N . m > n || X(m);");
  REQUIRE(q.equations[0].body->op == FormulaOp::ExistsF);
  CHECK(q.equations[0].body->kids[0]->op == FormulaOp::OrF);

  // parenthesized data continues as a data expression
  Pbes r = parsePbes("nu X(n:N) = (1+2) < n && X(n);");
  REQUIRE(r.equations[0].body->op == FormulaOp::AndF);

  // comparison does not chain
  CHECK_THROWS_AS(parsePbes("nu X(n:N) = 1 < n < 3;"), ParseError);

  // mod binds tighter than +: n + n mod 2 = n + (n mod 2)
  Pbes s = parsePbes("nu X(n:N) = n + n mod 2 = 0 && X(n);");
  const auto& cmp = s.equations[0].body->kids[0];
  REQUIRE(cmp->op == FormulaOp::Data);
  CHECK(cmp->data->args[0]->op == DataOp::Add);
}

TEST_CASE("diagnostics carry line and column") {
  try {
    parsePbes("nu X(n:N) =\n  X(n &&);");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
  try {
    parsePbes("nu X(n:N) = zz = 0;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unbound data variable") != std::string::npos);
  }
}

TEST_CASE("grammar corners") {
  // forall is accepted by the parser (rejected later by the normalizer)
  Pbes p = parsePbes("nu X(n:N) = forall m:N . m >= 0 || X(n);");
  CHECK(containsForall(p.equations[0].body));

  // constant multiplication both ways, nonlinear rejected
  CHECK(parsePbes("nu X(n:N) = X(3*n);").equations[0].body->callArgs[0]->op ==
        DataOp::MulConst);
  CHECK(parsePbes("nu X(n:N) = X(n*3);").equations[0].body->callArgs[0]->op ==
        DataOp::MulConst);
  CHECK_THROWS_AS(parsePbes("nu X(n:N) = X(n*n);"), ParseError);

  // mod needs a positive constant
  CHECK_THROWS_AS(parsePbes("nu X(n:N) = X(n mod 0);"), ParseError);
  CHECK_THROWS_AS(parsePbes("nu X(n:N) = X(n mod n);"), ParseError);

  // zero-parameter equations and calls
  Pbes q = parsePbes("nu T() = T();");
  CHECK(q.equations[0].params.empty());

  // primes in identifiers
  Pbes r = parsePbes("nu X(n':N) = X(n' + 1);");
  CHECK(r.equations[0].params[0].name == "n'");

  // negation applies to data only
  Pbes s = parsePbes("nu X(b:B) = !b && X(b);");
  CHECK(s.equations[0].body->kids[0]->data->op == DataOp::Not);
  CHECK_THROWS_AS(parsePbes("nu X(b:B) = !X(b);"), ParseError);
}

TEST_CASE("query parsing") {
  Signature sig = parseQuery("X1(2)");
  CHECK(sig.var == "X1");
  REQUIRE(sig.args.size() == 1);
  CHECK(sig.args[0] == Value::ofNat(2));

  Signature m = parseQuery("M(0, 4)");
  CHECK(m.args.size() == 2);

  Signature t = parseQuery("X_T()");
  CHECK(t.args.empty());

  Signature b = parseQuery("P(true, 3)");
  CHECK(b.args[0] == Value::ofBool(true));

  CHECK_THROWS_AS(parseQuery("X1(2) extra"), ParseError);
  CHECK_THROWS_AS(parseQuery("X1(-2)"), ParseError);
  CHECK_THROWS_AS(parseQuery("(2)"), ParseError);

  Pbes p = parsePbes("nu X(n:N) = X(n);");
  CHECK_THROWS_AS(checkQuery(p, parseQuery("Y(1)")), Error);
  CHECK_THROWS_AS(checkQuery(p, parseQuery("X(1, 2)")), Error);
  CHECK_THROWS_AS(checkQuery(p, parseQuery("X(true)")), Error);
  checkQuery(p, parseQuery("X(7)"));
}

TEST_CASE("printer emits parity sugar") {
  Pbes p = parsePbes("nu X(n:N) = even(n) && X(n+2);");
  std::string text = printPbes(p);
  CHECK(text.find("even(n)") != std::string::npos);
  CHECK(structurallyEqual(parsePbes(text), p));
}
