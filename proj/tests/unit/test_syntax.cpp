#include <doctest.h>

#include <random>

#include "../support/files.hpp"
#include "../support/gen.hpp"
#include "qcf/error.hpp"
#include "qcf/syntax.hpp"

using namespace qcf;
using namespace qcf::testing;

TEST_CASE("grammar examples") {
  CHECK(parse_plain_formula("G (b -> X m)") == globally(implies(atom("b"), next_time(atom("m")))));

  const CfFormula top = parse_formula("F (u & X u) would F top");
  REQUIRE(top.kind() == CfFormula::Kind::Conditional);
  CHECK(top.op() == CfOp::Would);
  CHECK(top.antecedent() == eventually(conj(atom("u"), next_time(atom("u")))));
  CHECK(top.consequent() == eventually(atom("top")));

  CHECK_THROWS_AS(parse_formula("(a would b) would c"), NestingError);
  CHECK_THROWS_AS(parse_formula("G (a would b)"), NestingError);
  CHECK_THROWS_AS(parse_formula("a would (b might c)"), NestingError);
}

TEST_CASE("precedence") {
  const Formula a = atom("a"), b = atom("b"), c = atom("c");
  CHECK(parse_plain_formula("a & b | c") == disj(conj(a, b), c));
  CHECK(parse_plain_formula("a | b & c") == disj(a, conj(b, c)));
  CHECK(parse_plain_formula("a -> b -> c") == implies(a, implies(b, c)));
  CHECK(parse_plain_formula("a U b U c") == until(a, until(b, c)));
  CHECK(parse_plain_formula("a U b & c") == conj(until(a, b), c));
  CHECK(parse_plain_formula("!a U b") == until(negate(a), b));
  CHECK(parse_plain_formula("a <-> b -> c") == iff(a, implies(b, c)));
  CHECK(parse_plain_formula("X X a R b") == release(next_time(next_time(a)), b));
  CHECK(parse_plain_formula("exists q. q & a") == exists("q", conj(atom("q"), a)));

  const CfFormula f = parse_formula("a & b would c");
  REQUIRE(f.kind() == CfFormula::Kind::Conditional);
  CHECK(f.antecedent() == conj(a, b));
  CHECK_THROWS_AS(parse_formula("a would b would c"), SyntaxError);
}

TEST_CASE("rendering") {
  CHECK(render_formula(globally(atom("a"))) == "G a");
  const CfFormula ex18 =
      CfFormula::conditional(CfOp::MightMin, negate(conj(atom("f"), atom("m"))), negate(atom("f")));
  CHECK(render_formula(ex18) == "!(f & m) mightmin !f");

  const CfFormula top = parse_formula("F (u & X u) would F top");
  CHECK(parse_formula(render_formula(top)) == top);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_formula("a &\n  & b");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_formula(""), SyntaxError);
  CHECK_THROWS_AS(parse_formula("a b"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(a"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("a $ b"), SyntaxError);
  CHECK_THROWS_AS(parse_plain_formula("a would b"), NestingError);
}

TEST_CASE("quantifier scoping") {
  CHECK_THROWS_AS(parse_formula("exists q. exists q. q"), ScopeError);
  CHECK_THROWS_AS(parse_formula("q & exists q. q"), ScopeError);
  CHECK_NOTHROW(parse_formula("(exists q. q) & (exists q. X q)"));
}

TEST_CASE("free atoms") {
  CHECK(free_atoms(parse_formula("exists q. F (q & b)")) == std::set<std::string>{"b"});
  CHECK(free_atoms(parse_formula("a & !a")) == std::set<std::string>{"a"});
  const Formula elevator = parse_plain_formula(strip_comments(data_file("elevator.ltl")));
  CHECK(free_atoms(elevator) == std::set<std::string>{"b", "d", "m", "top", "u"});
  CHECK(free_atoms(parse_formula("a would exists q. q & b")) == std::set<std::string>{"a", "b"});
}

TEST_CASE("disjunction desugars to negated conjunction") {
  CHECK(normalize(parse_formula("x | y")) == normalize(parse_formula("!(!x & !y)")));
  CHECK(normalize(parse_formula("(a would b) | c")) == normalize(parse_formula("!(!(a would b) & !c)")));
}

TEST_CASE("random round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    FormulaGen gen{rng};
    gen.quantifiers = true;
    const Formula f = gen.plain(4);
    CAPTURE(render_formula(f));
    CHECK(parse_plain_formula(render_formula(f)) == f);
    const CfFormula xi = gen.top(3);
    CAPTURE(render_formula(xi));
    CHECK(parse_formula(render_formula(xi)) == canonical(xi));
  }
}
