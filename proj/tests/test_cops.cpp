#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrsnc/cops.hpp"
#include "support/gen.hpp"
#include "support/helpers.hpp"

using namespace ctrsnc;
using testsupport::Gen;

TEST_CASE("parse: three-rule conditional system") {
  CopsDocument doc = parse_cops(
      "(CONDITIONTYPE ORIENTED)"
      "(VAR x y z z')"
      "(RULES +(0,y) -> y  +(s(x),y) -> +(x,s(y))"
      "  f(x,y) -> z | +(x,y) == +(z,z'))");
  REQUIRE(doc.system.rules().size() == 3);
  const Rule& r0 = doc.system.rules()[0];
  CHECK(r0.lhs == Term::app("+", {Term::app("0"), Term::var("y")}));
  CHECK(r0.rhs == Term::var("y"));
  CHECK(r0.unconditional());
  const Rule& r2 = doc.system.rules()[2];
  CHECK(r2.lhs == Term::app("f", {Term::var("x"), Term::var("y")}));
  CHECK(r2.rhs == Term::var("z"));
  REQUIRE(r2.conditions.size() == 1);
  CHECK(r2.conditions[0].first ==
        Term::app("+", {Term::var("x"), Term::var("y")}));
  CHECK(r2.conditions[0].second ==
        Term::app("+", {Term::var("z"), Term::var("z'")}));
  CHECK(doc.system.signature().at("+") == 2);
  CHECK(doc.system.signature().at("0") == 0);
  CHECK(doc.declared_variables ==
        std::vector<std::string>{"x", "y", "z", "z'"});
}

TEST_CASE("parse: empty system") {
  CopsDocument doc = parse_cops("(VAR)(RULES )");
  CHECK(doc.system.rules().empty());
  CHECK(doc.system.signature().empty());
}

TEST_CASE("parse: variable left-hand side is rejected") {
  CHECK_THROWS_AS(parse_cops("(VAR x)(RULES x -> a)"), ParseError);
  try {
    parse_cops("(VAR x)\n(RULES x -> a)");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("variable") != std::string::npos);
  }
  // Undeclared identifiers are constants, so the same shape is legal.
  CHECK(parse_cops("(RULES x -> a)").system.rules().size() == 1);
}

TEST_CASE("parse: error cases carry locations") {
  CHECK_THROWS_AS(parse_cops("(RULES f(x) -> f(x,x))"), ParseError);   // arity
  CHECK_THROWS_AS(parse_cops("(CONDITIONTYPE JOIN)(VAR)(RULES )"),
                  ParseError);                                         // type
  CHECK_THROWS_AS(parse_cops("(VAR x)(RULES f(x) -> x | x == x)"),
                  ParseError);  // conditional rules need a CONDITIONTYPE
  CHECK_THROWS_AS(parse_cops("(VAR _v1)(RULES a -> b)"), ParseError);  // reserved
  CHECK_THROWS_AS(parse_cops("(VAR x)(RULES x(a) -> a)"), ParseError); // var head
  CHECK_THROWS_AS(parse_cops("(RULES a -> )"), ParseError);
  CHECK_THROWS_AS(parse_cops("(RULES a -> b"), ParseError);
  CHECK_THROWS_AS(parse_cops("(FOO)(RULES )"), ParseError);
  CHECK_THROWS_AS(parse_cops("no sections"), ParseError);
  CHECK_THROWS_AS(parse_cops(""), ParseError);  // missing RULES
  try {
    parse_cops("(RULES\n  f(a) -> b\n  f(a,a) -> b)");
    FAIL("expected a diagnostic");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("parse: comments are ignored, sections reorder") {
  CopsDocument doc = parse_cops(
      "(COMMENT from the (nested) database, \"quotes\" welcome)"
      "(RULES f(x) -> a)"
      "(VAR x)");
  CHECK(doc.system.rules().size() == 1);
  CHECK(doc.system.rules()[0].lhs == Term::app("f", {Term::var("x")}));
  REQUIRE(doc.comment);
  CHECK(doc.comment->find("nested") != std::string::npos);
}

TEST_CASE("print: empty system has the exact canonical shape") {
  CHECK(print_cops(Ctrs{}) == "(CONDITIONTYPE ORIENTED)\n(VAR )\n(RULES\n)");
}

TEST_CASE("print then parse: fixtures round-trip with order preserved") {
  for (const char* name : {"cops_320.trs", "cops_271.trs", "cops_262.trs"}) {
    Ctrs system = testsupport::load_fixture(name);
    Ctrs again = parse_cops(print_cops(system)).system;
    CHECK(again == system);
  }
}

TEST_CASE("print then parse: identity on random systems") {
  Gen gen(1101);
  for (int i = 0; i < 500; ++i) {
    Gen::SystemOptions opts;
    Ctrs system = gen.system(opts);
    CAPTURE(print_cops(system));
    Ctrs again = parse_cops(print_cops(system)).system;
    CHECK(again == system);
  }
}

TEST_CASE("parse is total on arbitrary bytes") {
  std::mt19937 rng(1102);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 60);
  const std::string pieces[] = {"(", ")", "RULES", "VAR", "->", "==",
                                "|",  ",", "f(x)", " ",   "\n"};
  for (int i = 0; i < 3000; ++i) {
    std::string input;
    int n = len(rng);
    for (int k = 0; k < n; ++k) {
      if (rng() % 2)
        input += static_cast<char>(byte(rng));
      else
        input += pieces[rng() % std::size(pieces)];
    }
    try {
      parse_cops(input);
    } catch (const ParseError&) {
      // a diagnostic is the expected outcome for junk
    }
  }
}
