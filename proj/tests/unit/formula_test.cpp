#include "doctest.h"
#include "s5/formula.hpp"

using namespace s5;

namespace {
Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
}

TEST_CASE("parse respects precedence and associativity") {
  auto f = parse_formula("(r & p) -> (q -> []( <>(p & q) & <>r ))");
  auto want = Formula::imp(
      Formula::conj(r, p),
      Formula::imp(q, Formula::box(Formula::conj(Formula::dia(Formula::conj(p, q)),
                                                 Formula::dia(r)))));
  CHECK(f == want);
  CHECK(parse_formula("p -> q -> r") == Formula::imp(p, Formula::imp(q, r)));
  CHECK(parse_formula("p | q & r") == Formula::disj(p, Formula::conj(q, r)));
  CHECK(parse_formula("~[]p & q") == Formula::conj(Formula::neg(Formula::box(p)), q));
  CHECK(parse_formula("p <-> q") == Formula::iff(p, q));
  CHECK(parse_formula("bot -> top") == Formula::imp(Formula::bottom(), Formula::top()));
}

TEST_CASE("syntax errors carry the offset") {
  try {
    parse_formula("p &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("P"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
}

TEST_CASE("render round-trips") {
  for (const char* text : {"p", "~~p", "(p -> q) -> r", "p -> q -> r", "p & (q & r)",
                           "(p | q) & r", "[](p -> <>q)", "~(p & q) | []~r", "bot", "top & p"}) {
    auto f = parse_formula(text);
    CHECK(parse_formula(render_formula(f)) == f);
  }
  CHECK(render_formula(parse_formula("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(render_formula(parse_formula("p & (q & r)")) == "p & (q & r)");
}

TEST_CASE("classify") {
  CHECK(classify(Formula::box(Formula::imp(p, q))) == FormulaClass::Modal);
  CHECK(classify(p) == FormulaClass::Atomic);
  CHECK(classify(Formula::neg(Formula::box(p))) == FormulaClass::Compound);
  CHECK(classify(Formula::top()) == FormulaClass::Constant);
}

TEST_CASE("subformulas") {
  CHECK(subformulas(Formula::dia(p)).size() == 2);
  CHECK(subformulas(Formula::imp(p, Formula::box(p))).size() == 3);
  CHECK(subformulas(Formula::bottom()).size() == 1);
  auto f = parse_formula("(p & q) | (p & q)");
  CHECK(subformulas(f).size() <= f.size());
}

TEST_CASE("constant simplification") {
  CHECK(simplify_constants(parse_formula("p & top")) == p);
  CHECK(simplify_constants(parse_formula("p -> bot")) == Formula::neg(p));
  CHECK(simplify_constants(parse_formula("[]top")) == Formula::top());
  CHECK(simplify_constants(parse_formula("<>(p | top) -> q")) == q);
}
