#include "doctest.h"
#include "s5/search.hpp"
#include "s5/semantics.hpp"

using namespace s5;

TEST_CASE("worked examples are provable") {
  for (const char* t : {"=> (r & p) -> (q -> [](<>(p & q) & <>r))", "=> []([]~p | p) -> [](~p | []p)"}) {
    auto v = prove(parse_sequent(t));
    REQUIRE_MESSAGE(v.provable(), t);
    CHECK(v.proof->conclusion == parse_sequent(t));
    auto res = check_proof(v.proof);
    CHECK_MESSAGE(res.ok, res.reason);
    CHECK(has_subformula_property(v.proof));
  }
}

TEST_CASE("refutations") {
  for (const char* t : {"p -> []p", "<>p -> p", "[](p | q) -> ([]p | []q)", "[]<>p -> p"})
    CHECK_MESSAGE(decide_formula(parse_formula(t)).status == SearchStatus::NotProvable, t);
}

TEST_CASE("axiom five uses the printed rule set") {
  auto v = decide_formula(parse_formula("<>p -> []<>p"));
  REQUIRE(v.provable());
  for (RuleId r : rules_in_proof(v.proof))
    CHECK_MESSAGE((r == RuleId::RDia || r == RuleId::LDia || r == RuleId::RBox ||
                   r == RuleId::RImp || r == RuleId::Ax),
                  rule_name(r));
}

TEST_CASE("constants are simplified before search") {
  auto v = prove(parse_sequent("top, []p => []p"));
  REQUIRE(v.provable());
  CHECK(v.proof->conclusion == parse_sequent("[]p => []p"));
  CHECK(decide_formula(Formula::top()).provable());
  CHECK(decide_formula(Formula::bottom()).status == SearchStatus::NotProvable);
}

TEST_CASE("crown storage closes only through Exch") {
  auto v = prove(parse_sequent("=> p || p => p"));
  REQUIRE(v.provable());
  CHECK(v.proof->instance.rule == RuleId::Exch);
}

TEST_CASE("budget exhaustion is reported") {
  SearchBudget tiny{200, 3};
  CHECK(prove(parse_sequent("=> (r & p) -> (q -> [](<>(p & q) & <>r))"), tiny).status ==
        SearchStatus::BudgetExceeded);
}
