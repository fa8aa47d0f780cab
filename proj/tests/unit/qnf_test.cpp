#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "s5/qnf.hpp"

using namespace s5;

namespace {
Formula f(const char* t) { return parse_formula(t); }
}

TEST_CASE("already in CQNF") {
  auto g = f("(~[](a -> b) | p | <>c) & ~q & ([]<>a | ~<>(a & b) | ~r)");
  auto n = to_cqnf(g);
  REQUIRE(n.clauses.size() == 3);
  CHECK(qnf_equivalent(g, n));
  CHECK(n.clauses[1].q.contains(f("q")));
}

TEST_CASE("simple conversions") {
  auto a = to_cqnf(f("p"));
  REQUIRE(a.clauses.size() == 1);
  CHECK(a.clauses[0].p.contains(f("p")));
  CHECK(render_qnf(to_cqnf(f("p"))) == "p");

  auto b = to_cqnf(f("<>p -> q"));
  REQUIRE(b.clauses.size() == 1);
  CHECK(b.clauses[0].n.contains(f("<>p")));
  CHECK(b.clauses[0].p.contains(f("q")));

  CHECK(qnf_equivalent(f("[]p -> []p"), to_cqnf(f("[]p -> []p"))));
  CHECK(to_cqnf(f("[]p -> []p")).constant() == true);
  CHECK(to_dqnf(f("p & ~p")).constant() == false);
  CHECK(qnf_equivalent(f("p & ~p"), to_dqnf(f("p & ~p"))));
}

TEST_CASE("modal cores stay intact") {
  auto n = to_cqnf(f("~[](p & top) | q"));
  REQUIRE(n.clauses.size() == 1);
  CHECK(n.clauses[0].n.contains(f("[](p & top)")));
}

TEST_CASE("constants") {
  CHECK(to_cqnf(f("p | top")).constant() == true);
  CHECK(to_cqnf(f("p & bot")).constant() == false);
  CHECK(to_dqnf(f("p | top")).constant() == true);
  CHECK(qnf_equivalent(f("(p -> bot) & top"), to_dqnf(f("(p -> bot) & top"))));
}

TEST_CASE("random formulas are quasi-equivalent to both forms") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto g = testing::random_formula(rng, 12, {"p", "q", "r"}, true);
    CHECK_MESSAGE(qnf_equivalent(g, to_cqnf(g)), render_formula(g));
    CHECK_MESSAGE(qnf_equivalent(g, to_dqnf(g)), render_formula(g));
  }
}

TEST_CASE("raw clauses follow inversion") {
  auto cl = raw_clauses(f("p & (q | []r)"), QnfKind::CQNF);
  REQUIRE(cl.size() == 2);
  CHECK(cl[0].p.contains(f("p")));
  CHECK(cl[1].m.contains(f("[]r")));
  auto dl = raw_clauses(f("p -> q"), QnfKind::DQNF);
  REQUIRE(dl.size() == 2);
  CHECK(dl[0].q.contains(f("p")));
  CHECK(dl[1].p.contains(f("q")));
  CHECK_THROWS(raw_clauses(f("p & top"), QnfKind::CQNF));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_formula(rng, 10, {"p", "q"});
    QuasiNormalForm c{QnfKind::CQNF, raw_clauses(g, QnfKind::CQNF)};
    QuasiNormalForm d{QnfKind::DQNF, raw_clauses(g, QnfKind::DQNF)};
    CHECK(qnf_equivalent(g, c));
    CHECK(qnf_equivalent(g, d));
  }
}
