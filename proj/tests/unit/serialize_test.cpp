#include "doctest.h"
#include "worked_proofs.hpp"
#include "s5/search.hpp"
#include "s5/serialize.hpp"

using namespace s5;

namespace {

bool same_tree(const Proof& a, const Proof& b) {
  if (!(a->conclusion == b->conclusion) || !(a->instance == b->instance)) return false;
  if (a->premises.size() != b->premises.size()) return false;
  for (std::size_t i = 0; i < a->premises.size(); ++i)
    if (!same_tree(a->premises[i], b->premises[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("json round trip") {
  for (const Proof& pf : {testing::first_example_transcription(),
                          testing::second_example_transcription(),
                          prove(parse_sequent("=> <>p -> []<>p")).proof}) {
    const std::string text = proof_to_json(pf);
    Proof back = proof_from_json(text);
    CHECK(same_tree(pf, back));
    CHECK(check_proof(back).ok);
    CHECK(proof_height(back) == proof_height(pf));
    CHECK(proof_to_json(back) == text);
  }
}

TEST_CASE("json node layout") {
  auto pf = prove(parse_sequent("[]p => || => p")).proof;
  const std::string text = proof_to_json(pf, -1);
  CHECK(text.find("\"rule\":\"Exch\"") != std::string::npos);
  CHECK(text.find("\"crown_index\":0") != std::string::npos);
  CHECK(text.find("\"side\":\"left\"") != std::string::npos);
}

TEST_CASE("malformed proofs are rejected") {
  CHECK_THROWS_AS(proof_from_json("{"), FormatError);
  CHECK_THROWS_AS(proof_from_json("[]"), FormatError);
  CHECK_THROWS_AS(proof_from_json(R"({"rule":"Ax"})"), FormatError);
  CHECK_THROWS_AS(proof_from_json(R"({"conclusion":"p => p","rule":"Cut"})"), FormatError);
  CHECK_THROWS_AS(proof_from_json(R"({"conclusion":"p =>> p","rule":"Ax"})"), FormatError);
  CHECK_THROWS_AS(proof_from_json(R"({"conclusion":"p => p","rule":"Ax","side":"up"})"),
                  FormatError);
}

TEST_CASE("a parsed but wrong proof fails the checker") {
  Proof bad = proof_from_json(R"({"conclusion":"p => q","rule":"Ax","principal":"p"})");
  CHECK_FALSE(check_proof(bad).ok);
}

TEST_CASE("latex export") {
  CHECK(render_formula_latex(parse_formula("[](p -> <>~q) & top")) ==
        "\\Box (p \\to \\Diamond \\neg q) \\land \\top");
  CHECK(sequent_to_latex(parse_sequent("p => q || r => | => s")) ==
        "p \\Rightarrow q \\parallel r \\Rightarrow \\mid \\Rightarrow s");
  const std::string tex = proof_to_latex(testing::first_example_transcription());
  CHECK(tex.rfind("\\begin{prooftree}", 0) == 0);
  CHECK(tex.find("\\BinaryInfC") != std::string::npos);
  CHECK(tex.find("$R\\Box$") != std::string::npos);
  CHECK(tex.find("\\end{prooftree}") != std::string::npos);
}

TEST_CASE("text rendering") {
  auto pf = prove(parse_sequent("=> p -> p")).proof;
  const std::string txt = proof_to_text(pf);
  CHECK(txt.rfind("=> p -> p    [RImp", 0) == 0);
  CHECK(txt.find("\n  p => p") != std::string::npos);
}
