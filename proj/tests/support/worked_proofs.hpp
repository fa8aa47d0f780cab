#pragma once

// Hand transcriptions of the two worked derivations, with the empty crown
// components the strict schemas introduce. Built unchecked on purpose.

#include <string>
#include <vector>

#include "s5/calculus.hpp"

namespace s5::testing {

inline Proof step(const std::string& seq, RuleId rule, const std::string& principal,
                  std::vector<Proof> kids = {}) {
  RuleInstance r = RuleInstance::on(rule, parse_formula(principal));
  return make_node(parse_sequent(seq), r, std::move(kids));
}

inline Proof exch_step(const std::string& seq, std::size_t index, std::vector<Proof> kids) {
  return make_node(parse_sequent(seq), RuleInstance::exch(index), std::move(kids));
}

inline Proof first_example_transcription() {
  const std::string box = "[](<>(p & q) & <>r)";
  auto left = exch_step(
      "=> <>(p & q) || r, p, q =>", 0,
      {step("r, p, q => <>(p & q) || =>", RuleId::RDia, "<>(p & q)",
            {step("r, p, q => <>(p & q), p & q || =>", RuleId::RAnd, "p & q",
                  {step("r, p, q => <>(p & q), p || =>", RuleId::Ax, "p"),
                   step("r, p, q => <>(p & q), q || =>", RuleId::Ax, "q")})})});
  auto right = exch_step(
      "=> <>r || r, p, q =>", 0,
      {step("r, p, q => <>r || =>", RuleId::RDia, "<>r",
            {step("r, p, q => <>r, r || =>", RuleId::Ax, "r")})});
  auto conj = step("=> <>(p & q) & <>r || r, p, q =>", RuleId::RAnd, "<>(p & q) & <>r",
                   {left, right});
  auto rbox = step("r, p, q => " + box, RuleId::RBox, box, {conj});
  auto land = step("r & p, q => " + box, RuleId::LAnd, "r & p", {rbox});
  auto imp1 = step("r & p => q -> " + box, RuleId::RImp, "q -> " + box, {land});
  return step("=> (r & p) -> (q -> " + box + ")", RuleId::RImp, "(r & p) -> (q -> " + box + ")",
              {imp1});
}

inline Proof second_example_transcription() {
  const std::string y = "[]([]~p | p)";
  auto ax1 = step("[]~p, " + y + ", p => p || => | => p", RuleId::Ax, "p");
  auto lneg = step("~p, []~p, " + y + ", p => || => | => p", RuleId::LNeg, "~p", {ax1});
  auto lbox1 = step("[]~p, " + y + ", p => || => | => p", RuleId::LBox, "[]~p", {lneg});
  auto ex = exch_step("[]~p, " + y + " => p || => | p =>", 1, {lbox1});
  auto ax2 = step("p, " + y + " => p || => | p =>", RuleId::Ax, "p");
  auto lor = step("[]~p | p, " + y + " => p || => | p =>", RuleId::LOr, "[]~p | p", {ex, ax2});
  auto lbox2 = step(y + " => p || => | p =>", RuleId::LBox, y, {lor});
  auto rbox1 = step(y + ", p => []p || =>", RuleId::RBox, "[]p", {lbox2});
  auto rneg = step(y + " => ~p, []p || =>", RuleId::RNeg, "~p", {rbox1});
  auto ror = step(y + " => ~p | []p || =>", RuleId::ROr, "~p | []p", {rneg});
  auto rbox2 = step(y + " => [](~p | []p)", RuleId::RBox, "[](~p | []p)", {ror});
  return step("=> " + y + " -> [](~p | []p)", RuleId::RImp, y + " -> [](~p | []p)", {rbox2});
}

}  // namespace s5::testing
