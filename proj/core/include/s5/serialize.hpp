#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "s5/calculus.hpp"

namespace s5 {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One object per node:
//   {"conclusion": "...", "rule": "RImp", "principal": "p -> q", "side": "right",
//    "crown_index": 0, "premises": [...]}
// "principal"/"side" are omitted for Exch, "crown_index" for everything else.
std::string proof_to_json(const Proof& pf, int indent = 2);

// Rebuilds the tree without checking it; run check_proof on the result.
Proof proof_from_json(std::string_view text);

// Indented tree, conclusion first, one node per line with its rule instance.
std::string proof_to_text(const Proof& pf);

// Sequent in LaTeX math mode, crown separated by \mid.
std::string sequent_to_latex(const RootedHypersequent& s);

// A bussproofs prooftree, one inference per node, rule name on the right.
std::string proof_to_latex(const Proof& pf);

}  // namespace s5
