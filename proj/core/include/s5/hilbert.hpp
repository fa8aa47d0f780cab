#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "s5/transform.hpp"

namespace s5 {

enum class HilbertRule { Assumption, Taut, AxDual, AxK, AxT, Ax4, Ax5, AxB, MP, Nec };

const char* hilbert_rule_name(HilbertRule r);

struct Justification {
  HilbertRule rule = HilbertRule::Assumption;
  // 0-based step indices. MP: step `major` is `minor` -> this step. Nec: `minor` only.
  std::size_t minor = 0;
  std::size_t major = 0;

  static Justification mp(std::size_t i, std::size_t j) { return {HilbertRule::MP, i, j}; }
  static Justification nec(std::size_t i) { return {HilbertRule::Nec, i, 0}; }
  static Justification by(HilbertRule r) { return {r, 0, 0}; }
};

struct HilbertStep {
  Formula formula;
  Justification why;
};

struct HilbertProof {
  FMultiset assumptions;
  std::vector<HilbertStep> steps;
};

class HilbertError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HilbertCheck {
  bool ok = true;
  std::size_t step = 0;  // 0-based index of the first bad step
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Text format, 1-based indices:
//   assumptions: p, []q
//   1: p ; Assumption
//   2: p -> []<>p ; AxB
//   3: []<>p ; MP(1, 2)
// Blank lines and lines starting with '#' are skipped; the header is optional.
HilbertProof parse_hilbert(std::string_view text);
std::string render_hilbert(const HilbertProof& hp);

HilbertCheck check_hilbert(const HilbertProof& hp);

// True when f instantiates the schema of an axiom rule.
bool matches_axiom(HilbertRule r, const Formula& f);

// A => A by structural induction. Throws HilbertError when a constant next to
// a modal subformula blocks the jump rules, as in <>q & top.
Proof identity_proof(const Formula& a);

// => f for an instance f of the given axiom schema.
Proof axiom_proof(HilbertRule r, const Formula& f, const TransformBudget& budget = {});

// Cut-free proof of assumptions => last step. Requires check_hilbert to pass.
Proof translate(const HilbertProof& hp, const TransformBudget& budget = {});

}  // namespace s5
