#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "s5/calculus.hpp"

namespace s5 {

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TransformReport {
  Proof output;
  std::size_t heightIn = 0;
  std::size_t heightOut = 0;
  bool heightPreserving = false;
};

// Caps the number of recursive rewriting steps of one call.
struct TransformBudget {
  std::size_t max_steps = 5'000'000;
};

// Merge^c: components i and j fuse into one. Merge: component i joins the root.
TransformReport merge_crown(const Proof& pf, std::size_t i, std::size_t j,
                            const TransformBudget& budget = {});
TransformReport merge_root(const Proof& pf, std::size_t i, const TransformBudget& budget = {});

struct WeakenAt {
  enum class Kind { LeftRoot, RightRoot, Crown, NewComponent };
  Kind kind = Kind::LeftRoot;
  Formula formula;           // LeftRoot / RightRoot
  std::size_t index = 0;     // Crown
  CrownComponent atoms;      // Crown (added atoms) / NewComponent

  static WeakenAt left(Formula f) { return {Kind::LeftRoot, std::move(f), 0, {}}; }
  static WeakenAt right(Formula f) { return {Kind::RightRoot, std::move(f), 0, {}}; }
  static WeakenAt crown(std::size_t i, CrownComponent c) { return {Kind::Crown, {}, i, std::move(c)}; }
  static WeakenAt component(CrownComponent c) { return {Kind::NewComponent, {}, 0, std::move(c)}; }
};

TransformReport weaken(const Proof& pf, const WeakenAt& where, const TransformBudget& budget = {});

struct ContractAt {
  enum class Kind { LeftRoot, RightRoot, CrownLeft, CrownRight, External };
  Kind kind = Kind::LeftRoot;
  Formula formula;         // root formula, or the atom for crown contraction
  std::size_t index = 0;   // crown component
  std::size_t other = 0;   // External: the duplicate of `index`

  static ContractAt left(Formula f) { return {Kind::LeftRoot, std::move(f), 0, 0}; }
  static ContractAt right(Formula f) { return {Kind::RightRoot, std::move(f), 0, 0}; }
  static ContractAt crown_left(std::size_t i, Formula p) { return {Kind::CrownLeft, std::move(p), i, 0}; }
  static ContractAt crown_right(std::size_t i, Formula q) { return {Kind::CrownRight, std::move(q), i, 0}; }
  static ContractAt external(std::size_t i, std::size_t j) { return {Kind::External, {}, i, j}; }
};

TransformReport contract(const Proof& pf, const ContractAt& where, const TransformBudget& budget = {});

// One report per premise of r, taken over pf's end-sequent.
std::vector<TransformReport> invert(const Proof& pf, const RuleInstance& r,
                                    const TransformBudget& budget = {});

struct StripAt {
  enum class Kind { LeftDia, RightBox };
  Kind kind = Kind::LeftDia;
  Formula formula;  // the <>A or []A occurrence

  static StripAt left_dia(Formula f) { return {Kind::LeftDia, std::move(f)}; }
  static StripAt right_box(Formula f) { return {Kind::RightBox, std::move(f)}; }
};

// <>A,G=>D||H gives A,G=>D||H; G=>D,[]A||H gives G=>D,A||H.
TransformReport strip_modality(const Proof& pf, const StripAt& where,
                               const TransformBudget& budget = {});

// From proofs of G=>D,A||H and A,G'=>D'||H' builds a proof of G,G'=>D,D'||H|H'.
TransformReport eliminate_cut(const Proof& left, const Proof& right, const Formula& cut_formula,
                              const TransformBudget& budget = {});

// End-sequent of a cut, as the rule prescribes.
RootedHypersequent cut_conclusion(const RootedHypersequent& left, const RootedHypersequent& right,
                                  const Formula& cut_formula);

}  // namespace s5
