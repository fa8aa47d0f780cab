#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "s5/hypersequent.hpp"

namespace s5 {

enum class RuleId {
  Ax, LBot, RTop,
  LNeg, RNeg, LOr, ROr, LAnd, RAnd, LImp, RImp,
  LDia, RDia, LBox, RBox,
  Exch
};

enum class Side { Left, Right };

const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(std::string_view name);
bool is_initial_rule(RuleId r);
bool is_propositional_rule(RuleId r);
// LDia, RBox and Exch: the rules that reshape the crown.
bool is_jump_rule(RuleId r);
Side rule_side(RuleId r);

struct RuleInstance {
  RuleId rule = RuleId::Ax;
  std::optional<Formula> principal;
  Side side = Side::Left;
  // Exch only: the conclusion's crown component swapped into the root.
  std::optional<std::size_t> crown_index;

  static RuleInstance on(RuleId r, Formula principal);
  static RuleInstance exch(std::size_t index);

  friend bool operator==(const RuleInstance& a, const RuleInstance& b) {
    return a.rule == b.rule && a.principal == b.principal && a.side == b.side &&
           a.crown_index == b.crown_index;
  }
};

std::string render_instance(const RuleInstance& r);

// Root of a modal/atomic sequent split as M,P => Q,N.
struct RootPartition {
  FMultiset m, p, q, n;
};
// Empty optional when some root formula is compound or constant.
std::optional<RootPartition> partition_root(const RootedHypersequent& s);

class CalculusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  RootedHypersequent conclusion;
  RuleInstance instance;
  std::vector<Proof> premises;
  std::size_t height = 0;
};

// Assembles a node without validation.
Proof make_node(RootedHypersequent conclusion, RuleInstance instance, std::vector<Proof> premises);

std::optional<RuleInstance> is_initial(const RootedHypersequent& s);

std::vector<RuleInstance> backward_instances(const RootedHypersequent& s);

// Premises of r over s exactly as in the schema; throws CalculusError when r does not apply.
std::vector<RootedHypersequent> apply_backward(const RootedHypersequent& s, const RuleInstance& r);

// Builds the node for r over conclusion, checking that the children prove its premises.
Proof infer(const RootedHypersequent& conclusion, const RuleInstance& r, std::vector<Proof> children);
// Closes an initial sequent; throws when s is not initial.
Proof close_initial(const RootedHypersequent& s);

struct CheckResult {
  bool ok = true;
  std::vector<std::size_t> path;  // child indices from the root
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Local check of one inference, reading the schema top-down.
std::optional<std::string> check_step(const RootedHypersequent& conclusion, const RuleInstance& r,
                                      const std::vector<RootedHypersequent>& premises);
CheckResult check_proof(const Proof& pf);

std::size_t proof_height(const Proof& pf);
std::size_t proof_size(const Proof& pf);

// Every formula in every node's conclusion, deduplicated.
std::vector<Formula> formulas_in_proof(const Proof& pf);
std::vector<RuleId> rules_in_proof(const Proof& pf);
bool has_subformula_property(const Proof& pf);

}  // namespace s5
