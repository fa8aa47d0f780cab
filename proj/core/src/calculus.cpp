#include "s5/calculus.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_set>

namespace s5 {

namespace {

constexpr std::array<const char*, 16> kNames = {
    "Ax", "LBot", "RTop", "LNeg", "RNeg", "LOr", "ROr", "LAnd",
    "RAnd", "LImp", "RImp", "LDia", "RDia", "LBox", "RBox", "Exch"};

Connective principal_connective(RuleId r) {
  switch (r) {
    case RuleId::LNeg: case RuleId::RNeg: return Connective::Neg;
    case RuleId::LOr: case RuleId::ROr: return Connective::Or;
    case RuleId::LAnd: case RuleId::RAnd: return Connective::And;
    case RuleId::LImp: case RuleId::RImp: return Connective::Imp;
    case RuleId::LDia: case RuleId::RDia: return Connective::Dia;
    case RuleId::LBox: case RuleId::RBox: return Connective::Box;
    case RuleId::LBot: return Connective::Bottom;
    case RuleId::RTop: return Connective::Top;
    default: return Connective::Atom;
  }
}

const FMultiset& side_of(const RootedHypersequent& s, Side side) {
  return side == Side::Left ? s.ante : s.succ;
}

RootedHypersequent with_root(const RootedHypersequent& s, FMultiset a, FMultiset b) {
  return RootedHypersequent(std::move(a), std::move(b), s.crown);
}

[[noreturn]] void not_applicable(const RuleInstance& r, const std::string& why) {
  throw CalculusError(render_instance(r) + " not applicable: " + why);
}

}  // namespace

const char* rule_name(RuleId r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (name == kNames[i]) return static_cast<RuleId>(i);
  return std::nullopt;
}

bool is_initial_rule(RuleId r) { return r == RuleId::Ax || r == RuleId::LBot || r == RuleId::RTop; }

bool is_propositional_rule(RuleId r) { return r >= RuleId::LNeg && r <= RuleId::RImp; }

bool is_jump_rule(RuleId r) { return r == RuleId::LDia || r == RuleId::RBox || r == RuleId::Exch; }

Side rule_side(RuleId r) {
  switch (r) {
    case RuleId::RTop: case RuleId::RNeg: case RuleId::ROr: case RuleId::RAnd:
    case RuleId::RImp: case RuleId::RDia: case RuleId::RBox:
      return Side::Right;
    default:
      return Side::Left;
  }
}

RuleInstance RuleInstance::on(RuleId r, Formula principal) {
  RuleInstance i;
  i.rule = r;
  i.principal = std::move(principal);
  i.side = rule_side(r);
  return i;
}

RuleInstance RuleInstance::exch(std::size_t index) {
  RuleInstance i;
  i.rule = RuleId::Exch;
  i.crown_index = index;
  return i;
}

std::string render_instance(const RuleInstance& r) {
  std::string out = rule_name(r.rule);
  if (r.principal) out += "(" + render_formula(*r.principal) + ")";
  if (r.crown_index) out += "[" + std::to_string(*r.crown_index) + "]";
  return out;
}

std::optional<RootPartition> partition_root(const RootedHypersequent& s) {
  if (!s.root_is_modal_atomic()) return std::nullopt;
  return RootPartition{s.ante.modals(), s.ante.atoms(), s.succ.atoms(), s.succ.modals()};
}

Proof make_node(RootedHypersequent conclusion, RuleInstance instance, std::vector<Proof> premises) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = std::move(conclusion);
  n->instance = std::move(instance);
  n->premises = std::move(premises);
  for (const auto& p : n->premises) n->height = std::max(n->height, p->height + 1);
  return n;
}

std::optional<RuleInstance> is_initial(const RootedHypersequent& s) {
  for (const auto& f : s.ante)
    if (f.is_atom() && s.succ.contains(f)) return RuleInstance::on(RuleId::Ax, f);
  if (s.ante.contains(Formula::bottom())) return RuleInstance::on(RuleId::LBot, Formula::bottom());
  if (s.succ.contains(Formula::top())) return RuleInstance::on(RuleId::RTop, Formula::top());
  return std::nullopt;
}

std::vector<RuleInstance> backward_instances(const RootedHypersequent& s) {
  std::vector<RuleInstance> out;
  const bool modal_root = s.root_is_modal_atomic();
  for (const auto& f : s.ante.distinct()) {
    switch (f.op()) {
      case Connective::Neg: out.push_back(RuleInstance::on(RuleId::LNeg, f)); break;
      case Connective::Or: out.push_back(RuleInstance::on(RuleId::LOr, f)); break;
      case Connective::And: out.push_back(RuleInstance::on(RuleId::LAnd, f)); break;
      case Connective::Imp: out.push_back(RuleInstance::on(RuleId::LImp, f)); break;
      case Connective::Box: out.push_back(RuleInstance::on(RuleId::LBox, f)); break;
      case Connective::Dia:
        if (modal_root) out.push_back(RuleInstance::on(RuleId::LDia, f));
        break;
      default: break;
    }
  }
  for (const auto& f : s.succ.distinct()) {
    switch (f.op()) {
      case Connective::Neg: out.push_back(RuleInstance::on(RuleId::RNeg, f)); break;
      case Connective::Or: out.push_back(RuleInstance::on(RuleId::ROr, f)); break;
      case Connective::And: out.push_back(RuleInstance::on(RuleId::RAnd, f)); break;
      case Connective::Imp: out.push_back(RuleInstance::on(RuleId::RImp, f)); break;
      case Connective::Dia: out.push_back(RuleInstance::on(RuleId::RDia, f)); break;
      case Connective::Box:
        if (modal_root) out.push_back(RuleInstance::on(RuleId::RBox, f));
        break;
      default: break;
    }
  }
  if (modal_root) {
    for (std::size_t i = 0; i < s.crown.size(); ++i) {
      bool seen = false;
      for (std::size_t j = 0; j < i && !seen; ++j) seen = s.crown[j] == s.crown[i];
      if (!seen) out.push_back(RuleInstance::exch(i));
    }
  }
  return out;
}

std::vector<RootedHypersequent> apply_backward(const RootedHypersequent& s, const RuleInstance& r) {
  if (r.rule == RuleId::Exch) {
    if (!r.crown_index || *r.crown_index >= s.crown.size()) not_applicable(r, "crown index");
    auto part = partition_root(s);
    if (!part) not_applicable(r, "root is not modal/atomic");
    const auto& ci = s.crown[*r.crown_index];
    RootedHypersequent prem(part->m.plus(ci.ante), ci.succ.plus(part->n), s.crown);
    prem.crown[*r.crown_index] = CrownComponent(part->p, part->q);
    return {prem};
  }
  if (!r.principal) not_applicable(r, "missing principal");
  const Formula& a = *r.principal;
  if (r.side != rule_side(r.rule)) not_applicable(r, "wrong side");
  if (a.op() != principal_connective(r.rule) && r.rule != RuleId::Ax)
    not_applicable(r, "principal has the wrong connective");
  if (!side_of(s, r.side).contains(a)) not_applicable(r, "principal not in root");

  switch (r.rule) {
    case RuleId::Ax:
      if (!a.is_atom() || !s.ante.contains(a) || !s.succ.contains(a)) not_applicable(r, "no atom");
      return {};
    case RuleId::LBot:
    case RuleId::RTop:
      return {};
    case RuleId::LNeg:
      return {with_root(s, s.ante.without(a), s.succ.with(a.body()))};
    case RuleId::RNeg:
      return {with_root(s, s.ante.with(a.body()), s.succ.without(a))};
    case RuleId::LOr: {
      FMultiset rest = s.ante.without(a);
      return {with_root(s, rest.with(a.lhs()), s.succ), with_root(s, rest.with(a.rhs()), s.succ)};
    }
    case RuleId::ROr:
      return {with_root(s, s.ante, s.succ.without(a).with(a.lhs()).with(a.rhs()))};
    case RuleId::LAnd:
      return {with_root(s, s.ante.without(a).with(a.lhs()).with(a.rhs()), s.succ)};
    case RuleId::RAnd: {
      FMultiset rest = s.succ.without(a);
      return {with_root(s, s.ante, rest.with(a.lhs())), with_root(s, s.ante, rest.with(a.rhs()))};
    }
    case RuleId::LImp: {
      FMultiset rest = s.ante.without(a);
      return {with_root(s, rest, s.succ.with(a.lhs())), with_root(s, rest.with(a.rhs()), s.succ)};
    }
    case RuleId::RImp:
      return {with_root(s, s.ante.with(a.lhs()), s.succ.without(a).with(a.rhs()))};
    case RuleId::LBox:
      return {with_root(s, s.ante.with(a.body()), s.succ)};
    case RuleId::RDia:
      return {with_root(s, s.ante, s.succ.with(a.body()))};
    case RuleId::LDia:
    case RuleId::RBox: {
      auto part = partition_root(s);
      if (!part) not_applicable(r, "root is not modal/atomic");
      RootedHypersequent prem;
      if (r.rule == RuleId::LDia)
        prem = RootedHypersequent(part->m.without(a).with(a.body()), part->n, s.crown);
      else
        prem = RootedHypersequent(part->m, part->n.without(a).with(a.body()), s.crown);
      prem.crown.emplace_back(part->p, part->q);
      return {prem};
    }
    case RuleId::Exch:
      break;
  }
  not_applicable(r, "unknown rule");
}

// ---------------------------------------------------------------------------
// Forward checking

namespace {

std::optional<FMultiset> remove(const FMultiset& m, const Formula& f) {
  FMultiset r = m;
  if (!r.remove_one(f)) return std::nullopt;
  return r;
}

std::string mismatch(RuleId r) { return std::string("premise mismatch for ") + rule_name(r); }

// Conclusion of a one-premise propositional or LBox/RDia step, read top-down.
std::optional<RootedHypersequent> lift(const RootedHypersequent& prem, RuleId rule,
                                       const Formula& a, int which) {
  FMultiset ante = prem.ante, succ = prem.succ;
  auto take = [](FMultiset& m, const Formula& f) { return m.remove_one(f); };
  switch (rule) {
    case RuleId::LNeg:
      if (!take(succ, a.body())) return std::nullopt;
      ante.add(a);
      break;
    case RuleId::RNeg:
      if (!take(ante, a.body())) return std::nullopt;
      succ.add(a);
      break;
    case RuleId::LOr:
      if (!take(ante, which == 0 ? a.lhs() : a.rhs())) return std::nullopt;
      ante.add(a);
      break;
    case RuleId::ROr:
      if (!take(succ, a.lhs()) || !take(succ, a.rhs())) return std::nullopt;
      succ.add(a);
      break;
    case RuleId::LAnd:
      if (!take(ante, a.lhs()) || !take(ante, a.rhs())) return std::nullopt;
      ante.add(a);
      break;
    case RuleId::RAnd:
      if (!take(succ, which == 0 ? a.lhs() : a.rhs())) return std::nullopt;
      succ.add(a);
      break;
    case RuleId::LImp:
      if (which == 0) {
        if (!take(succ, a.lhs())) return std::nullopt;
      } else if (!take(ante, a.rhs())) {
        return std::nullopt;
      }
      ante.add(a);
      break;
    case RuleId::RImp:
      if (!take(ante, a.lhs()) || !take(succ, a.rhs())) return std::nullopt;
      succ.add(a);
      break;
    case RuleId::LBox:
      if (!ante.contains(a) || !take(ante, a.body())) return std::nullopt;
      break;
    case RuleId::RDia:
      if (!succ.contains(a) || !take(succ, a.body())) return std::nullopt;
      break;
    default:
      return std::nullopt;
  }
  return RootedHypersequent(std::move(ante), std::move(succ), prem.crown);
}

std::size_t arity_of(RuleId r) {
  if (is_initial_rule(r)) return 0;
  if (r == RuleId::LOr || r == RuleId::RAnd || r == RuleId::LImp) return 2;
  return 1;
}

}  // namespace

std::optional<std::string> check_step(const RootedHypersequent& c, const RuleInstance& r,
                                      const std::vector<RootedHypersequent>& prems) {
  const std::string name = rule_name(r.rule);
  if (prems.size() != arity_of(r.rule)) return "wrong number of premises for " + name;

  if (is_initial_rule(r.rule)) {
    bool ok = false;
    if (r.rule == RuleId::Ax)
      ok = r.principal && r.principal->is_atom() && c.ante.contains(*r.principal) &&
           c.succ.contains(*r.principal);
    else if (r.rule == RuleId::LBot)
      ok = c.ante.contains(Formula::bottom());
    else
      ok = c.succ.contains(Formula::top());
    if (!ok) return std::string("not an initial sequent");
    return std::nullopt;
  }

  if (r.rule == RuleId::Exch) {
    const auto& p = prems[0];
    if (!p.root_is_modal_atomic()) return "side condition violated for Exch";
    FMultiset m = p.ante.modals(), pi = p.ante.atoms(), qi = p.succ.atoms(), n = p.succ.modals();
    for (std::size_t k = 0; k < p.crown.size(); ++k) {
      const auto& comp = p.crown[k];
      RootedHypersequent concl(m.plus(comp.ante), comp.succ.plus(n), p.crown);
      concl.crown[k] = CrownComponent(pi, qi);
      if (concl != c) continue;
      if (r.crown_index &&
          (*r.crown_index >= c.crown.size() || c.crown[*r.crown_index] != CrownComponent(pi, qi)))
        continue;
      return std::nullopt;
    }
    return mismatch(r.rule);
  }

  if (!r.principal) return "missing principal for " + name;
  const Formula& a = *r.principal;
  if (a.op() != principal_connective(r.rule)) return "principal does not match " + name;
  if (r.side != rule_side(r.rule)) return "wrong side for " + name;

  if (r.rule == RuleId::LDia || r.rule == RuleId::RBox) {
    const auto& p = prems[0];
    const bool left = r.rule == RuleId::LDia;
    auto body_side = remove(left ? p.ante : p.succ, a.body());
    if (!body_side) return mismatch(r.rule);
    FMultiset ante = left ? *body_side : p.ante;
    FMultiset succ = left ? p.succ : *body_side;
    if (!ante.all_modal_or_atomic() || !succ.all_modal_or_atomic() || !ante.atoms().empty() ||
        !succ.atoms().empty())
      return "side condition violated for " + name;
    (left ? ante : succ).add(a);
    for (std::size_t k = 0; k < p.crown.size(); ++k) {
      std::vector<CrownComponent> crown = p.crown;
      CrownComponent moved = crown[k];
      crown.erase(crown.begin() + static_cast<std::ptrdiff_t>(k));
      RootedHypersequent concl(ante.plus(moved.ante), succ.plus(moved.succ), std::move(crown));
      if (concl == c) return std::nullopt;
    }
    return mismatch(r.rule);
  }

  for (std::size_t i = 0; i < prems.size(); ++i) {
    auto concl = lift(prems[i], r.rule, a, static_cast<int>(i));
    if (!concl || *concl != c) return mismatch(r.rule);
  }
  return std::nullopt;
}

namespace {

void check_rec(const Proof& pf, std::vector<std::size_t>& path, CheckResult& out,
               std::unordered_set<const ProofNode*>& done) {
  if (!pf) {
    out = {false, path, "null proof node"};
    return;
  }
  if (!done.insert(pf.get()).second) return;
  std::vector<RootedHypersequent> prems;
  for (const auto& p : pf->premises) {
    if (!p) {
      out = {false, path, "null premise"};
      return;
    }
    prems.push_back(p->conclusion);
  }
  if (auto err = check_step(pf->conclusion, pf->instance, prems)) {
    out = {false, path, *err};
    return;
  }
  for (std::size_t i = 0; i < pf->premises.size() && out.ok; ++i) {
    path.push_back(i);
    check_rec(pf->premises[i], path, out, done);
    path.pop_back();
  }
}

}  // namespace

CheckResult check_proof(const Proof& pf) {
  CheckResult out;
  std::vector<std::size_t> path;
  std::unordered_set<const ProofNode*> done;
  check_rec(pf, path, out, done);
  return out;
}

Proof infer(const RootedHypersequent& conclusion, const RuleInstance& r, std::vector<Proof> children) {
  std::vector<RootedHypersequent> prems;
  for (const auto& c : children) prems.push_back(c->conclusion);
  if (auto err = check_step(conclusion, r, prems))
    throw CalculusError(*err + " at " + render_sequent(conclusion));
  return make_node(conclusion, r, std::move(children));
}

Proof close_initial(const RootedHypersequent& s) {
  auto r = is_initial(s);
  if (!r) throw CalculusError("not an initial sequent: " + render_sequent(s));
  return make_node(s, *r, {});
}

std::size_t proof_height(const Proof& pf) { return pf->height; }

std::size_t proof_size(const Proof& pf) {
  std::size_t n = 1;
  for (const auto& p : pf->premises) n += proof_size(p);
  return n;
}

namespace {

template <typename F>
void visit_nodes(const Proof& pf, F&& f) {
  std::unordered_set<const ProofNode*> seen;
  std::vector<const ProofNode*> stack{pf.get()};
  while (!stack.empty()) {
    const ProofNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    f(*n);
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
}

}  // namespace

std::vector<Formula> formulas_in_proof(const Proof& pf) {
  std::set<Formula> out;
  visit_nodes(pf, [&out](const ProofNode& n) {
    for (const auto& f : all_formulas(n.conclusion)) out.insert(f);
  });
  return {out.begin(), out.end()};
}

std::vector<RuleId> rules_in_proof(const Proof& pf) {
  std::set<RuleId> out;
  visit_nodes(pf, [&out](const ProofNode& n) { out.insert(n.instance.rule); });
  return {out.begin(), out.end()};
}

bool has_subformula_property(const Proof& pf) {
  std::set<Formula> universe;
  for (const auto& f : all_formulas(pf->conclusion))
    for (const auto& g : subformulas(f)) universe.insert(g);
  for (const auto& f : formulas_in_proof(pf))
    if (!universe.count(f)) return false;
  return true;
}

}  // namespace s5
