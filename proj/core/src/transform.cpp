#include "s5/transform.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>

namespace s5 {

namespace {

using Crown = std::vector<CrownComponent>;

[[noreturn]] void fail(const std::string& m) { throw TransformError(m); }

std::optional<std::size_t> position(const Crown& cr, const CrownComponent& c) {
  auto it = std::find(cr.begin(), cr.end(), c);
  if (it == cr.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cr.begin());
}

std::size_t index_of(const Crown& cr, const CrownComponent& c) {
  auto pos = position(cr, c);
  if (!pos) fail("crown component " + render_component(c) + " not found");
  return *pos;
}

Crown drop(Crown cr, const CrownComponent& c) {
  cr.erase(cr.begin() + static_cast<std::ptrdiff_t>(index_of(cr, c)));
  return cr;
}

CrownComponent fuse(const CrownComponent& a, const CrownComponent& b) {
  return {a.ante.plus(b.ante), a.succ.plus(b.succ)};
}

CrownComponent root_atoms(const RootedHypersequent& s) { return {s.ante.atoms(), s.succ.atoms()}; }

FMultiset& side(RootedHypersequent& s, bool right) { return right ? s.succ : s.ante; }
const FMultiset& side(const RootedHypersequent& s, bool right) { return right ? s.succ : s.ante; }
FMultiset& side(CrownComponent& c, bool right) { return right ? c.succ : c.ante; }
const FMultiset& side(const CrownComponent& c, bool right) { return right ? c.succ : c.ante; }

RootedHypersequent without(RootedHypersequent s, const Formula& f, bool right) {
  if (!side(s, right).remove_one(f)) fail("formula " + render_formula(f) + " missing from the root");
  return s;
}

RootedHypersequent with(RootedHypersequent s, const Formula& f, bool right) {
  side(s, right).add(f);
  return s;
}

RuleId rule_for(const Formula& f, bool right) {
  switch (f.op()) {
    case Connective::Neg: return right ? RuleId::RNeg : RuleId::LNeg;
    case Connective::And: return right ? RuleId::RAnd : RuleId::LAnd;
    case Connective::Or: return right ? RuleId::ROr : RuleId::LOr;
    case Connective::Imp: return right ? RuleId::RImp : RuleId::LImp;
    case Connective::Box: return right ? RuleId::RBox : RuleId::LBox;
    case Connective::Dia: return right ? RuleId::RDia : RuleId::LDia;
    default: fail("no logical rule for " + render_formula(f));
  }
}

bool principal_is(const Proof& pf, const Formula& f, bool right) {
  const auto& r = pf->instance;
  return !is_initial_rule(r.rule) && r.rule != RuleId::Exch && r.principal && *r.principal == f &&
         (r.side == Side::Right) == right;
}

bool is_lr_jump(RuleId r) { return r == RuleId::LDia || r == RuleId::RBox; }

class Engine {
 public:
  explicit Engine(const TransformBudget& b) : budget_(b) {}

  void tick() {
    if (++steps_ > budget_.max_steps) fail("transform budget exhausted");
  }

  // Unchecked node; the finished proof is checked once by the caller.
  Proof node(const RootedHypersequent& s, const RuleInstance& r, std::vector<Proof> kids) {
    return make_node(s, r, std::move(kids));
  }

  // Re-applies pf's last rule over a new conclusion.
  Proof again(const Proof& pf, const RootedHypersequent& target, std::vector<Proof> kids) {
    RuleInstance r = pf->instance;
    if (r.rule == RuleId::Exch)
      r.crown_index = index_of(target.crown, pf->conclusion.crown[*r.crown_index]);
    return node(target, r, std::move(kids));
  }

  // Exch read downwards: component c becomes the root world.
  Proof exch_up(const Proof& pf, const CrownComponent& c) {
    const auto& s = pf->conclusion;
    if (!s.root_is_modal_atomic()) fail("root must be modal/atomic for Exch: " + render_sequent(s));
    const std::size_t pos = index_of(s.crown, c);
    RootedHypersequent t(s.ante.modals().plus(c.ante), c.succ.plus(s.succ.modals()), s.crown);
    t.crown[pos] = root_atoms(s);
    return node(t, RuleInstance::exch(pos), {pf});
  }

  // Exch over a given conclusion swapping component c.
  Proof exch_at(const RootedHypersequent& target, const CrownComponent& c, const Proof& kid) {
    return node(target, RuleInstance::exch(index_of(target.crown, c)), {kid});
  }

  // ---- external weakening
  Proof ew(const Proof& pf, const Crown& cs) {
    std::unordered_map<const ProofNode*, Proof> memo;
    return ew_rec(pf, cs, memo);
  }
  Proof ew(const Proof& pf, const CrownComponent& c) { return ew(pf, Crown{c}); }

  // ---- modal (or inert constant) formulas added to every root
  Proof add_everywhere(const Proof& pf, const FMultiset& left, const FMultiset& right) {
    std::unordered_map<const ProofNode*, Proof> memo;
    const bool modal = left.plus(right).modals().size() == left.size() + right.size();
    return add_rec(pf, left, right, modal, memo);
  }

  // ---- Merge^c
  Proof merge_c(const Proof& pf, const CrownComponent& ci, const CrownComponent& cj) {
    tick();
    const auto& s = pf->conclusion;
    RootedHypersequent t = s;
    t.crown = drop(drop(s.crown, ci), cj);
    t.crown.push_back(fuse(ci, cj));
    const RuleId rule = pf->instance.rule;
    if (rule == RuleId::Exch) {
      const CrownComponent& e = s.crown[*pf->instance.crown_index];
      const Proof& kid = pf->premises[0];
      if (e == ci) return exch_at(t, fuse(ci, cj), merge_r(kid, cj));
      if (e == cj) return exch_at(t, fuse(ci, cj), merge_r(kid, ci));
      return again(pf, t, {merge_c(kid, ci, cj)});
    }
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(merge_c(k, ci, cj));
    return again(pf, t, std::move(kids));
  }

  // ---- Merge
  Proof merge_r(const Proof& pf, const CrownComponent& c) {
    tick();
    const auto& s = pf->conclusion;
    RootedHypersequent t(s.ante.plus(c.ante), s.succ.plus(c.succ), drop(s.crown, c));
    const RuleId rule = pf->instance.rule;
    if (rule == RuleId::Exch) {
      const CrownComponent& e = s.crown[*pf->instance.crown_index];
      if (e == c) return merge_r(pf->premises[0], root_atoms(s));
      return again(pf, t, {merge_c(pf->premises[0], c, root_atoms(s))});
    }
    if (is_lr_jump(rule)) return again(pf, t, {merge_c(pf->premises[0], c, root_atoms(s))});
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(merge_r(k, c));
    return again(pf, t, std::move(kids));
  }

  // ---- atomic contraction in the root and in a crown component
  Proof contract_atom(const Proof& pf, const Formula& p, bool right) {
    tick();
    const auto& s = pf->conclusion;
    RootedHypersequent t = without(s, p, right);
    const RuleId rule = pf->instance.rule;
    if (rule == RuleId::Exch || is_lr_jump(rule))
      return again(pf, t, {contract_crown(pf->premises[0], root_atoms(s), p, right)});
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(contract_atom(k, p, right));
    return again(pf, t, std::move(kids));
  }

  Proof contract_crown(const Proof& pf, const CrownComponent& c, const Formula& p, bool right) {
    tick();
    const auto& s = pf->conclusion;
    CrownComponent smaller = c;
    if (!side(smaller, right).remove_one(p)) fail("atom " + render_formula(p) + " not duplicated");
    RootedHypersequent t = s;
    t.crown[index_of(t.crown, c)] = smaller;
    if (pf->instance.rule == RuleId::Exch) {
      const CrownComponent& e = s.crown[*pf->instance.crown_index];
      if (e == c) return exch_at(t, smaller, contract_atom(pf->premises[0], p, right));
      return again(pf, t, {contract_crown(pf->premises[0], c, p, right)});
    }
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(contract_crown(k, c, p, right));
    return again(pf, t, std::move(kids));
  }

 private:
  TransformBudget budget_;
  std::size_t steps_ = 0;

  Proof ew_rec(const Proof& pf, const Crown& cs,
               std::unordered_map<const ProofNode*, Proof>& memo) {
    if (auto it = memo.find(pf.get()); it != memo.end()) return it->second;
    tick();
    RootedHypersequent t = pf->conclusion;
    t.crown.insert(t.crown.end(), cs.begin(), cs.end());
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(ew_rec(k, cs, memo));
    Proof out = again(pf, t, std::move(kids));
    memo.emplace(pf.get(), out);
    return out;
  }

  Proof add_rec(const Proof& pf, const FMultiset& left, const FMultiset& right, bool modal,
                std::unordered_map<const ProofNode*, Proof>& memo) {
    if (auto it = memo.find(pf.get()); it != memo.end()) return it->second;
    tick();
    if (is_jump_rule(pf->instance.rule) && !modal)
      fail(std::string("cannot carry a non-modal formula across a ") +
           rule_name(pf->instance.rule) + " step");
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(add_rec(k, left, right, modal, memo));
    const auto& s = pf->conclusion;
    RootedHypersequent t(s.ante.plus(left), s.succ.plus(right), s.crown);
    Proof out = again(pf, t, std::move(kids));
    memo.emplace(pf.get(), out);
    return out;
  }

 public:
  // ---- propositional inversion, height-preserving
  std::vector<Proof> invert_prop(const Proof& pf, const Formula& f, bool right) {
    tick();
    if (principal_is(pf, f, right)) return pf->premises;
    std::vector<RootedHypersequent> targets;
    try {
      targets = apply_backward(pf->conclusion, RuleInstance::on(rule_for(f, right), f));
    } catch (const CalculusError& e) {
      fail(std::string("cannot invert: ") + e.what());
    }
    std::vector<Proof> out;
    if (is_initial_rule(pf->instance.rule)) {
      for (const auto& t : targets) out.push_back(again(pf, t, {}));
      return out;
    }
    if (is_jump_rule(pf->instance.rule)) fail("compound formula below a jump step");
    std::vector<std::vector<Proof>> inv;
    for (const auto& k : pf->premises) inv.push_back(invert_prop(k, f, right));
    for (std::size_t t = 0; t < targets.size(); ++t) {
      std::vector<Proof> kids;
      for (const auto& row : inv) kids.push_back(row[t]);
      out.push_back(again(pf, targets[t], std::move(kids)));
    }
    return out;
  }

  // ---- decomposition skeletons (the NFcut1 machinery)
  struct Occ {
    Formula f;
    bool right;
  };

  // A rule with no kids is a closed initial node; no rule marks an open leaf.
  struct Skel {
    RootedHypersequent seq;
    std::optional<RuleInstance> rule;
    std::vector<Skel> kids;
  };

  // Occurrences created by the rule for f, per premise.
  static std::vector<std::vector<Occ>> children(const Formula& f, bool right) {
    switch (f.op()) {
      case Connective::Neg: return {{{f.body(), !right}}};
      case Connective::And:
        if (right) return {{{f.lhs(), true}}, {{f.rhs(), true}}};
        return {{{f.lhs(), false}, {f.rhs(), false}}};
      case Connective::Or:
        if (right) return {{{f.lhs(), true}, {f.rhs(), true}}};
        return {{{f.lhs(), false}}, {{f.rhs(), false}}};
      case Connective::Imp:
        if (right) return {{{f.lhs(), false}, {f.rhs(), true}}};
        return {{{f.lhs(), true}}, {{f.rhs(), false}}};
      default: return {};
    }
  }

  Skel skeleton(const RootedHypersequent& s, std::vector<Occ> pending) {
    tick();
    Skel sk{s, std::nullopt, {}};
    while (!pending.empty()) {
      const Occ o = pending.front();
      pending.erase(pending.begin());
      const Connective op = o.f.op();
      if (op == Connective::Bottom && !o.right) {
        sk.rule = RuleInstance::on(RuleId::LBot, o.f);
        return sk;
      }
      if (op == Connective::Top && o.right) {
        sk.rule = RuleInstance::on(RuleId::RTop, o.f);
        return sk;
      }
      if (o.f.is_atom() || o.f.is_modal() || o.f.is_constant()) continue;
      RuleInstance r = RuleInstance::on(rule_for(o.f, o.right), o.f);
      auto prems = apply_backward(s, r);
      auto subs = children(o.f, o.right);
      sk.rule = r;
      for (std::size_t k = 0; k < prems.size(); ++k) {
        std::vector<Occ> next = subs[k];
        next.insert(next.end(), pending.begin(), pending.end());
        sk.kids.push_back(skeleton(prems[k], std::move(next)));
      }
      return sk;
    }
    return sk;
  }

  static void leaf_seqs(const Skel& sk, std::vector<RootedHypersequent>& out) {
    if (!sk.rule) out.push_back(sk.seq);
    for (const auto& k : sk.kids) leaf_seqs(k, out);
  }

  // NFcut1 left to right: inverts pf along sk, one proof per open leaf.
  void split(const Proof& pf, const Skel& sk, std::vector<Proof>& out) {
    if (!sk.rule) {
      out.push_back(pf);
      return;
    }
    if (sk.kids.empty()) return;
    auto inv = invert_prop(pf, *sk.rule->principal, sk.rule->side == Side::Right);
    for (std::size_t k = 0; k < sk.kids.size(); ++k) split(inv[k], sk.kids[k], out);
  }

  std::vector<Proof> split(const Proof& pf, const Skel& sk) {
    std::vector<Proof> out;
    split(pf, sk, out);
    return out;
  }

  // NFcut1 right to left: rebuilds sk's root from proofs of its open leaves.
  Proof assemble(const Skel& sk, const std::vector<Proof>& leaves, std::size_t& pos) {
    if (!sk.rule) {
      if (pos >= leaves.size()) fail("too few leaf proofs");
      const Proof& pf = leaves[pos++];
      if (pf->conclusion != sk.seq)
        fail("leaf proof concludes " + render_sequent(pf->conclusion) + ", expected " +
             render_sequent(sk.seq));
      return pf;
    }
    std::vector<Proof> kids;
    for (const auto& k : sk.kids) kids.push_back(assemble(k, leaves, pos));
    return node(sk.seq, *sk.rule, std::move(kids));
  }

  Proof assemble(const Skel& sk, const std::vector<Proof>& leaves) {
    std::size_t pos = 0;
    Proof out = assemble(sk, leaves, pos);
    if (pos != leaves.size()) fail("too many leaf proofs");
    return out;
  }

  // Clause extras of A decomposed on one side: modal parts go to the root,
  // atoms form the new component.
  struct Clause {
    FMultiset left, right;  // modal quasi-literal cores
    CrownComponent atoms;
  };

  std::vector<Clause> clauses_of(const Formula& a, bool right) {
    RootedHypersequent s = with(RootedHypersequent{}, a, right);
    std::vector<RootedHypersequent> leaves;
    leaf_seqs(skeleton(s, {{a, right}}), leaves);
    std::vector<Clause> out;
    for (const auto& l : leaves) {
      if (!l.root_is_modal_atomic())
        fail("constant inside " + render_formula(a) + " blocks the modal rules");
      out.push_back({l.ante.modals(), l.succ.modals(), root_atoms(l)});
    }
    return out;
  }

  static RootedHypersequent extend(RootedHypersequent s, const Clause& c) {
    s.ante.add_all(c.left);
    s.succ.add_all(c.right);
    s.crown.push_back(c.atoms);
    return s;
  }

  // Compound and constant root formulas, in root order.
  static std::vector<Occ> context(const RootedHypersequent& s) {
    std::vector<Occ> out;
    for (const auto& f : s.ante)
      if (!f.is_atom() && !f.is_modal()) out.push_back({f, false});
    for (const auto& f : s.succ)
      if (!f.is_atom() && !f.is_modal()) out.push_back({f, true});
    return out;
  }

  // ---- left/right weakening
  Proof weaken_root(const Proof& pf, const Formula& a, bool right) {
    RootedHypersequent extra;
    side(extra, right).add(a);
    return weaken_all(pf, extra);
  }

  // One pass per kind: atoms through EW and Merge, modals and inert constants
  // straight into every root, compounds by their rule, then new components.
  Proof weaken_all(Proof pf, const RootedHypersequent& extra) {
    tick();
    const auto& s = pf->conclusion;
    RootedHypersequent t(s.ante.plus(extra.ante), s.succ.plus(extra.succ), s.crown);
    t.crown.insert(t.crown.end(), extra.crown.begin(), extra.crown.end());
    if (extra.ante.contains(Formula::bottom()))
      return node(t, RuleInstance::on(RuleId::LBot, Formula::bottom()), {});
    if (extra.succ.contains(Formula::top()))
      return node(t, RuleInstance::on(RuleId::RTop, Formula::top()), {});
    const CrownComponent atoms(extra.ante.atoms(), extra.succ.atoms());
    if (!atoms.empty()) pf = merge_r(ew(pf, atoms), atoms);
    FMultiset inert_l, inert_r;
    std::vector<std::pair<Formula, bool>> compound;
    for (bool right : {false, true})
      for (const auto& f : side(extra, right)) {
        if (f.is_modal() || f.is_constant())
          (right ? inert_r : inert_l).add(f);
        else if (!f.is_atom())
          compound.emplace_back(f, right);
      }
    if (!inert_l.empty() || !inert_r.empty()) pf = add_everywhere(pf, inert_l, inert_r);
    for (const auto& [f, right] : compound) pf = weaken_compound(pf, f, right);
    if (!extra.crown.empty()) pf = ew(pf, extra.crown);
    return pf;
  }

  Proof weaken_compound(const Proof& pf, const Formula& a, bool right) {
    std::vector<Proof> kids;
    for (const auto& occs : children(a, right)) {
      RootedHypersequent sub;
      for (const auto& o : occs) side(sub, o.right).add(o.f);
      kids.push_back(weaken_all(pf, sub));
    }
    return node(with(pf->conclusion, a, right), RuleInstance::on(rule_for(a, right), a),
                std::move(kids));
  }

  // Weakens pf up to the target end-sequent.
  Proof weaken_to(const Proof& pf, const RootedHypersequent& target) {
    const auto& s = pf->conclusion;
    RootedHypersequent extra;
    try {
      extra.ante = target.ante.minus(s.ante);
      extra.succ = target.succ.minus(s.succ);
    } catch (const std::invalid_argument&) {
      fail("weakening target is smaller than " + render_sequent(s));
    }
    Crown rest = target.crown;
    for (const auto& c : s.crown) rest = drop(rest, c);
    extra.crown = rest;
    return weaken_all(pf, extra);
  }

  // ---- general contraction
  Proof contract_gen(const Proof& pf, const Formula& a, bool right) {
    tick();
    if (side(pf->conclusion, right).count(a) < 2) fail("no duplicate of " + render_formula(a));
    const RootedHypersequent t = without(pf->conclusion, a, right);
    const Connective op = a.op();
    if (a.is_atom()) return contract_atom(pf, a, right);
    if (op == Connective::Bottom && !right) return node(t, RuleInstance::on(RuleId::LBot, a), {});
    if (op == Connective::Top && right) return node(t, RuleInstance::on(RuleId::RTop, a), {});
    if (a.is_modal()) return contract_modal(pf, a, right);
    if (a.is_constant()) {
      std::vector<Proof> kids;
      for (const auto& k : pf->premises) kids.push_back(contract_gen(k, a, right));
      return again(pf, t, std::move(kids));
    }
    auto once = invert_prop(pf, a, right);
    auto subs = children(a, right);
    std::vector<Proof> kids;
    for (std::size_t b = 0; b < once.size(); ++b) {
      Proof k = invert_prop(once[b], a, right)[b];
      for (const auto& o : subs[b]) k = contract_gen(k, o.f, o.right);
      kids.push_back(k);
    }
    return node(t, RuleInstance::on(rule_for(a, right), a), std::move(kids));
  }

  Proof contract_modal(const Proof& pf, const Formula& a, bool right) {
    tick();
    const RootedHypersequent t = without(pf->conclusion, a, right);
    if (principal_is(pf, a, right)) {
      const Proof& kid = pf->premises[0];
      if (is_lr_jump(pf->instance.rule)) {
        Proof body = strip(kid, a, right);
        return again(pf, t, {contract_gen(body, a.body(), right)});
      }
      return again(pf, t, {contract_modal(kid, a, right)});
    }
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(contract_modal(k, a, right));
    return again(pf, t, std::move(kids));
  }

  // Contracts every duplicate that `extra` introduced on top of `base`.
  Proof contract_to(Proof pf, const RootedHypersequent& target) {
    auto excess = [](const FMultiset& have, const FMultiset& want) {
      try {
        return have.minus(want);
      } catch (const std::invalid_argument&) {
        fail("contraction target is not below the proof's end-sequent");
      }
    };
    for (const auto& f : excess(pf->conclusion.ante, target.ante)) pf = contract_gen(pf, f, false);
    for (const auto& f : excess(pf->conclusion.succ, target.succ)) pf = contract_gen(pf, f, true);
    Crown extra = pf->conclusion.crown;
    for (const auto& c : target.crown) extra = drop(extra, c);
    for (const auto& c : extra) pf = contract_external(pf, c);
    return pf;
  }

  // EC on two copies of c: Merge^c, then contract the doubled atoms.
  Proof contract_external(const Proof& pf, const CrownComponent& c) {
    Proof out = merge_c(pf, c, c);
    const CrownComponent doubled = fuse(c, c);
    CrownComponent cur = doubled;
    for (const auto& p : c.ante) {
      out = contract_crown(out, cur, p, false);
      cur.ante.remove_one(p);
    }
    for (const auto& q : c.succ) {
      out = contract_crown(out, cur, q, true);
      cur.succ.remove_one(q);
    }
    return out;
  }

  // ---- NFcut2 left to right: pf of G=>D,[]A||H (or <>A on the left) gives,
  // per clause, a proof of M_i,G=>D,N_i||H|P_i=>Q_i. Height-preserving.
  std::vector<Proof> nf2_split(const Proof& pf, const Formula& f, bool right,
                               const std::vector<Clause>& cls) {
    tick();
    const RootedHypersequent base = without(pf->conclusion, f, right);
    std::vector<RootedHypersequent> targets;
    for (const auto& c : cls) targets.push_back(extend(base, c));
    std::vector<Proof> out;
    if (is_initial_rule(pf->instance.rule)) {
      for (const auto& t : targets) out.push_back(again(pf, t, {}));
      return out;
    }
    if (principal_is(pf, f, right) && is_lr_jump(pf->instance.rule)) {
      const Proof& kid = pf->premises[0];
      auto leaves = split(kid, skeleton(kid->conclusion, {{f.body(), right}}));
      if (leaves.size() != cls.size()) fail("clause count mismatch");
      for (std::size_t k = 0; k < cls.size(); ++k)
        out.push_back(exch_at(targets[k], cls[k].atoms, leaves[k]));
      return out;
    }
    std::vector<std::vector<Proof>> rows;
    for (const auto& k : pf->premises) rows.push_back(nf2_split(k, f, right, cls));
    for (std::size_t t = 0; t < targets.size(); ++t) {
      std::vector<Proof> kids;
      for (const auto& row : rows) kids.push_back(row[t]);
      out.push_back(again(pf, targets[t], std::move(kids)));
    }
    return out;
  }

  // ---- NFcut2 right to left: proofs of M_i,G=>D,N_i||H|P_i=>Q_i for every
  // clause of A give G=>D,[]A||H (or <>A,G=>D||H).
  Proof nf2_join(const RootedHypersequent& base, const Formula& f, bool right,
                 const std::vector<Proof>& parts) {
    tick();
    const Formula& a = f.body();
    const auto cls = clauses_of(a, right);
    if (parts.size() != cls.size()) fail("clause count mismatch");
    const auto ctx = context(base);
    std::vector<std::vector<Proof>> cols;
    for (std::size_t k = 0; k < cls.size(); ++k) {
      const RootedHypersequent want = extend(base, cls[k]);
      if (parts[k]->conclusion != want)
        fail("clause proof concludes " + render_sequent(parts[k]->conclusion) + ", expected " +
             render_sequent(want));
      cols.push_back(split(parts[k], skeleton(want, ctx)));
    }
    const Skel outer = skeleton(with(base, f, right), ctx);
    std::vector<RootedHypersequent> tops;
    leaf_seqs(outer, tops);
    std::vector<Proof> finished;
    for (std::size_t j = 0; j < tops.size(); ++j) {
      const RootedHypersequent& top = tops[j];
      const RootedHypersequent bare = without(top, f, right);
      if (!bare.root_is_modal_atomic())
        fail("constant in the root blocks the modal rules: " + render_sequent(bare));
      RootedHypersequent inner(bare.ante.modals(), bare.succ.modals(), bare.crown);
      inner.crown.push_back(root_atoms(bare));
      inner = with(inner, a, right);
      std::vector<Proof> leaves;
      for (std::size_t k = 0; k < cls.size(); ++k)
        leaves.push_back(exch_up(cols[k][j], cls[k].atoms));
      Proof body = assemble(skeleton(inner, {{a, right}}), leaves);
      finished.push_back(node(top, RuleInstance::on(rule_for(f, right), f), {body}));
    }
    return assemble(outer, finished);
  }

  // ---- strip: NFcut2, Merge, NFcut1.
  Proof strip(const Proof& pf, const Formula& f, bool right) {
    tick();
    const Formula& a = f.body();
    const auto cls = clauses_of(a, right);
    auto parts = nf2_split(pf, f, right, cls);
    std::vector<Proof> leaves;
    for (std::size_t k = 0; k < cls.size(); ++k) leaves.push_back(merge_r(parts[k], cls[k].atoms));
    const RootedHypersequent t = with(without(pf->conclusion, f, right), a, right);
    return assemble(skeleton(t, {{a, right}}), leaves);
  }

  // ---- inversion of LDia/RBox through the normal forms
  Proof invert_jump(const Proof& pf, const Formula& f, bool right) {
    tick();
    if (principal_is(pf, f, right)) return pf->premises[0];
    const auto& s = pf->conclusion;
    const Formula& a = f.body();
    const auto cls = clauses_of(a, right);
    auto parts = nf2_split(pf, f, right, cls);
    std::vector<Proof> leaves;
    for (std::size_t k = 0; k < cls.size(); ++k) leaves.push_back(exch_up(parts[k], cls[k].atoms));
    const RootedHypersequent t = apply_backward(s, RuleInstance::on(rule_for(f, right), f))[0];
    return assemble(skeleton(t, {{a, right}}), leaves);
  }

  // ---- cut elimination

  // A jump node re-read with its root atoms pushed into a fresh component.
  Proof shift(const Proof& pf) {
    const auto& s = pf->conclusion;
    RootedHypersequent t(s.ante.modals(), s.succ.modals(), s.crown);
    t.crown.push_back(root_atoms(s));
    return again(pf, t, {ew(pf->premises[0], CrownComponent{})});
  }

  Proof cut(const Proof& l, const Proof& r, const Formula& d) {
    tick();
    const RootedHypersequent o = cut_conclusion(l->conclusion, r->conclusion, d);
    if (auto init = is_initial(o)) return node(o, *init, {});
    switch (d.op()) {
      case Connective::Atom: return cut_atom(l, r, d, o);
      case Connective::Box:
      case Connective::Dia: return cut_modal(l, r, d, o);
      case Connective::Top: return weaken_to(drop_inert(r, d, false), o);
      case Connective::Bottom: return weaken_to(drop_inert(l, d, true), o);
      default: return cut_prop(l, r, d, o);
    }
  }

  // Removes a constant that is never principal and so sits in every root above.
  Proof drop_inert(const Proof& pf, const Formula& f, bool right) {
    tick();
    std::vector<Proof> kids;
    for (const auto& k : pf->premises) kids.push_back(drop_inert(k, f, right));
    return again(pf, without(pf->conclusion, f, right), std::move(kids));
  }

  Proof permute_left(const Proof& l, const Proof& r, const Formula& d, const RootedHypersequent& o) {
    std::vector<Proof> kids;
    for (const auto& k : l->premises) kids.push_back(cut(k, r, d));
    return again(l, o, std::move(kids));
  }

  Proof permute_right(const Proof& l, const Proof& r, const Formula& d, const RootedHypersequent& o) {
    std::vector<Proof> kids;
    for (const auto& k : r->premises) kids.push_back(cut(l, k, d));
    return again(r, o, std::move(kids));
  }

  Proof cut_prop(const Proof& l, const Proof& r, const Formula& d, const RootedHypersequent& o) {
    auto ls = invert_prop(l, d, true);
    auto rs = invert_prop(r, d, false);
    switch (d.op()) {
      case Connective::Neg: return cut(rs[0], ls[0], d.body());
      case Connective::And: {
        Proof x = cut(ls[0], rs[0], d.lhs());
        return contract_to(cut(ls[1], x, d.rhs()), o);
      }
      case Connective::Or: {
        Proof x = cut(ls[0], rs[0], d.lhs());
        return contract_to(cut(x, rs[1], d.rhs()), o);
      }
      case Connective::Imp: {
        Proof x = cut(rs[0], ls[0], d.lhs());
        return contract_to(cut(x, rs[1], d.rhs()), o);
      }
      default: fail("unexpected cut formula " + render_formula(d));
    }
  }

  Proof cut_atom(const Proof& l, const Proof& r, const Formula& p, const RootedHypersequent& o) {
    // A closed premise other than Ax on p would have closed o already.
    if (is_initial_rule(l->instance.rule)) return weaken_to(r, o);
    if (is_initial_rule(r->instance.rule)) return weaken_to(l, o);
    if (!is_jump_rule(l->instance.rule)) return permute_left(l, r, p, o);
    if (!is_jump_rule(r->instance.rule)) return permute_right(l, r, p, o);

    // Both roots are modal/atomic: p moves into components and a crown cut takes over.
    const CrownComponent rl = root_atoms(l->conclusion);
    const CrownComponent rr = root_atoms(r->conclusion);
    const Proof sr = shift(r);
    const Proof& kid = l->premises[0];
    if (l->instance.rule == RuleId::Exch) return merge_r(cutc(kid, rl, sr, rr, p), CrownComponent{});
    const Formula& f = *l->instance.principal;
    const bool right = l->instance.side == Side::Right;
    std::vector<Proof> parts;
    for (const auto& leaf : split(kid, skeleton(kid->conclusion, {{f.body(), right}})))
      parts.push_back(merge_r(cutc(leaf, rl, sr, rr, p), CrownComponent{}));
    return nf2_join(without(o, f, right), f, right, parts);
  }

  // Crown cut: p on the right of component ci in l, on the left of cj in r.
  Proof cutc(const Proof& l, const CrownComponent& ci, const Proof& r, const CrownComponent& cj,
             const Formula& p) {
    tick();
    const auto& ls = l->conclusion;
    const auto& rs = r->conclusion;
    if (!ls.root_is_modal_atomic() || !rs.root_is_modal_atomic())
      fail("constant in the root blocks the crown cut");
    CrownComponent mi = ci, mj = cj;
    if (!mi.succ.remove_one(p) || !mj.ante.remove_one(p)) fail("crown cut atom missing");
    const CrownComponent w = fuse(mi, mj);
    RootedHypersequent o(ls.ante.modals().plus(rs.ante.modals()).plus(w.ante),
                         ls.succ.modals().plus(rs.succ.modals()).plus(w.succ),
                         drop(ls.crown, ci));
    o.crown.push_back(root_atoms(ls));
    for (const auto& c : drop(rs.crown, cj)) o.crown.push_back(c);
    o.crown.push_back(root_atoms(rs));
    if (auto init = is_initial(o)) return node(o, *init, {});

    // A closed premise leaves a component with an atom on both sides.
    for (const Proof* x : {&l, &r}) {
      if (!is_initial_rule((*x)->instance.rule)) continue;
      const std::size_t pos = index_of(o.crown, root_atoms((*x)->conclusion));
      const RootedHypersequent up = apply_backward(o, RuleInstance::exch(pos))[0];
      auto init = is_initial(up);
      if (!init) fail("crown cut: closed premise does not close its component");
      return node(o, RuleInstance::exch(pos), {node(up, *init, {})});
    }

    const RuleId lr = l->instance.rule;
    if (is_lr_jump(lr)) {
      const Formula& f = *l->instance.principal;
      const bool right = l->instance.side == Side::Right;
      const Proof& kid = l->premises[0];
      std::vector<Proof> parts;
      for (const auto& leaf : split(kid, skeleton(kid->conclusion, {{f.body(), right}})))
        parts.push_back(cutc(leaf, ci, r, cj, p));
      return nf2_join(without(o, f, right), f, right, parts);
    }
    if (lr == RuleId::LBox || lr == RuleId::RDia) return world_shift(l, ci, r, cj, p, true, o, w);
    if (lr == RuleId::Exch && ls.crown[*l->instance.crown_index] != ci)
      return cutc(l->premises[0], ci, r, cj, p);

    const RuleId rr = r->instance.rule;
    if (is_lr_jump(rr)) {
      const Formula& f = *r->instance.principal;
      const bool right = r->instance.side == Side::Right;
      const Proof& kid = r->premises[0];
      std::vector<Proof> parts;
      for (const auto& leaf : split(kid, skeleton(kid->conclusion, {{f.body(), right}})))
        parts.push_back(cutc(l, ci, leaf, cj, p));
      return nf2_join(without(o, f, right), f, right, parts);
    }
    if (rr == RuleId::LBox || rr == RuleId::RDia) return world_shift(l, ci, r, cj, p, false, o, w);
    if (rr == RuleId::Exch && rs.crown[*r->instance.crown_index] != cj)
      return cutc(l, ci, r->premises[0], cj, p);
    if (lr != RuleId::Exch || rr != RuleId::Exch) fail("crown cut: unexpected rule pair");
    // Both Exch steps bring the cut components to the root.
    return cut(l->premises[0], r->premises[0], p);
  }

  // Crown cut when one side ends in LBox/RDia: decompose the body in that
  // premise, cut, move each result to the old root world, rebuild the body,
  // reapply the rule and swap the cut world back into the root.
  Proof world_shift(const Proof& l, const CrownComponent& ci, const Proof& r,
                    const CrownComponent& cj, const Formula& p, bool on_left,
                    const RootedHypersequent& o, const CrownComponent& w) {
    const Proof& x = on_left ? l : r;
    const auto& xs = x->conclusion;
    const auto& ys = (on_left ? r : l)->conclusion;
    const Formula& f = *x->instance.principal;
    const bool right = x->instance.side == Side::Right;
    const Formula& b = f.body();
    const Proof& kid = x->premises[0];
    const auto cls = clauses_of(b, right);
    auto leaves = split(kid, skeleton(kid->conclusion, {{b, right}}));
    if (leaves.size() != cls.size()) fail("clause count mismatch");

    const CrownComponent home = root_atoms(xs);
    std::vector<Proof> tops;
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      Proof c = on_left ? cutc(leaves[k], ci, r, cj, p) : cutc(l, ci, leaves[k], cj, p);
      tops.push_back(exch_up(c, fuse(home, cls[k].atoms)));
    }
    // x's root world with the other root's modal part, the cut world as a component.
    RootedHypersequent sf(xs.ante.plus(ys.ante.modals()), xs.succ.plus(ys.succ.modals()),
                          drop(o.crown, home));
    sf.crown.push_back(w);
    Proof body = assemble(skeleton(with(sf, b, right), {{b, right}}), tops);
    return exch_up(node(sf, x->instance, {body}), w);
  }

  Proof cut_modal(const Proof& l, const Proof& r, const Formula& d, const RootedHypersequent& o) {
    const bool box = d.op() == Connective::Box;
    const Formula& a = d.body();
    if (box && principal_is(r, d, false)) {
      Proof x = cut(l, r->premises[0], d);
      return contract_to(cut(strip(l, d, true), x, a), o);
    }
    if (!box && principal_is(l, d, true)) {
      Proof x = cut(l->premises[0], r, d);
      return contract_to(cut(x, strip(r, d, false), a), o);
    }
    if (is_initial_rule(l->instance.rule) || is_initial_rule(r->instance.rule))
      fail("closed premise with an open cut conclusion");
    if (!is_jump_rule(l->instance.rule)) return permute_left(l, r, d, o);
    if (!is_jump_rule(r->instance.rule)) return permute_right(l, r, d, o);

    const CrownComponent rl = root_atoms(l->conclusion);
    const CrownComponent rr = root_atoms(r->conclusion);
    const Proof& lk = l->premises[0];
    const Proof& rk = r->premises[0];
    if (lk->conclusion.succ.contains(d))
      return again(l, o, {merge_c(cut(lk, shift(r), d), rl, rr)});
    if (rk->conclusion.ante.contains(d))
      return again(r, o, {merge_c(cut(shift(l), rk, d), rl, rr)});
    fail("cut formula vanished from both premises");
  }
};

template <typename F>
auto guarded(F&& fn) {
  try {
    return fn();
  } catch (const CalculusError& e) {
    throw TransformError(e.what());
  } catch (const SequentError& e) {
    throw TransformError(e.what());
  } catch (const std::invalid_argument& e) {
    throw TransformError(e.what());
  }
}

void verify(const Proof& out) {
  if (auto c = check_proof(out); !c.ok)
    fail("internal rewrite produced an invalid proof: " + c.reason);
}

TransformReport report(const Proof& in, Proof out, bool hp) {
  verify(out);
  TransformReport r;
  r.heightIn = proof_height(in);
  r.heightOut = proof_height(out);
  r.output = std::move(out);
  r.heightPreserving = hp;
  return r;
}

const CrownComponent& component(const Proof& pf, std::size_t i) {
  if (!pf) throw TransformError("null proof");
  if (i >= pf->conclusion.crown.size())
    throw TransformError("crown index " + std::to_string(i) + " out of range");
  return pf->conclusion.crown[i];
}

void require_root(const Proof& pf, const Formula& f, bool right) {
  if (!pf) throw TransformError("null proof");
  if (!side(pf->conclusion, right).contains(f))
    throw TransformError(render_formula(f) + " does not occur on the " +
                         (right ? "right" : "left") + " of the root");
}

}  // namespace

RootedHypersequent cut_conclusion(const RootedHypersequent& left, const RootedHypersequent& right,
                                  const Formula& d) {
  RootedHypersequent o = left;
  if (!o.succ.remove_one(d)) fail(render_formula(d) + " is not on the right of the left premise");
  FMultiset ra = right.ante;
  if (!ra.remove_one(d)) fail(render_formula(d) + " is not on the left of the right premise");
  o.ante.add_all(ra);
  o.succ.add_all(right.succ);
  for (const auto& c : right.crown) o.crown.push_back(c);
  return o;
}

TransformReport merge_crown(const Proof& pf, std::size_t i, std::size_t j,
                            const TransformBudget& budget) {
  const CrownComponent ci = component(pf, i), cj = component(pf, j);
  if (i == j) throw TransformError("cannot merge a component with itself");
  return guarded([&] {
    Engine e(budget);
    return report(pf, e.merge_c(pf, ci, cj), true);
  });
}

TransformReport merge_root(const Proof& pf, std::size_t i, const TransformBudget& budget) {
  const CrownComponent ci = component(pf, i);
  return guarded([&] {
    Engine e(budget);
    return report(pf, e.merge_r(pf, ci), true);
  });
}

TransformReport weaken(const Proof& pf, const WeakenAt& where, const TransformBudget& budget) {
  if (!pf) throw TransformError("null proof");
  return guarded([&] {
    Engine e(budget);
    switch (where.kind) {
      case WeakenAt::Kind::LeftRoot: return report(pf, e.weaken_root(pf, where.formula, false), false);
      case WeakenAt::Kind::RightRoot: return report(pf, e.weaken_root(pf, where.formula, true), false);
      case WeakenAt::Kind::NewComponent:
        if (!where.atoms.ante.all_atomic() || !where.atoms.succ.all_atomic())
          throw TransformError("crown weakening needs atoms");
        return report(pf, e.ew(pf, where.atoms), true);
      case WeakenAt::Kind::Crown: {
        const CrownComponent ci = component(pf, where.index);
        if (!where.atoms.ante.all_atomic() || !where.atoms.succ.all_atomic())
          throw TransformError("crown weakening needs atoms");
        return report(pf, e.merge_c(e.ew(pf, where.atoms), ci, where.atoms), true);
      }
    }
    throw TransformError("unknown weakening position");
  });
}

TransformReport contract(const Proof& pf, const ContractAt& where, const TransformBudget& budget) {
  if (!pf) throw TransformError("null proof");
  return guarded([&] {
    Engine e(budget);
    switch (where.kind) {
      case ContractAt::Kind::LeftRoot:
      case ContractAt::Kind::RightRoot: {
        const bool right = where.kind == ContractAt::Kind::RightRoot;
        if (side(pf->conclusion, right).count(where.formula) < 2)
          throw TransformError("no duplicate of " + render_formula(where.formula));
        return report(pf, e.contract_gen(pf, where.formula, right), where.formula.is_atom());
      }
      case ContractAt::Kind::CrownLeft:
      case ContractAt::Kind::CrownRight: {
        const bool right = where.kind == ContractAt::Kind::CrownRight;
        const CrownComponent ci = component(pf, where.index);
        if (side(ci, right).count(where.formula) < 2)
          throw TransformError("no duplicate of " + render_formula(where.formula) + " in component");
        return report(pf, e.contract_crown(pf, ci, where.formula, right), true);
      }
      case ContractAt::Kind::External: {
        const CrownComponent ci = component(pf, where.index);
        if (where.index == where.other || component(pf, where.other) != ci)
          throw TransformError("external contraction needs two equal components");
        return report(pf, e.contract_external(pf, ci), true);
      }
    }
    throw TransformError("unknown contraction position");
  });
}

std::vector<TransformReport> invert(const Proof& pf, const RuleInstance& r,
                                    const TransformBudget& budget) {
  if (!pf) throw TransformError("null proof");
  return guarded([&] {
    try {
      apply_backward(pf->conclusion, r);
    } catch (const CalculusError& e) {
      throw TransformError(std::string("rule does not match the end-sequent: ") + e.what());
    }
    Engine e(budget);
    std::vector<TransformReport> out;
    if (is_initial_rule(r.rule)) return out;
    if (r.rule == RuleId::Exch) {
      out.push_back(report(pf, e.exch_up(pf, pf->conclusion.crown[*r.crown_index]), false));
      return out;
    }
    const Formula& f = *r.principal;
    const bool right = r.side == Side::Right;
    if (is_propositional_rule(r.rule)) {
      for (auto& p : e.invert_prop(pf, f, right)) out.push_back(report(pf, p, true));
    } else if (is_lr_jump(r.rule)) {
      out.push_back(report(pf, e.invert_jump(pf, f, right), false));
    } else {
      out.push_back(report(pf, e.weaken_root(pf, f.body(), right), false));
    }
    return out;
  });
}

TransformReport strip_modality(const Proof& pf, const StripAt& where,
                               const TransformBudget& budget) {
  const bool right = where.kind == StripAt::Kind::RightBox;
  const Connective want = right ? Connective::Box : Connective::Dia;
  if (where.formula.op() != want)
    throw TransformError(std::string("strip needs a ") + (right ? "[]" : "<>") + " formula");
  require_root(pf, where.formula, right);
  return guarded([&] {
    Engine e(budget);
    return report(pf, e.strip(pf, where.formula, right), false);
  });
}

TransformReport eliminate_cut(const Proof& left, const Proof& right, const Formula& d,
                              const TransformBudget& budget) {
  require_root(left, d, true);
  require_root(right, d, false);
  return guarded([&] {
    Engine e(budget);
    Proof out = e.cut(left, right, d);
    verify(out);
    TransformReport r;
    r.heightIn = std::max(proof_height(left), proof_height(right));
    r.heightOut = proof_height(out);
    r.output = std::move(out);
    return r;
  });
}

}  // namespace s5
