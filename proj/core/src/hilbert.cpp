#include "s5/hilbert.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include "s5/qnf.hpp"

namespace s5 {

namespace {

constexpr std::array<const char*, 10> kRuleNames{"Assumption", "Taut", "AxDual", "AxK", "AxT",
                                                 "Ax4",        "Ax5",  "AxB",    "MP",  "Nec"};

using Binding = std::map<std::string, Formula>;

// Metavariables are atoms whose names the parser can never produce.
Formula meta(const char* n) { return Formula::atom(std::string("?") + n); }

bool unify(const Formula& pat, const Formula& f, Binding& b) {
  if (pat.is_atom() && pat.name().front() == '?') {
    auto [it, fresh] = b.emplace(pat.name(), f);
    return fresh || it->second == f;
  }
  if (pat.op() != f.op() || pat.arity() != f.arity()) return false;
  if (pat.is_atom()) return pat.name() == f.name();
  for (std::size_t i = 0; i < pat.arity(); ++i)
    if (!unify(pat.arg(i), f.arg(i), b)) return false;
  return true;
}

std::vector<Formula> schemas(HilbertRule r) {
  const Formula a = meta("A"), b = meta("B");
  const Formula bx = Formula::box(a);
  const Formula dual = Formula::neg(Formula::dia(Formula::neg(a)));
  switch (r) {
    case HilbertRule::AxDual:
      return {Formula::imp(bx, dual), Formula::imp(dual, bx), Formula::iff(bx, dual)};
    case HilbertRule::AxK:
      return {Formula::imp(Formula::box(Formula::imp(a, b)), Formula::imp(bx, Formula::box(b)))};
    case HilbertRule::AxT: return {Formula::imp(bx, a)};
    case HilbertRule::Ax4: return {Formula::imp(bx, Formula::box(bx))};
    case HilbertRule::Ax5: return {Formula::imp(Formula::dia(a), Formula::box(Formula::dia(a)))};
    case HilbertRule::AxB: return {Formula::imp(a, Formula::box(Formula::dia(a)))};
    default: return {};
  }
}

std::optional<std::pair<std::size_t, Binding>> match(HilbertRule r, const Formula& f) {
  const auto pats = schemas(r);
  for (std::size_t i = 0; i < pats.size(); ++i) {
    Binding b;
    if (unify(pats[i], f, b)) return std::make_pair(i, b);
  }
  return std::nullopt;
}

// Applies r to s and proves each premise with `kid`.
Proof step(const RootedHypersequent& s, const RuleInstance& r,
           const std::function<Proof(const RootedHypersequent&, std::size_t)>& kid) {
  const auto prems = apply_backward(s, r);
  std::vector<Proof> kids;
  for (std::size_t i = 0; i < prems.size(); ++i) kids.push_back(kid(prems[i], i));
  return infer(s, r, std::move(kids));
}

Proof step1(const RootedHypersequent& s, RuleId rule, const Formula& principal,
            const std::function<Proof(const RootedHypersequent&)>& kid) {
  return step(s, RuleInstance::on(rule, principal),
              [&](const RootedHypersequent& p, std::size_t) { return kid(p); });
}

// Weakens pf up to target through the admissible weakenings.
Proof widen(Proof pf, const RootedHypersequent& target, const TransformBudget& budget = {}) {
  const auto& s = pf->conclusion;
  const FMultiset left = target.ante.minus(s.ante);
  const FMultiset right = target.succ.minus(s.succ);
  std::vector<CrownComponent> extra = target.crown;
  for (const auto& c : s.crown) {
    auto it = std::find(extra.begin(), extra.end(), c);
    if (it == extra.end()) throw HilbertError("cannot widen: crown component " + render_component(c));
    extra.erase(it);
  }
  for (const auto& f : left) pf = weaken(pf, WeakenAt::left(f), budget).output;
  for (const auto& f : right) pf = weaken(pf, WeakenAt::right(f), budget).output;
  for (const auto& c : extra) pf = weaken(pf, WeakenAt::component(c), budget).output;
  return pf;
}

Proof widen_id(const Formula& a, const RootedHypersequent& target) {
  try {
    return widen(identity_proof(a), target);
  } catch (const TransformError& e) {
    throw HilbertError("no cut-free proof of " + render_sequent(target) + ": " + e.what());
  }
}

RootedHypersequent theorem(const Formula& f) { return RootedHypersequent({}, {f}); }

// => f for a substitution instance f of a propositional tautology.
Proof tautology(const RootedHypersequent& s) {
  if (auto init = is_initial(s)) return close_initial(s);
  for (bool right : {false, true})
    for (const auto& f : right ? s.succ : s.ante) {
      if (f.is_atom() || f.is_modal() || f.is_constant()) continue;
      RuleId rule{};
      switch (f.op()) {
        case Connective::Neg: rule = right ? RuleId::RNeg : RuleId::LNeg; break;
        case Connective::And: rule = right ? RuleId::RAnd : RuleId::LAnd; break;
        case Connective::Or: rule = right ? RuleId::ROr : RuleId::LOr; break;
        default: rule = right ? RuleId::RImp : RuleId::LImp; break;
      }
      return step(s, RuleInstance::on(rule, f),
                  [](const RootedHypersequent& p, std::size_t) { return tautology(p); });
    }
  for (const auto& f : s.ante)
    if (f.is_modal() && s.succ.contains(f)) return widen_id(f, s);
  throw HilbertError("not a tautology: " + render_sequent(s));
}

}  // namespace

const char* hilbert_rule_name(HilbertRule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

bool matches_axiom(HilbertRule r, const Formula& f) { return match(r, f).has_value(); }

Proof identity_proof(const Formula& a) {
  const RootedHypersequent s({a}, {a});
  switch (a.op()) {
    case Connective::Atom:
    case Connective::Bottom:
    case Connective::Top: return close_initial(s);
    case Connective::Neg:
      return step1(s, RuleId::RNeg, a, [&](const auto& p) {
        return step1(p, RuleId::LNeg, a, [&](const auto&) { return identity_proof(a.body()); });
      });
    case Connective::And:
      return step1(s, RuleId::LAnd, a, [&](const auto& p) {
        return step(p, RuleInstance::on(RuleId::RAnd, a), [&](const auto& q, std::size_t i) {
          return widen_id(a.arg(i), q);
        });
      });
    case Connective::Or:
      return step1(s, RuleId::ROr, a, [&](const auto& p) {
        return step(p, RuleInstance::on(RuleId::LOr, a), [&](const auto& q, std::size_t i) {
          return widen_id(a.arg(i), q);
        });
      });
    case Connective::Imp:
      return step1(s, RuleId::RImp, a, [&](const auto& p) {
        return step(p, RuleInstance::on(RuleId::LImp, a), [&](const auto& q, std::size_t i) {
          return widen_id(a.arg(i), q);
        });
      });
    case Connective::Box:
      return step1(s, RuleId::RBox, a, [&](const auto& p) {
        return step1(p, RuleId::LBox, a, [&](const auto& q) { return widen_id(a.body(), q); });
      });
    case Connective::Dia:
      return step1(s, RuleId::LDia, a, [&](const auto& p) {
        return step1(p, RuleId::RDia, a, [&](const auto& q) { return widen_id(a.body(), q); });
      });
  }
  throw HilbertError("unknown connective");
}

Proof axiom_proof(HilbertRule r, const Formula& f, const TransformBudget& budget) {
  auto m = match(r, f);
  if (!m) throw HilbertError(render_formula(f) + " is not an instance of " + hilbert_rule_name(r));
  const auto& [which, bind] = *m;
  const Formula a = bind.at("?A");
  const RootedHypersequent goal = theorem(f);
  auto under_imp = [&](const std::function<Proof(const RootedHypersequent&)>& body) {
    return step1(goal, RuleId::RImp, f, body);
  };
  switch (r) {
    case HilbertRule::AxT:
      return under_imp([&](const auto& p) {
        return step1(p, RuleId::LBox, f.lhs(), [&](const auto& q) { return widen_id(a, q); });
      });
    case HilbertRule::AxK: {
      const Formula b = bind.at("?B");
      const Formula ab = Formula::imp(a, b);
      return under_imp([&](const auto& p) {
        return step1(p, RuleId::RImp, f.rhs(), [&](const auto& p2) {
          return step1(p2, RuleId::RBox, Formula::box(b), [&](const auto& p3) {
            return step1(p3, RuleId::LBox, Formula::box(a), [&](const auto& p4) {
              return step1(p4, RuleId::LBox, Formula::box(ab), [&](const auto& p5) {
                return step(p5, RuleInstance::on(RuleId::LImp, ab),
                            [&](const auto& q, std::size_t i) { return widen_id(i ? b : a, q); });
              });
            });
          });
        });
      });
    }
    case HilbertRule::Ax4:
    case HilbertRule::Ax5:
      return under_imp([&](const auto& p) {
        return step1(p, RuleId::RBox, f.rhs(), [&](const auto& q) { return widen_id(f.lhs(), q); });
      });
    case HilbertRule::AxB: {
      // A => <>A and <>A => []<>A, joined by a cut on <>A.
      const Formula da = Formula::dia(a);
      const Proof up = step1(RootedHypersequent({a}, {da}), RuleId::RDia, da,
                             [&](const auto& q) { return widen_id(a, q); });
      const Proof five = step1(RootedHypersequent({da}, {f.rhs()}), RuleId::RBox, f.rhs(),
                               [&](const auto& q) { return widen_id(da, q); });
      const Proof body = eliminate_cut(up, five, da, budget).output;
      return infer(goal, RuleInstance::on(RuleId::RImp, f), {body});
    }
    case HilbertRule::AxDual: {
      const Formula bx = Formula::box(a);
      const Formula na = Formula::neg(a);
      const Formula dn = Formula::dia(na);
      const Formula dual = Formula::neg(dn);
      auto forward = [&](const RootedHypersequent& s, const Formula& g) {
        return step1(s, RuleId::RImp, g, [&](const auto& p) {
          return step1(p, RuleId::RNeg, dual, [&](const auto& p2) {
            return step1(p2, RuleId::LDia, dn, [&](const auto& p3) {
              return step1(p3, RuleId::LNeg, na, [&](const auto& p4) {
                return step1(p4, RuleId::LBox, bx, [&](const auto& q) { return widen_id(a, q); });
              });
            });
          });
        });
      };
      auto backward = [&](const RootedHypersequent& s, const Formula& g) {
        return step1(s, RuleId::RImp, g, [&](const auto& p) {
          return step1(p, RuleId::LNeg, dual, [&](const auto& p2) {
            return step1(p2, RuleId::RBox, bx, [&](const auto& p3) {
              return step1(p3, RuleId::RDia, dn, [&](const auto& p4) {
                return step1(p4, RuleId::RNeg, na, [&](const auto& q) { return widen_id(a, q); });
              });
            });
          });
        });
      };
      if (which == 0) return forward(goal, f);
      if (which == 1) return backward(goal, f);
      return step(goal, RuleInstance::on(RuleId::RAnd, f), [&](const auto& q, std::size_t i) {
        return i == 0 ? forward(q, f.lhs()) : backward(q, f.rhs());
      });
    }
    default: break;
  }
  throw HilbertError(std::string(hilbert_rule_name(r)) + " is not an axiom");
}

HilbertCheck check_hilbert(const HilbertProof& hp) {
  std::vector<bool> uses(hp.steps.size(), false);
  auto bad = [](std::size_t k, std::string why) { return HilbertCheck{false, k, std::move(why)}; };
  for (std::size_t k = 0; k < hp.steps.size(); ++k) {
    const auto& [f, why] = hp.steps[k];
    switch (why.rule) {
      case HilbertRule::Assumption:
        if (!hp.assumptions.contains(f)) return bad(k, "not an assumption");
        uses[k] = true;
        break;
      case HilbertRule::Taut:
        try {
          if (!quasi_equivalent(f, Formula::top())) return bad(k, "not a tautology");
        } catch (const std::invalid_argument& e) {
          return bad(k, e.what());
        }
        break;
      case HilbertRule::MP: {
        const std::size_t i = why.minor, j = why.major;
        if (i >= k || j >= k) return bad(k, "modus ponens refers to a later step");
        if (hp.steps[j].formula != Formula::imp(hp.steps[i].formula, f))
          return bad(k, "modus ponens premises do not match");
        uses[k] = uses[i] || uses[j];
        break;
      }
      case HilbertRule::Nec: {
        const std::size_t i = why.minor;
        if (i >= k) return bad(k, "necessitation refers to a later step");
        if (f != Formula::box(hp.steps[i].formula)) return bad(k, "necessitation does not match");
        if (uses[i]) return bad(k, "necessitation on non-theorem");
        break;
      }
      default:
        if (!matches_axiom(why.rule, f))
          return bad(k, std::string("not an instance of ") + hilbert_rule_name(why.rule));
    }
  }
  if (hp.steps.empty()) return bad(0, "empty derivation");
  return {};
}

Proof translate(const HilbertProof& hp, const TransformBudget& budget) {
  if (auto c = check_hilbert(hp); !c)
    throw HilbertError("step " + std::to_string(c.step + 1) + ": " + c.reason);
  const FMultiset& gamma = hp.assumptions;
  std::vector<Proof> out;
  std::vector<bool> open;  // proof's antecedent is gamma rather than empty
  for (const auto& [f, why] : hp.steps) {
    switch (why.rule) {
      case HilbertRule::Assumption:
        out.push_back(widen_id(f, RootedHypersequent(gamma, {f})));
        open.push_back(true);
        continue;
      case HilbertRule::Taut: out.push_back(tautology(theorem(f))); break;
      case HilbertRule::MP: {
        const Formula& ai = hp.steps[why.minor].formula;
        const Formula& imp = hp.steps[why.major].formula;
        const Proof aux = step1(RootedHypersequent({ai, imp}, {f}), RuleId::LImp, imp,
                                [&](const auto& q) { return widen_id(q.succ.contains(ai) ? ai : f, q); });
        Proof p = eliminate_cut(out[why.minor], aux, ai, budget).output;
        p = eliminate_cut(out[why.major], p, imp, budget).output;
        if (open[why.minor] && open[why.major])
          for (const auto& g : gamma) p = contract(p, ContractAt::left(g), budget).output;
        out.push_back(p);
        open.push_back(open[why.minor] || open[why.major]);
        continue;
      }
      case HilbertRule::Nec:
        out.push_back(step1(theorem(f), RuleId::RBox, f,
                            [&](const auto& q) { return widen(out[why.minor], q, budget); }));
        break;
      default: out.push_back(axiom_proof(why.rule, f, budget)); break;
    }
    open.push_back(false);
  }
  const auto& last = hp.steps.back().formula;
  return widen(out.back(), RootedHypersequent(gamma, {last}), budget);
}

HilbertProof parse_hilbert(std::string_view text) {
  HilbertProof hp;
  static const std::regex header(R"(^\s*assumptions\s*:(.*)$)", std::regex::icase);
  static const std::regex line(R"(^\s*(\d+)\s*:(.*);\s*([A-Za-z0-9]+)\s*(?:\(([^)]*)\))?\s*$)");
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw HilbertError("line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::smatch m;
    try {
      if (std::regex_match(raw, m, header)) {
        if (!hp.steps.empty()) fail("assumptions must precede the steps");
        std::stringstream items(m[1].str());
        std::string item;
        while (std::getline(items, item, ','))
          if (item.find_first_not_of(" \t\r") != std::string::npos) hp.assumptions.add(parse_formula(item));
        continue;
      }
      if (!std::regex_match(raw, m, line)) fail("expected '<idx>: <formula> ; <justification>'");
      if (std::stoul(m[1].str()) != hp.steps.size() + 1) fail("steps must be numbered 1, 2, ...");
      HilbertStep st{parse_formula(m[2].str()), {}};
      const std::string name = m[3].str();
      auto it = std::find(kRuleNames.begin(), kRuleNames.end(), name);
      if (it == kRuleNames.end()) fail("unknown justification " + name);
      st.why.rule = static_cast<HilbertRule>(it - kRuleNames.begin());
      std::vector<std::size_t> refs;
      std::stringstream args(m[4].str());
      std::string a;
      while (std::getline(args, a, ','))
        if (a.find_first_not_of(" \t") != std::string::npos) {
          const std::size_t v = std::stoul(a);
          if (v == 0) fail("step references are 1-based");
          refs.push_back(v - 1);
        }
      const std::size_t want = st.why.rule == HilbertRule::MP ? 2 : st.why.rule == HilbertRule::Nec ? 1 : 0;
      if (refs.size() != want) fail(name + " takes " + std::to_string(want) + " step reference(s)");
      if (want >= 1) st.why.minor = refs[0];
      if (want == 2) st.why.major = refs[1];
      hp.steps.push_back(std::move(st));
    } catch (const ParseError& e) {
      fail(e.what());
    } catch (const std::logic_error& e) {
      fail(std::string("bad number: ") + e.what());
    }
  }
  return hp;
}

std::string render_hilbert(const HilbertProof& hp) {
  std::string out;
  if (!hp.assumptions.empty()) {
    out += "assumptions:";
    bool first = true;
    for (const auto& f : hp.assumptions) {
      out += first ? " " : ", ";
      out += render_formula(f);
      first = false;
    }
    out += "\n";
  }
  for (std::size_t k = 0; k < hp.steps.size(); ++k) {
    const auto& [f, why] = hp.steps[k];
    out += std::to_string(k + 1) + ": " + render_formula(f) + " ; " + hilbert_rule_name(why.rule);
    if (why.rule == HilbertRule::MP)
      out += "(" + std::to_string(why.minor + 1) + ", " + std::to_string(why.major + 1) + ")";
    if (why.rule == HilbertRule::Nec) out += "(" + std::to_string(why.minor + 1) + ")";
    out += "\n";
  }
  return out;
}

}  // namespace s5
