// One line per acceptance criterion; exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "worked_proofs.hpp"
#include "s5/hilbert.hpp"
#include "s5/qnf.hpp"
#include "s5/search.hpp"
#include "s5/semantics.hpp"
#include "s5/transform.hpp"

using namespace s5;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Proofs gathered along the way for the soundness and subformula sweeps.
struct Collected {
  std::vector<Proof> all;
  std::vector<Proof> searched;

  void found(const Proof& pf) {
    all.push_back(pf);
    searched.push_back(pf);
  }
  void built(const Proof& pf) { all.push_back(pf); }
};

// Accumulates failures; the first few are kept for the report line.
class Tally {
 public:
  void fail(const std::string& what) {
    if (failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  std::size_t failures() const { return failures_; }
  Outcome outcome(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::move(summary) + ", " + std::to_string(failures_) + " failure(s): " + notes_};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

RootedHypersequent theorem(const Formula& f) { return RootedHypersequent({}, {f}); }

Outcome worked_examples(Collected& c) {
  Tally t;
  double slowest = 0;
  for (const char* text : {"(r & p) -> (q -> [](<>(p & q) & <>r))", "[]([]~p | p) -> [](~p | []p)"}) {
    auto t0 = Clock::now();
    auto v = prove(theorem(parse_formula(text)));
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    if (!v.provable()) {
      t.fail(std::string(text) + " not proved");
      continue;
    }
    c.found(v.proof);
    t.expect(secs <= 1.0, std::string(text) + " took " + std::to_string(secs) + " s");
    t.expect(check_proof(v.proof).ok, std::string(text) + " rejected by the checker");
  }
  const Proof first = testing::first_example_transcription();
  const Proof second = testing::second_example_transcription();
  c.built(first);
  c.built(second);
  t.expect(check_proof(first).ok, "first transcription rejected");
  t.expect(check_proof(second).ok, "second transcription rejected");
  t.expect(proof_height(first) == 8,
           "first transcription has height " + std::to_string(proof_height(first)));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "both examples proved and checked (slowest %.4f s); transcriptions check, heights %zu and %zu",
                slowest, proof_height(first), proof_height(second));
  return t.outcome(buf);
}

Outcome axiom_suite(Collected& c) {
  Tally t;
  const std::vector<std::pair<const char*, const char*>> axioms{
      {"Dual(->)", "[]p -> ~<>~p"},
      {"Dual(<-)", "~<>~p -> []p"},
      {"K", "[](p -> q) -> ([]p -> []q)"},
      {"T", "[]p -> p"},
      {"4", "[]p -> [][]p"},
      {"5", "<>p -> []<>p"},
      {"B", "p -> []<>p"},
  };
  for (const auto& [name, text] : axioms) {
    const Formula f = parse_formula(text);
    auto v = decide_formula(f);
    if (!v.provable()) {
      t.fail(std::string(name) + " not proved");
      continue;
    }
    c.found(v.proof);
    t.expect(check_proof(v.proof).ok, std::string(name) + " proof rejected");
    t.expect(oracle_validity(f).valid(), std::string(name) + " has a countermodel");
    if (std::string(name) == "5") {
      for (RuleId r : rules_in_proof(v.proof))
        t.expect(r == RuleId::RDia || r == RuleId::LDia || r == RuleId::RBox || r == RuleId::RImp ||
                     r == RuleId::Ax,
                 std::string("axiom 5 proof uses ") + rule_name(r));
    }
  }
  return t.outcome("7 axiom instances provable and valid; axiom 5 uses only RDia, LDia, RBox, RImp, Ax");
}

Outcome refutations() {
  Tally t;
  std::size_t largest = 0;
  for (const char* text : {"p -> []p", "<>p -> p", "[](p | q) -> ([]p | []q)", "[]<>p -> p"}) {
    const Formula f = parse_formula(text);
    auto v = decide_formula(f);
    t.expect(v.status == SearchStatus::NotProvable,
             std::string(text) + ": " + status_name(v.status));
    auto o = oracle_validity(f);
    if (o.valid()) {
      t.fail(std::string(text) + ": oracle finds it valid");
      continue;
    }
    const auto& cm = *o.countermodel;
    largest = std::max(largest, cm.model.size());
    t.expect(cm.model.size() <= 3, std::string(text) + ": countermodel too large");
    t.expect(!eval(cm.model, cm.world, f), std::string(text) + ": countermodel satisfies it");
  }
  return t.outcome("4 non-theorems refuted, countermodels re-evaluated false, largest " +
                   std::to_string(largest) + " worlds");
}

Outcome agreement(Collected& c) {
  Tally t;
  auto t0 = Clock::now();
  auto formulas = testing::enumerate_formulas({"p", "q"}, 7, 2);
  const std::size_t enumerated = formulas.size();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) formulas.push_back(testing::random_formula(rng, 10, {"p", "q", "r"}));

  std::size_t valid = 0, budget = 0;
  for (const auto& f : formulas) {
    auto v = decide_formula(f);
    if (v.status == SearchStatus::BudgetExceeded) {
      ++budget;
      t.fail("budget on " + render_formula(f));
      continue;
    }
    const bool sem = oracle_validity(f).valid();
    valid += sem;
    t.expect(sem == v.provable(), "disagreement on " + render_formula(f));
    if (v.provable()) c.found(v.proof);
  }
  const double secs = seconds_since(t0);
  t.expect(secs <= 600, "took " + std::to_string(secs) + " s");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu enumerated + 500 random formulas, %zu valid, %zu budget hits, %.1f s",
                enumerated, valid, budget, secs);
  return t.outcome(buf);
}

std::vector<Proof> provable_sample(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<Proof> out;
  while (out.size() < n) {
    auto v = prove(testing::random_sequent(rng));
    if (v.provable()) out.push_back(v.proof);
  }
  return out;
}

// Runs one transform, checks the end-sequent and, for height-preserving
// rules, the height. Exceptions count as failures.
void check_transform(Tally& t, Collected& c, const std::string& what,
                     const std::function<TransformReport()>& run, const RootedHypersequent& want,
                     bool height_preserving, std::size_t& calls) {
  ++calls;
  try {
    auto r = run();
    c.built(r.output);
    if (!check_proof(r.output).ok) return t.fail(what + ": output rejected");
    if (!(r.output->conclusion == want))
      return t.fail(what + ": concludes " + render_sequent(r.output->conclusion));
    if (height_preserving && r.heightOut > r.heightIn)
      t.fail(what + ": height " + std::to_string(r.heightIn) + " -> " + std::to_string(r.heightOut));
  } catch (const std::exception& e) {
    t.fail(what + ": " + e.what());
  }
}

Outcome invertibility(Collected& c) {
  Tally t;
  std::size_t calls = 0, prop = 0;
  for (const Proof& pf : provable_sample(51, 100)) {
    c.found(pf);
    const auto& e = pf->conclusion;
    for (const auto& ri : backward_instances(e)) {
      if (is_initial_rule(ri.rule)) continue;
      const auto prem = apply_backward(e, ri);
      const std::string what = render_instance(ri) + " on " + render_sequent(e);
      ++calls;
      try {
        auto rs = invert(pf, ri);
        if (rs.size() != prem.size()) {
          t.fail(what + ": wrong number of premises");
          continue;
        }
        for (std::size_t k = 0; k < rs.size(); ++k) {
          c.built(rs[k].output);
          t.expect(check_proof(rs[k].output).ok && rs[k].output->conclusion == prem[k],
                   what + ": bad premise proof");
          if (is_propositional_rule(ri.rule)) {
            ++prop;
            t.expect(rs[k].heightOut <= rs[k].heightIn, what + ": height grew");
          }
        }
      } catch (const std::exception& ex) {
        t.fail(what + ": " + ex.what());
      }
    }
  }
  return t.outcome("100 sequents, " + std::to_string(calls) + " inversions (" +
                   std::to_string(prop) + " propositional premises height-checked)");
}

Outcome admissibility(Collected& c) {
  Tally t;
  std::mt19937_64 rng(61);
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  const std::vector<std::string> atoms{"p", "q", "r"};
  auto random_atoms = [&] {
    CrownComponent comp;
    for (const auto& x : atoms) {
      if (pick(3) == 0) comp.ante.add(Formula::atom(x));
      if (pick(3) == 0) comp.succ.add(Formula::atom(x));
    }
    return comp;
  };
  auto merged = [](const CrownComponent& a, const CrownComponent& b) {
    return CrownComponent(a.ante.plus(b.ante), a.succ.plus(b.succ));
  };
  auto erase = [](std::vector<CrownComponent>& v, std::size_t i) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  };

  std::size_t calls = 0;
  for (const Proof& pf : provable_sample(62, 100)) {
    const auto e = pf->conclusion;
    const std::string at = " on " + render_sequent(e);
    auto chk = [&](const std::string& what, const std::function<TransformReport()>& run,
                   const RootedHypersequent& want, bool hp) {
      check_transform(t, c, what + at, run, want, hp, calls);
    };

    const Formula a = testing::random_formula(rng, 4, atoms);
    auto want = e;
    want.ante.add(a);
    chk("LW " + render_formula(a), [&] { return weaken(pf, WeakenAt::left(a)); }, want, false);
    want = e;
    want.succ.add(a);
    chk("RW " + render_formula(a), [&] { return weaken(pf, WeakenAt::right(a)); }, want, false);

    const CrownComponent extra = random_atoms();
    want = e;
    want.crown.push_back(extra);
    chk("EW", [&] { return weaken(pf, WeakenAt::component(extra)); }, want, true);

    if (!e.crown.empty()) {
      const std::size_t i = pick(e.crown.size());
      want = e;
      want.crown[i] = merged(e.crown[i], extra);
      chk("Wc", [&] { return weaken(pf, WeakenAt::crown(i, extra)); }, want, true);

      want = e;
      want.ante.add_all(e.crown[i].ante);
      want.succ.add_all(e.crown[i].succ);
      erase(want.crown, i);
      chk("Merge", [&] { return merge_root(pf, i); }, want, true);

      // EC: duplicate component i, then contract the copy away.
      auto twice = weaken(pf, WeakenAt::component(e.crown[i])).output;
      std::vector<std::size_t> copies;
      for (std::size_t k = 0; k < twice->conclusion.crown.size(); ++k)
        if (twice->conclusion.crown[k] == e.crown[i]) copies.push_back(k);
      chk("EC", [&] { return contract(twice, ContractAt::external(copies.at(0), copies.at(1))); }, e,
          true);

      const auto& comp = e.crown[i];
      for (bool right : {false, true}) {
        const auto& side = right ? comp.succ : comp.ante;
        if (side.empty()) continue;
        const Formula x = side.items()[pick(side.size())];
        CrownComponent dup;
        (right ? dup.succ : dup.ante).add(x);
        auto w = weaken(pf, WeakenAt::crown(i, dup)).output;
        const auto& wc = w->conclusion.crown;
        const std::size_t k = static_cast<std::size_t>(
            std::find(wc.begin(), wc.end(), merged(comp, dup)) - wc.begin());
        chk(right ? "RCc" : "LCc",
            [&] { return contract(w, right ? ContractAt::crown_right(k, x) : ContractAt::crown_left(k, x)); },
            e, true);
      }
    }
    if (e.crown.size() >= 2) {
      std::size_t i = pick(e.crown.size()), j = pick(e.crown.size() - 1);
      if (j >= i) ++j;
      want = e;
      const auto fused = merged(e.crown[i], e.crown[j]);
      erase(want.crown, std::max(i, j));
      erase(want.crown, std::min(i, j));
      want.crown.push_back(fused);
      chk("Mergec", [&] { return merge_crown(pf, i, j); }, want, true);
    }

    for (bool right : {false, true}) {
      const auto& side = right ? e.succ : e.ante;
      if (side.empty()) continue;
      const Formula x = side.items()[pick(side.size())];
      auto w = weaken(pf, right ? WeakenAt::right(x) : WeakenAt::left(x)).output;
      chk(std::string(right ? "RC " : "LC ") + render_formula(x),
          [&] { return contract(w, right ? ContractAt::right(x) : ContractAt::left(x)); }, e,
          x.is_atom());
    }

    for (const auto& x : e.ante.distinct()) {
      if (x.op() != Connective::Dia) continue;
      want = e;
      want.ante.remove_one(x);
      want.ante.add(x.body());
      chk("strip " + render_formula(x), [&] { return strip_modality(pf, StripAt::left_dia(x)); }, want,
          false);
    }
    for (const auto& x : e.succ.distinct()) {
      if (x.op() != Connective::Box) continue;
      want = e;
      want.succ.remove_one(x);
      want.succ.add(x.body());
      chk("strip " + render_formula(x), [&] { return strip_modality(pf, StripAt::right_box(x)); }, want,
          false);
    }
  }
  return t.outcome("100 sequents, " + std::to_string(calls) +
                   " weaken/contract/merge/strip calls, height checked on the height-preserving ones");
}

Outcome cut_elimination(Collected& c) {
  Tally t;
  std::mt19937_64 rng(71);
  const std::vector<std::string> atoms{"p", "q", "r"};
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  auto premise = [&](const Formula& d, bool right) {
    for (;;) {
      auto s = testing::random_sequent(rng);
      (right ? s.succ : s.ante).add(d);
      auto v = prove(s);
      if (v.provable()) return v.proof;
    }
  };

  double slowest = 0;
  std::size_t modal = 0;
  for (int i = 0; i < 100; ++i) {
    Formula d = testing::random_formula(rng, i % 2 ? 5 : 6, atoms);
    if (i % 2) d = pick(2) ? Formula::box(d) : Formula::dia(d);
    modal += d.is_modal();

    const Proof l = premise(d, true), r = premise(d, false);
    c.found(l);
    c.found(r);
    RootedHypersequent want = l->conclusion;
    want.succ.remove_one(d);
    FMultiset ra = r->conclusion.ante;
    ra.remove_one(d);
    want.ante.add_all(ra);
    want.succ.add_all(r->conclusion.succ);
    want.crown.insert(want.crown.end(), r->conclusion.crown.begin(), r->conclusion.crown.end());

    const std::string what = "cut " + render_formula(d) + " between " + render_sequent(l->conclusion) +
                             " and " + render_sequent(r->conclusion);
    auto t0 = Clock::now();
    try {
      auto rep = eliminate_cut(l, r, d);
      const double secs = seconds_since(t0);
      slowest = std::max(slowest, secs);
      c.built(rep.output);
      t.expect(check_proof(rep.output).ok, what + ": output rejected");
      t.expect(rep.output->conclusion == want, what + ": wrong end-sequent");
      t.expect(secs <= 30, what + ": took " + std::to_string(secs) + " s");
    } catch (const std::exception& e) {
      t.fail(what + ": " + e.what());
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "100 cuts (%zu on modal formulas, all of at most 6 nodes), slowest %.2f s",
                modal, slowest);
  return t.outcome(buf);
}

Outcome soundness(const Collected& c) {
  Tally t;
  auto t0 = Clock::now();
  std::size_t nodes = 0;
  for (const Proof& pf : c.all) {
    nodes += proof_size(pf);
    auto r = check_soundness(pf);
    t.expect(r.ok, "invalid node " + (r.failing ? render_sequent(*r.failing) : std::string("?")) +
                       " in the proof of " + render_sequent(pf->conclusion));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu proofs (%zu nodes) valid at every node, %.1f s", c.all.size(),
                nodes, seconds_since(t0));
  return t.outcome(buf);
}

Outcome normal_forms() {
  Tally t;
  std::mt19937_64 rng(91);
  std::vector<Formula> fs;
  for (int i = 0; i < 200; ++i) fs.push_back(testing::random_formula(rng, 12, {"p", "q", "r"}, true));
  for (const auto& f : fs) {
    t.expect(qnf_equivalent(f, to_cqnf(f)), "CQNF of " + render_formula(f));
    t.expect(qnf_equivalent(f, to_dqnf(f)), "DQNF of " + render_formula(f));
  }
  std::stable_sort(fs.begin(), fs.end(),
                   [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
  for (std::size_t i = 0; i < 50; ++i)
    t.expect(oracle_validity(Formula::iff(fs[i], reading(to_cqnf(fs[i])))).valid(),
             "CQNF reading of " + render_formula(fs[i]) + " not S5-equivalent");
  return t.outcome("200 formulas in CQNF and DQNF quasi-equivalent; 50 smallest S5-equivalent to their CQNF");
}

Outcome hilbert_translation(Collected& c) {
  Tally t;
  const auto hp = parse_hilbert(
      "1: p -> (q -> p) ; Taut\n"
      "2: [](p -> (q -> p)) ; Nec(1)\n"
      "3: [](p -> (q -> p)) -> ([]p -> [](q -> p)) ; AxK\n"
      "4: []p -> [](q -> p) ; MP(2, 3)\n"
      "5: []([]p -> [](q -> p)) ; Nec(4)\n");
  const Formula goal = hp.steps.back().formula;
  auto chk = check_hilbert(hp);
  t.expect(chk.ok, "derivation rejected at step " + std::to_string(chk.step + 1) + ": " + chk.reason);
  try {
    const Proof pf = translate(hp);
    c.built(pf);
    t.expect(check_proof(pf).ok, "translation rejected by the checker");
    t.expect(pf->conclusion == theorem(goal), "translation concludes " + render_sequent(pf->conclusion));
  } catch (const std::exception& e) {
    t.fail(std::string("translation threw: ") + e.what());
  }

  const auto bad = parse_hilbert("assumptions: p\n1: p ; Assumption\n2: []p ; Nec(1)\n");
  auto rej = check_hilbert(bad);
  t.expect(!rej.ok && rej.step == 1, "necessitation on an assumption accepted");
  bool refused = false;
  try {
    translate(bad);
  } catch (const HilbertError&) {
    refused = true;
  }
  t.expect(refused, "translate accepted necessitation on an assumption");
  return t.outcome("5-step derivation of " + render_formula(goal) +
                   " translated to a checked cut-free proof; necessitation on an assumption rejected");
}

Outcome subformula_property(const Collected& c) {
  Tally t;
  for (const Proof& pf : c.searched)
    t.expect(has_subformula_property(pf), "violation in the proof of " + render_sequent(pf->conclusion));
  return t.outcome(std::to_string(c.searched.size()) + " search proofs, every node made of end-sequent subformulas");
}

}  // namespace

int main() {
  Collected c;
  // Criterion 11 covers search proofs of criteria 1-4 only.
  std::vector<Proof> early;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"worked examples", [&] { return worked_examples(c); }},
      {"axiom suite", [&] { return axiom_suite(c); }},
      {"refutations", [&] { return refutations(); }},
      {"prover/oracle agreement", [&] {
         auto o = agreement(c);
         early = c.searched;
         return o;
       }},
      {"invertibility", [&] { return invertibility(c); }},
      {"admissible rules", [&] { return admissibility(c); }},
      {"cut elimination", [&] { return cut_elimination(c); }},
      {"soundness", [&] { return soundness(c); }},
      {"quasi normal forms", [&] { return normal_forms(); }},
      {"hilbert translation", [&] { return hilbert_translation(c); }},
      {"subformula property", [&] {
         Collected first;
         first.searched = early;
         return subformula_property(first);
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << (i + 1 < 10 ? " " : "") << i + 1 << " " << (o.pass ? "PASS" : "FAIL")
              << "  " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
