#include "s5/search.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace s5 {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Provable: return "Provable";
    case SearchStatus::NotProvable: return "NotProvable";
    case SearchStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

RootedHypersequent preprocess_goal(const RootedHypersequent& goal) {
  RootedHypersequent out(FMultiset{}, FMultiset{}, goal.crown);
  for (const auto& f : goal.ante) {
    Formula g = simplify_constants(f);
    if (g.op() != Connective::Top) out.ante.add(g);
  }
  for (const auto& f : goal.succ) {
    Formula g = simplify_constants(f);
    if (g.op() != Connective::Bottom) out.succ.add(g);
  }
  return out;
}

namespace {

enum class Kind { Closed, Open, Budget };

// Modal part of a root, as sets.
struct Stamp {
  std::set<Formula> ante, succ;

  static Stamp of(const RootedHypersequent& s) {
    Stamp st;
    for (const auto& f : s.ante.modals()) st.ante.insert(f);
    for (const auto& f : s.succ.modals()) st.succ.insert(f);
    return st;
  }
  bool covers(const Stamp& o) const {
    return std::includes(ante.begin(), ante.end(), o.ante.begin(), o.ante.end()) &&
           std::includes(succ.begin(), succ.end(), o.succ.begin(), o.succ.end());
  }
};

// Per-branch bookkeeping. `unfolded` holds the modalities expanded by
// LBox/RDia in the current world; `stamps[i]` is the modal context crown
// world i was last saturated under.
struct Track {
  std::set<Formula> unfolded;
  std::set<Formula> witnessed;
  std::vector<std::optional<Stamp>> stamps;
};

class Searcher {
 public:
  explicit Searcher(const SearchBudget& b) : budget_(b) {}

  Kind run(const RootedHypersequent& s, Proof& out) {
    Track t;
    t.stamps.resize(s.crown.size());
    return solve(s, t, 0, out);
  }

  std::size_t saturated = 0;
  std::size_t visited = 0;

 private:
  SearchBudget budget_;
  std::unordered_map<RootedHypersequent, Proof, SequentHash> proved_;

  Kind solve(const RootedHypersequent& s, Track& t, std::size_t depth, Proof& out) {
    if (++visited > budget_.max_visited || depth > budget_.max_depth) return Kind::Budget;
    if (auto hit = proved_.find(s); hit != proved_.end()) {
      out = hit->second;
      return Kind::Closed;
    }
    Kind res = expand(s, t, depth, out);
    if (res == Kind::Closed) proved_.emplace(s, out);
    return res;
  }

  // Applies r and proves every premise; stops at the first failure.
  Kind through(const RootedHypersequent& s, const RuleInstance& r, Track& t, std::size_t depth,
               Proof& out) {
    auto prems = apply_backward(s, r);
    std::vector<Proof> kids;
    for (std::size_t i = 0; i < prems.size(); ++i) {
      Track local = (i + 1 == prems.size()) ? std::move(t) : t;
      Proof kid;
      Kind k = solve(prems[i], local, depth + 1, kid);
      if (k != Kind::Closed) return k;
      kids.push_back(kid);
    }
    out = make_node(s, r, std::move(kids));
    return Kind::Closed;
  }

  Kind expand(const RootedHypersequent& s, Track& t, std::size_t depth, Proof& out) {
    if (auto init = is_initial(s)) {
      out = make_node(s, *init, {});
      return Kind::Closed;
    }
    auto linear = [](RuleId r) {
      return r == RuleId::LNeg || r == RuleId::RNeg || r == RuleId::ROr || r == RuleId::LAnd ||
             r == RuleId::RImp;
    };
    auto branching = [](RuleId r) {
      return r == RuleId::LOr || r == RuleId::RAnd || r == RuleId::LImp;
    };
    auto instances = backward_instances(s);
    for (const auto& r : instances)
      if (linear(r.rule)) return through(s, r, t, depth, out);
    for (const auto& r : instances)
      if (branching(r.rule)) return through(s, r, t, depth, out);
    for (const auto& r : instances) {
      if (r.rule != RuleId::LBox && r.rule != RuleId::RDia) continue;
      const Formula& a = *r.principal;
      const FMultiset& home = r.rule == RuleId::LBox ? s.ante : s.succ;
      if (t.unfolded.count(a) || home.contains(a.body())) continue;
      t.unfolded.insert(a);
      return through(s, r, t, depth, out);
    }
    return jump(s, instances, t, depth, out);
  }

  // Every jump rule is invertible, so the first useful one is committed to.
  Kind jump(const RootedHypersequent& s, const std::vector<RuleInstance>& instances, Track& t,
            std::size_t depth, Proof& out) {
    if (!s.root_is_modal_atomic()) {
      ++saturated;
      return Kind::Open;
    }
    const Stamp now = Stamp::of(s);
    for (RuleId want : {RuleId::RBox, RuleId::LDia}) {
      for (const auto& r : instances) {
        if (r.rule != want || t.witnessed.count(*r.principal)) continue;
        t.witnessed.insert(*r.principal);
        t.unfolded.clear();
        t.stamps.push_back(now);
        return through(s, r, t, depth, out);
      }
    }
    for (std::size_t i = 0; i < s.crown.size(); ++i) {
      if (t.stamps[i] && t.stamps[i]->covers(now)) continue;
      t.unfolded.clear();
      t.stamps[i] = now;
      return through(s, RuleInstance::exch(i), t, depth, out);
    }
    ++saturated;
    return Kind::Open;
  }
};

}  // namespace

SearchVerdict prove(const RootedHypersequent& goal, const SearchBudget& budget) {
  SearchVerdict v;
  v.searched = preprocess_goal(goal);
  Searcher s(budget);
  Proof pf;
  Kind o = s.run(v.searched, pf);
  v.saturated = s.saturated;
  v.visited = s.visited;
  switch (o) {
    case Kind::Closed:
      v.status = SearchStatus::Provable;
      v.proof = pf;
      break;
    case Kind::Open: v.status = SearchStatus::NotProvable; break;
    case Kind::Budget: v.status = SearchStatus::BudgetExceeded; break;
  }
  return v;
}

SearchVerdict decide_formula(const Formula& f, const SearchBudget& budget) {
  return prove(RootedHypersequent(FMultiset{}, FMultiset{f}), budget);
}

}  // namespace s5
