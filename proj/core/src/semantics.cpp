#include "s5/semantics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace s5 {

bool KripkeModel::holds(std::size_t world, const std::string& atom) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), atom);
  if (it == atoms.end() || *it != atom) return false;
  return (worlds.at(world) >> (it - atoms.begin())) & 1U;
}

std::vector<std::string> KripkeModel::true_atoms(std::size_t world) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if ((worlds.at(world) >> i) & 1U) out.push_back(atoms[i]);
  return out;
}

namespace {

std::uint64_t all_mask(std::size_t n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m) : m_(m), all_(all_mask(m.size())) {}

  std::uint64_t run(const Formula& f) {
    switch (f.op()) {
      case Connective::Bottom: return 0;
      case Connective::Top: return all_;
      case Connective::Atom: return atom(f.name());
      case Connective::Neg: return all_ & ~run(f.body());
      case Connective::And: return run(f.lhs()) & run(f.rhs());
      case Connective::Or: return run(f.lhs()) | run(f.rhs());
      case Connective::Imp: return (all_ & ~run(f.lhs())) | run(f.rhs());
      case Connective::Box: return run(f.body()) == all_ ? all_ : 0;
      case Connective::Dia: return run(f.body()) != 0 ? all_ : 0;
    }
    return 0;
  }

 private:
  std::uint64_t atom(const std::string& name) {
    auto it = std::lower_bound(m_.atoms.begin(), m_.atoms.end(), name);
    if (it == m_.atoms.end() || *it != name) return 0;
    auto bit = static_cast<std::size_t>(it - m_.atoms.begin());
    std::uint64_t mask = 0;
    for (std::size_t w = 0; w < m_.size(); ++w)
      if ((m_.worlds[w] >> bit) & 1U) mask |= 1ULL << w;
    return mask;
  }

  const KripkeModel& m_;
  std::uint64_t all_;
};

std::size_t count_modal(const Formula& f) {
  std::size_t n = 0;
  for (const auto& g : subformulas(f))
    if (g.is_modal()) ++n;
  return n;
}

}  // namespace

std::uint64_t eval_worlds(const KripkeModel& m, const Formula& f) {
  if (m.worlds.empty() || m.worlds.size() > 64)
    throw std::invalid_argument("model must have between 1 and 64 worlds");
  return Evaluator(m).run(f);
}

bool eval(const KripkeModel& m, std::size_t world, const Formula& f) {
  if (world >= m.size()) throw std::out_of_range("unknown world " + std::to_string(world));
  return (eval_worlds(m, f) >> world) & 1U;
}

bool eval_sequent(const KripkeModel& m, std::size_t world, const RootedHypersequent& s) {
  return eval(m, world, interpretation(s));
}

std::size_t world_bound(const Formula& f) {
  std::size_t b = count_modal(f) + 1;
  std::size_t n = atoms_of(f).size();
  if (n < 6) b = std::min<std::size_t>(b, std::size_t{1} << n);
  return std::min<std::size_t>(b, 64);
}

OracleVerdict oracle_validity(const Formula& f, const OracleOptions& opts) {
  KripkeModel m;
  m.atoms = atoms_of(f);
  if (m.atoms.size() > 20) throw OracleLimitError("too many atoms for the oracle");
  const std::uint64_t valuations = 1ULL << m.atoms.size();
  const std::size_t bound = world_bound(f);

  // Subsets of valuations in increasing size, each in lexicographic order.
  std::uint64_t examined = 0;
  std::vector<std::uint64_t> pick;
  for (std::size_t k = 1; k <= bound; ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    if (k > valuations) break;
    while (true) {
      if (++examined > opts.max_models)
        throw OracleLimitError("oracle enumeration ceiling reached");
      m.worlds.assign(pick.begin(), pick.end());
      std::uint64_t truth = Evaluator(m).run(f);
      if (truth != all_mask(k)) {
        std::size_t w = 0;
        while ((truth >> w) & 1U) ++w;
        return {Countermodel{m, w}};
      }
      // Next combination.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == valuations - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

OracleVerdict oracle_sequent(const RootedHypersequent& s, const OracleOptions& opts) {
  return oracle_validity(interpretation(s), opts);
}

namespace {

bool sound_rec(const Proof& pf, const OracleOptions& opts,
               std::unordered_map<RootedHypersequent, bool, SequentHash>& cache,
               std::vector<std::size_t>& path, SoundnessResult& out) {
  auto it = cache.find(pf->conclusion);
  bool valid;
  if (it != cache.end()) {
    valid = it->second;
  } else {
    valid = oracle_sequent(pf->conclusion, opts).valid();
    cache.emplace(pf->conclusion, valid);
  }
  if (!valid) {
    out = {false, path, pf->conclusion};
    return false;
  }
  for (std::size_t i = 0; i < pf->premises.size(); ++i) {
    path.push_back(i);
    if (!sound_rec(pf->premises[i], opts, cache, path, out)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace

SoundnessResult check_soundness(const Proof& pf, const OracleOptions& opts) {
  SoundnessResult out;
  std::unordered_map<RootedHypersequent, bool, SequentHash> cache;
  std::vector<std::size_t> path;
  sound_rec(pf, opts, cache, path, out);
  return out;
}

std::string render_countermodel(const Countermodel& cm, const Formula& f) {
  std::ostringstream os;
  const auto& m = cm.model;
  for (std::size_t w = 0; w < m.size(); ++w) {
    os << (w == cm.world ? "* " : "  ") << "w" << w << ": {";
    auto atoms = m.true_atoms(w);
    for (std::size_t i = 0; i < atoms.size(); ++i) os << (i ? ", " : "") << atoms[i];
    os << "}\n";
  }
  auto subs = subformulas(f);
  std::stable_sort(subs.begin(), subs.end(),
                   [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
  for (const auto& g : subs) {
    std::uint64_t truth = eval_worlds(m, g);
    os << "  ";
    for (std::size_t w = 0; w < m.size(); ++w) os << (((truth >> w) & 1U) ? 'T' : 'F');
    os << "  " << render_formula(g) << "\n";
  }
  return os.str();
}

}  // namespace s5
