#include "s5/qnf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace s5 {

std::vector<QuasiLiteral> QuasiClause::literals() const {
  std::vector<QuasiLiteral> out;
  for (const auto& f : p) out.push_back({true, f});
  for (const auto& f : q) out.push_back({false, f});
  for (const auto& f : m) out.push_back({true, f});
  for (const auto& f : n) out.push_back({false, f});
  return out;
}

void QuasiClause::add(const QuasiLiteral& l) {
  if (l.core.is_atom())
    (l.positive ? p : q).add(l.core);
  else
    (l.positive ? m : n).add(l.core);
}

std::optional<bool> QuasiNormalForm::constant() const {
  const bool cq = kind == QnfKind::CQNF;
  if (clauses.empty()) return cq;
  if (clauses.size() == 1 && clauses[0].empty()) return !cq;
  return std::nullopt;
}

namespace {

using Lit = std::pair<bool, Formula>;  // (positive, core)
using Clause = std::set<Lit>;
using Cnf = std::vector<Clause>;       // empty list: true; empty clause: false

bool tautologous(const Clause& c) {
  for (const auto& [pos, core] : c)
    if (pos && c.count({false, core})) return true;
  return false;
}

Cnf product(const Cnf& a, const Cnf& b) {
  Cnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Clause c = x;
      c.insert(y.begin(), y.end());
      if (!tautologous(c)) out.push_back(std::move(c));
    }
  return out;
}

Cnf concat(Cnf a, const Cnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// CNF of f (pos) or of ~f (!pos) over quasi-literals.
Cnf cnf(const Formula& f, bool pos) {
  switch (f.op()) {
    case Connective::Atom:
    case Connective::Box:
    case Connective::Dia: return {Clause{{pos, f}}};
    case Connective::Top: return pos ? Cnf{} : Cnf{Clause{}};
    case Connective::Bottom: return pos ? Cnf{Clause{}} : Cnf{};
    case Connective::Neg: return cnf(f.body(), !pos);
    case Connective::And:
      return pos ? concat(cnf(f.lhs(), true), cnf(f.rhs(), true))
                 : product(cnf(f.lhs(), false), cnf(f.rhs(), false));
    case Connective::Or:
      return pos ? product(cnf(f.lhs(), true), cnf(f.rhs(), true))
                 : concat(cnf(f.lhs(), false), cnf(f.rhs(), false));
    case Connective::Imp:
      return pos ? product(cnf(f.lhs(), false), cnf(f.rhs(), true))
                 : concat(cnf(f.lhs(), true), cnf(f.rhs(), false));
  }
  return {};
}

QuasiNormalForm finish(const Cnf& cls, QnfKind kind, bool flip) {
  QuasiNormalForm out;
  out.kind = kind;
  // A false clause absorbs the rest.
  for (const auto& c : cls)
    if (c.empty()) {
      out.clauses.assign(1, QuasiClause{});
      return out;
    }
  for (const auto& c : cls) {
    QuasiClause qc;
    for (const auto& [pos, core] : c) qc.add({flip ? !pos : pos, core});
    out.clauses.push_back(std::move(qc));
  }
  return out;
}

void collect_quasi(const Formula& f, std::set<Formula>& out) {
  if (f.is_atom() || f.is_modal()) {
    out.insert(f);
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_quasi(f.arg(i), out);
}

bool eval_prop(const Formula& f, const std::map<Formula, bool>& v) {
  switch (f.op()) {
    case Connective::Top: return true;
    case Connective::Bottom: return false;
    case Connective::Atom:
    case Connective::Box:
    case Connective::Dia: return v.at(f);
    case Connective::Neg: return !eval_prop(f.body(), v);
    case Connective::And: return eval_prop(f.lhs(), v) && eval_prop(f.rhs(), v);
    case Connective::Or: return eval_prop(f.lhs(), v) || eval_prop(f.rhs(), v);
    case Connective::Imp: return !eval_prop(f.lhs(), v) || eval_prop(f.rhs(), v);
  }
  return false;
}

// Raw inversion leaves: pairs (left, right) of quasi-literal cores.
struct Leaf {
  FMultiset left, right;
};

void invert(const Formula& f, bool on_right, std::vector<Leaf>& leaves) {
  switch (f.op()) {
    case Connective::Top:
    case Connective::Bottom:
      throw std::invalid_argument("raw decomposition of a constant");
    case Connective::Atom:
    case Connective::Box:
    case Connective::Dia:
      for (auto& l : leaves) (on_right ? l.right : l.left).add(f);
      return;
    case Connective::Neg: invert(f.body(), !on_right, leaves); return;
    default: break;
  }
  const bool branches = on_right ? f.op() == Connective::And
                                 : (f.op() == Connective::Or || f.op() == Connective::Imp);
  const bool lhs_side = f.op() == Connective::Imp ? !on_right : on_right;
  if (!branches) {
    invert(f.lhs(), lhs_side, leaves);
    invert(f.rhs(), on_right, leaves);
    return;
  }
  std::vector<Leaf> second = leaves;
  invert(f.lhs(), lhs_side, leaves);
  invert(f.rhs(), on_right, second);
  leaves.insert(leaves.end(), second.begin(), second.end());
}

}  // namespace

QuasiNormalForm to_cqnf(const Formula& f) { return finish(cnf(f, true), QnfKind::CQNF, false); }

// DNF of f is the literal-wise negation of the CNF of ~f.
QuasiNormalForm to_dqnf(const Formula& f) { return finish(cnf(f, false), QnfKind::DQNF, true); }

Formula reading(const QuasiNormalForm& n) {
  const bool cq = n.kind == QnfKind::CQNF;
  std::vector<Formula> outer;
  for (const auto& c : n.clauses) {
    std::vector<Formula> inner;
    for (const auto& l : c.literals()) inner.push_back(l.formula());
    outer.push_back(cq ? disj_all(inner) : conj_all(inner));
  }
  return cq ? conj_all(outer) : disj_all(outer);
}

std::string render_qnf(const QuasiNormalForm& n) { return render_formula(reading(n)); }

std::vector<Formula> quasi_atoms(const Formula& f) {
  std::set<Formula> s;
  collect_quasi(f, s);
  return {s.begin(), s.end()};
}

bool quasi_equivalent(const Formula& a, const Formula& b) {
  std::set<Formula> vars;
  collect_quasi(a, vars);
  collect_quasi(b, vars);
  if (vars.size() > 24) throw std::invalid_argument("too many quasi-literals for a truth table");
  std::vector<Formula> vs(vars.begin(), vars.end());
  std::map<Formula, bool> v;
  for (std::uint64_t row = 0; row < (1ULL << vs.size()); ++row) {
    for (std::size_t i = 0; i < vs.size(); ++i) v[vs[i]] = (row >> i) & 1U;
    if (eval_prop(a, v) != eval_prop(b, v)) return false;
  }
  return true;
}

bool qnf_equivalent(const Formula& f, const QuasiNormalForm& n) {
  return quasi_equivalent(f, reading(n));
}

std::vector<QuasiClause> raw_clauses(const Formula& f, QnfKind kind) {
  std::vector<Leaf> leaves(1);
  invert(f, kind == QnfKind::CQNF, leaves);
  std::vector<QuasiClause> out;
  for (const auto& l : leaves) {
    QuasiClause c;
    // CQNF clause: right-side cores are positive. DQNF: left-side cores are positive.
    const FMultiset& pos = kind == QnfKind::CQNF ? l.right : l.left;
    const FMultiset& neg = kind == QnfKind::CQNF ? l.left : l.right;
    for (const auto& x : pos) c.add({true, x});
    for (const auto& x : neg) c.add({false, x});
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace s5
