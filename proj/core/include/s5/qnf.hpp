#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s5/hypersequent.hpp"

namespace s5 {

enum class QnfKind { CQNF, DQNF };

struct QuasiLiteral {
  bool positive = true;
  Formula core;  // atomic or modal

  Formula formula() const { return positive ? core : Formula::neg(core); }
  friend bool operator==(const QuasiLiteral& a, const QuasiLiteral& b) {
    return a.positive == b.positive && a.core == b.core;
  }
};

// One clause split by literal shape: positive atoms P, negated atoms Q,
// positive modals M, negated modals N.
struct QuasiClause {
  FMultiset p, q, m, n;

  std::vector<QuasiLiteral> literals() const;
  bool empty() const { return p.empty() && q.empty() && m.empty() && n.empty(); }
  void add(const QuasiLiteral& l);
  friend bool operator==(const QuasiClause& a, const QuasiClause& b) {
    return a.p == b.p && a.q == b.q && a.m == b.m && a.n == b.n;
  }
};

// CQNF: conjunction of disjunctive clauses; DQNF: disjunction of conjunctive
// clauses. An empty clause list reads as top (CQNF) or bot (DQNF); an empty
// clause reads as bot (CQNF) or top (DQNF).
struct QuasiNormalForm {
  QnfKind kind = QnfKind::CQNF;
  std::vector<QuasiClause> clauses;

  // Set when the form is one of the degenerate constant encodings.
  std::optional<bool> constant() const;
};

QuasiNormalForm to_cqnf(const Formula& f);
QuasiNormalForm to_dqnf(const Formula& f);

Formula reading(const QuasiNormalForm& n);
std::string render_qnf(const QuasiNormalForm& n);

// Maximal atomic or modal subformulas, i.e. the quasi-literal cores.
std::vector<Formula> quasi_atoms(const Formula& f);

// Truth-table equivalence treating each quasi-literal core as a variable.
bool qnf_equivalent(const Formula& f, const QuasiNormalForm& n);
bool quasi_equivalent(const Formula& a, const Formula& b);

// Leaves of full propositional inversion of f placed on the right (CQNF) or
// on the left (DQNF), one clause per leaf in inversion order. Duplicates are
// kept. Throws std::invalid_argument on constants.
std::vector<QuasiClause> raw_clauses(const Formula& f, QnfKind kind);

}  // namespace s5
