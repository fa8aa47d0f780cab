#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace s5 {

enum class Connective { Bottom, Top, Atom, Neg, And, Or, Imp, Dia, Box };

enum class FormulaClass { Atomic, Modal, Constant, Compound };

class Formula;

namespace detail {
struct FormulaNode {
  Connective op;
  std::string name;  // atoms only
  std::vector<Formula> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t modal_depth = 0;
};
}  // namespace detail

// Immutable S5 formula. Copies share structure; equality is syntactic.
class Formula {
 public:
  Formula();  // bot

  static Formula bottom();
  static Formula top();
  static Formula atom(std::string name);
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula dia(Formula a);
  static Formula box(Formula a);
  static Formula iff(Formula a, Formula b);

  Connective op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->args.size(); }
  const Formula& arg(std::size_t i) const { return node_->args.at(i); }
  const Formula& lhs() const { return node_->args.at(0); }
  const Formula& rhs() const { return node_->args.at(1); }
  const Formula& body() const { return node_->args.at(0); }

  std::size_t hash() const { return node_->hash; }
  // Number of AST nodes.
  std::size_t size() const { return node_->size; }
  std::size_t modal_depth() const { return node_->modal_depth; }

  bool is_atom() const { return op() == Connective::Atom; }
  bool is_modal() const { return op() == Connective::Box || op() == Connective::Dia; }
  bool is_constant() const { return op() == Connective::Bottom || op() == Connective::Top; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  // Canonical order: connective rank, then atom name, then arguments left to right.
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }
  static int compare(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(Connective op, std::string name, std::vector<Formula> args);
  std::shared_ptr<const detail::FormulaNode> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Formula parse_formula(std::string_view text);
std::string render_formula(const Formula& f);
// Math-mode LaTeX with the same bracketing as render_formula.
std::string render_formula_latex(const Formula& f);

FormulaClass classify(const Formula& f);

// Distinct subformulas in canonical order, f included.
std::vector<Formula> subformulas(const Formula& f);
std::vector<std::string> atoms_of(const Formula& f);

// Conjunction / disjunction folded left-to-right; empty lists give top / bottom.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

// Removes top/bottom by constant propagation. The result is either a
// constant or contains no constant at all.
Formula simplify_constants(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace s5
