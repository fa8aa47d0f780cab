#include "s5/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <set>

namespace s5 {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

int rank(Connective c) { return static_cast<int>(c); }

}  // namespace

Formula::Formula() : Formula(bottom()) {}

Formula Formula::make(Connective op, std::string name, std::vector<Formula> args) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->op = op;
  n->name = std::move(name);
  n->args = std::move(args);
  std::size_t h = std::hash<int>{}(rank(op));
  if (op == Connective::Atom) h = mix(h, std::hash<std::string>{}(n->name));
  std::size_t depth = 0;
  for (const auto& a : n->args) {
    h = mix(h, a.hash());
    n->size += a.size();
    depth = std::max(depth, a.modal_depth());
  }
  n->hash = h;
  n->modal_depth = depth + ((op == Connective::Box || op == Connective::Dia) ? 1 : 0);
  return Formula(std::move(n));
}

Formula Formula::bottom() {
  static const Formula f = make(Connective::Bottom, {}, {});
  return f;
}
Formula Formula::top() {
  static const Formula f = make(Connective::Top, {}, {});
  return f;
}
Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return make(Connective::Atom, std::move(name), {});
}
Formula Formula::neg(Formula a) { return make(Connective::Neg, {}, {std::move(a)}); }
Formula Formula::conj(Formula a, Formula b) {
  return make(Connective::And, {}, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Connective::Or, {}, {std::move(a), std::move(b)});
}
Formula Formula::imp(Formula a, Formula b) {
  return make(Connective::Imp, {}, {std::move(a), std::move(b)});
}
Formula Formula::dia(Formula a) { return make(Connective::Dia, {}, {std::move(a)}); }
Formula Formula::box(Formula a) { return make(Connective::Box, {}, {std::move(a)}); }
Formula Formula::iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return Formula::compare(a, b) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.op() != b.op()) return rank(a.op()) < rank(b.op()) ? -1 : 1;
  if (a.op() == Connective::Atom) return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
  for (std::size_t i = 0; i < a.arity(); ++i) {
    int c = compare(a.arg(i), b.arg(i));
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula parse_all() {
    Formula f = iff();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip_ws();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  Formula iff() {
    Formula a = imp();
    if (accept("<->")) return Formula::iff(a, imp());
    return a;
  }
  Formula imp() {
    Formula a = disj();
    if (accept("->")) return Formula::imp(a, imp());
    return a;
  }
  Formula disj() {
    Formula a = conj();
    // "||" is the crown separator of the sequent grammar, never a disjunction.
    while (peek("|") && !peek("||")) {
      ++pos_;
      a = Formula::disj(a, conj());
    }
    return a;
  }
  Formula conj() {
    Formula a = unary();
    while (accept("&")) a = Formula::conj(a, unary());
    return a;
  }
  Formula unary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept("~")) return Formula::neg(unary());
    if (accept("[]")) return Formula::box(unary());
    if (accept("<>")) return Formula::dia(unary());
    if (accept("(")) {
      Formula f = iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    char c = s_[pos_];
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string word(s_.substr(start, pos_ - start));
      if (word == "bot") return Formula::bottom();
      if (word == "top") return Formula::top();
      return Formula::atom(std::move(word));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

int precedence(const Formula& f) {
  switch (f.op()) {
    case Connective::Imp: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    case Connective::Neg:
    case Connective::Dia:
    case Connective::Box: return 4;
    default: return 5;
  }
}

struct Notation {
  const char *bot, *top, *neg, *box, *dia, *conj, *disj, *imp;
};

constexpr Notation kAscii{"bot", "top", "~", "[]", "<>", " & ", " | ", " -> "};
constexpr Notation kLatex{"\\bot", "\\top", "\\neg ", "\\Box ", "\\Diamond ",
                          " \\land ", " \\lor ", " \\to "};

void render(const Formula& f, std::string& out, const Notation& n) {
  auto child = [&out, &n](const Formula& c, bool parens) {
    if (parens) out += '(';
    render(c, out, n);
    if (parens) out += ')';
  };
  switch (f.op()) {
    case Connective::Bottom: out += n.bot; return;
    case Connective::Top: out += n.top; return;
    case Connective::Atom: out += f.name(); return;
    case Connective::Neg: out += n.neg; child(f.body(), precedence(f.body()) < 4); return;
    case Connective::Box: out += n.box; child(f.body(), precedence(f.body()) < 4); return;
    case Connective::Dia: out += n.dia; child(f.body(), precedence(f.body()) < 4); return;
    case Connective::And:
    case Connective::Or: {
      int p = precedence(f);
      child(f.lhs(), precedence(f.lhs()) < p);
      out += f.op() == Connective::And ? n.conj : n.disj;
      child(f.rhs(), precedence(f.rhs()) <= p);
      return;
    }
    case Connective::Imp:
      child(f.lhs(), precedence(f.lhs()) <= 1);
      out += n.imp;
      child(f.rhs(), precedence(f.rhs()) < 1);
      return;
  }
}

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  for (std::size_t i = 0; i < f.arity(); ++i) collect(f.arg(i), out);
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse_all(); }

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, out, kAscii);
  return out;
}

std::string render_formula_latex(const Formula& f) {
  std::string out;
  render(f, out, kLatex);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render_formula(f); }

FormulaClass classify(const Formula& f) {
  switch (f.op()) {
    case Connective::Atom: return FormulaClass::Atomic;
    case Connective::Box:
    case Connective::Dia: return FormulaClass::Modal;
    case Connective::Bottom:
    case Connective::Top: return FormulaClass::Constant;
    default: return FormulaClass::Compound;
  }
}

std::vector<Formula> subformulas(const Formula& f) {
  std::set<Formula> s;
  collect(f, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::set<std::string> names;
  for (const auto& g : subformulas(f))
    if (g.is_atom()) names.insert(g.name());
  return {names.begin(), names.end()};
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
  return acc;
}

Formula simplify_constants(const Formula& f) {
  using C = Connective;
  auto is = [](const Formula& g, C c) { return g.op() == c; };
  switch (f.op()) {
    case C::Bottom:
    case C::Top:
    case C::Atom: return f;
    case C::Neg: {
      Formula a = simplify_constants(f.body());
      if (is(a, C::Top)) return Formula::bottom();
      if (is(a, C::Bottom)) return Formula::top();
      return Formula::neg(a);
    }
    case C::Box:
    case C::Dia: {
      // Over nonempty S5 frames both modalities fix top and bottom.
      Formula a = simplify_constants(f.body());
      if (a.is_constant()) return a;
      return f.op() == C::Box ? Formula::box(a) : Formula::dia(a);
    }
    case C::And: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, C::Bottom) || is(b, C::Bottom)) return Formula::bottom();
      if (is(a, C::Top)) return b;
      if (is(b, C::Top)) return a;
      return Formula::conj(a, b);
    }
    case C::Or: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, C::Top) || is(b, C::Top)) return Formula::top();
      if (is(a, C::Bottom)) return b;
      if (is(b, C::Bottom)) return a;
      return Formula::disj(a, b);
    }
    case C::Imp: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, C::Bottom) || is(b, C::Top)) return Formula::top();
      if (is(a, C::Top)) return b;
      if (is(b, C::Bottom)) return Formula::neg(a);
      return Formula::imp(a, b);
    }
  }
  return f;
}

}  // namespace s5
