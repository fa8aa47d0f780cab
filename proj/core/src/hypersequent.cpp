#include "s5/hypersequent.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace s5 {

FMultiset::FMultiset(std::initializer_list<Formula> fs) : items_(fs) {
  std::sort(items_.begin(), items_.end());
}

FMultiset::FMultiset(std::vector<Formula> fs) : items_(std::move(fs)) {
  std::sort(items_.begin(), items_.end());
}

void FMultiset::add(const Formula& f) {
  items_.insert(std::upper_bound(items_.begin(), items_.end(), f), f);
}

void FMultiset::add_all(const FMultiset& other) {
  for (const auto& f : other) add(f);
}

bool FMultiset::remove_one(const Formula& f) {
  auto it = std::lower_bound(items_.begin(), items_.end(), f);
  if (it == items_.end() || *it != f) return false;
  items_.erase(it);
  return true;
}

FMultiset FMultiset::minus(const FMultiset& other) const {
  FMultiset r = *this;
  for (const auto& f : other)
    if (!r.remove_one(f))
      throw std::invalid_argument("multiset difference: missing " + render_formula(f));
  return r;
}

FMultiset FMultiset::plus(const FMultiset& other) const {
  FMultiset r = *this;
  r.add_all(other);
  return r;
}

FMultiset FMultiset::with(const Formula& f) const {
  FMultiset r = *this;
  r.add(f);
  return r;
}

FMultiset FMultiset::without(const Formula& f) const {
  FMultiset r = *this;
  if (!r.remove_one(f)) throw std::invalid_argument("multiset: missing " + render_formula(f));
  return r;
}

std::size_t FMultiset::count(const Formula& f) const {
  auto [lo, hi] = std::equal_range(items_.begin(), items_.end(), f);
  return static_cast<std::size_t>(hi - lo);
}

bool FMultiset::includes(const FMultiset& other) const {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

std::vector<Formula> FMultiset::distinct() const {
  std::vector<Formula> r;
  for (const auto& f : items_)
    if (r.empty() || r.back() != f) r.push_back(f);
  return r;
}

FMultiset FMultiset::atoms() const {
  FMultiset r;
  for (const auto& f : items_)
    if (f.is_atom()) r.items_.push_back(f);
  return r;
}

FMultiset FMultiset::modals() const {
  FMultiset r;
  for (const auto& f : items_)
    if (f.is_modal()) r.items_.push_back(f);
  return r;
}

bool FMultiset::all_atomic() const {
  return std::all_of(items_.begin(), items_.end(), [](const Formula& f) { return f.is_atom(); });
}

bool FMultiset::all_modal_or_atomic() const {
  return std::all_of(items_.begin(), items_.end(),
                     [](const Formula& f) { return f.is_atom() || f.is_modal(); });
}

CrownComponent::CrownComponent(FMultiset a, FMultiset s) : ante(std::move(a)), succ(std::move(s)) {
  for (const auto* side : {&ante, &succ})
    for (const auto& f : *side)
      if (!f.is_atom())
        throw SequentError("non-atomic formula in crown: " + render_formula(f));
}

RootedHypersequent::RootedHypersequent(FMultiset a, FMultiset s, std::vector<CrownComponent> c)
    : ante(std::move(a)), succ(std::move(s)), crown(std::move(c)) {}

std::vector<CrownComponent> RootedHypersequent::sorted_crown() const {
  auto c = crown;
  std::sort(c.begin(), c.end());
  return c;
}

bool RootedHypersequent::root_is_modal_atomic() const {
  return ante.all_modal_or_atomic() && succ.all_modal_or_atomic();
}

std::optional<std::size_t> RootedHypersequent::find_component(const CrownComponent& c) const {
  for (std::size_t i = 0; i < crown.size(); ++i)
    if (crown[i] == c) return i;
  return std::nullopt;
}

bool operator==(const RootedHypersequent& a, const RootedHypersequent& b) {
  if (a.ante != b.ante || a.succ != b.succ || a.crown.size() != b.crown.size()) return false;
  if (a.crown == b.crown) return true;
  return a.sorted_crown() == b.sorted_crown();
}

bool operator<(const RootedHypersequent& a, const RootedHypersequent& b) {
  if (a.ante != b.ante) return a.ante < b.ante;
  if (a.succ != b.succ) return a.succ < b.succ;
  return a.sorted_crown() < b.sorted_crown();
}

std::size_t SequentHash::operator()(const RootedHypersequent& s) const {
  std::size_t h = 0x51ed270b;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& f : s.ante) mix(f.hash());
  mix(0xabc);
  for (const auto& f : s.succ) mix(f.hash());
  // Order-insensitive over components.
  std::size_t crown_sum = 0;
  for (const auto& c : s.crown) {
    std::size_t ch = 17;
    for (const auto& f : c.ante) ch = ch * 31 + f.hash();
    ch = ch * 131 + 7;
    for (const auto& f : c.succ) ch = ch * 31 + f.hash();
    crown_sum += ch * 0x100000001b3ULL;
  }
  mix(crown_sum);
  return h;
}

// ---------------------------------------------------------------------------
// Sequent text

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

// Splits s at top-level occurrences of sep (outside parentheses). "||" never
// matches a single-character "|" separator.
std::vector<std::pair<std::size_t, std::string_view>> split_top(std::string_view s,
                                                                 std::string_view sep) {
  std::vector<std::pair<std::size_t, std::string_view>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth != 0 || s.substr(i, sep.size()) != sep) continue;
    if (sep == "|" && ((i + 1 < s.size() && s[i + 1] == '|') || (i > 0 && s[i - 1] == '|')))
      continue;
    parts.emplace_back(start, s.substr(start, i - start));
    start = i + sep.size();
    i += sep.size() - 1;
  }
  parts.emplace_back(start, s.substr(start));
  return parts;
}

FMultiset parse_list(std::string_view text, std::size_t base) {
  FMultiset m;
  std::size_t p = 0;
  skip_ws(text, p);
  if (p == text.size()) return m;
  for (auto [off, piece] : split_top(text, ",")) {
    std::size_t q = 0;
    skip_ws(piece, q);
    if (q == piece.size()) throw ParseError(base + off + q, "empty formula in list");
    try {
      m.add(parse_formula(piece));
    } catch (const ParseError& e) {
      throw ParseError(base + off + e.offset(), "malformed formula in list");
    }
  }
  return m;
}

std::pair<FMultiset, FMultiset> parse_arrow(std::string_view text, std::size_t base) {
  auto parts = split_top(text, "=>");
  if (parts.size() != 2) throw ParseError(base, "expected exactly one '=>'");
  return {parse_list(parts[0].second, base + parts[0].first),
          parse_list(parts[1].second, base + parts[1].first)};
}

std::string render_list(const FMultiset& m) {
  std::string out;
  for (const auto& f : m) {
    if (!out.empty()) out += ", ";
    out += render_formula(f);
  }
  return out;
}

std::string render_arrow(const FMultiset& a, const FMultiset& s) {
  std::string out = render_list(a);
  if (!out.empty()) out += ' ';
  out += "=>";
  std::string rhs = render_list(s);
  if (!rhs.empty()) out += ' ' + rhs;
  return out;
}

}  // namespace

RootedHypersequent parse_sequent(std::string_view text) {
  auto halves = split_top(text, "||");
  if (halves.size() > 2) throw ParseError(halves[2].first, "more than one '||'");
  auto [ante, succ] = parse_arrow(halves[0].second, halves[0].first);
  RootedHypersequent s(std::move(ante), std::move(succ));
  if (halves.size() == 2) {
    for (auto [off, comp] : split_top(halves[1].second, "|")) {
      auto [pa, ps] = parse_arrow(comp, halves[1].first + off);
      s.crown.emplace_back(std::move(pa), std::move(ps));
    }
  }
  return s;
}

std::string render_component(const CrownComponent& c) { return render_arrow(c.ante, c.succ); }

std::string render_sequent(const RootedHypersequent& s) {
  std::string out = render_arrow(s.ante, s.succ);
  if (!s.crown.empty()) {
    out += " ||";
    for (std::size_t i = 0; i < s.crown.size(); ++i) {
      out += i == 0 ? " " : " | ";
      out += render_component(s.crown[i]);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const RootedHypersequent& s) {
  return os << render_sequent(s);
}

Formula interpretation(const RootedHypersequent& s) {
  std::vector<Formula> disjuncts(s.succ.begin(), s.succ.end());
  for (const auto& c : s.sorted_crown()) {
    Formula inner = Formula::imp(conj_all(c.ante.items()), disj_all(c.succ.items()));
    disjuncts.push_back(Formula::box(inner));
  }
  return Formula::imp(conj_all(s.ante.items()), disj_all(disjuncts));
}

RootedHypersequent set_project(const RootedHypersequent& s) {
  auto dedup = [](const FMultiset& m) { return FMultiset(m.distinct()); };
  RootedHypersequent r(dedup(s.ante), dedup(s.succ));
  for (const auto& c : s.crown) r.crown.emplace_back(dedup(c.ante), dedup(c.succ));
  std::sort(r.crown.begin(), r.crown.end());
  r.crown.erase(std::unique(r.crown.begin(), r.crown.end()), r.crown.end());
  return r;
}

std::vector<Formula> all_formulas(const RootedHypersequent& s) {
  std::vector<Formula> out(s.ante.begin(), s.ante.end());
  out.insert(out.end(), s.succ.begin(), s.succ.end());
  for (const auto& c : s.crown) {
    out.insert(out.end(), c.ante.begin(), c.ante.end());
    out.insert(out.end(), c.succ.begin(), c.succ.end());
  }
  return out;
}

}  // namespace s5
