#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "s5/formula.hpp"

namespace s5 {

// Finite multiset of formulas, kept sorted in canonical order.
class FMultiset {
 public:
  FMultiset() = default;
  FMultiset(std::initializer_list<Formula> fs);
  explicit FMultiset(std::vector<Formula> fs);

  void add(const Formula& f);
  void add_all(const FMultiset& other);
  // Removes one copy; returns false when f is absent.
  bool remove_one(const Formula& f);
  // Multiset difference; throws std::invalid_argument when other is not a sub-multiset.
  FMultiset minus(const FMultiset& other) const;
  FMultiset plus(const FMultiset& other) const;
  FMultiset with(const Formula& f) const;
  FMultiset without(const Formula& f) const;

  std::size_t count(const Formula& f) const;
  bool contains(const Formula& f) const { return count(f) > 0; }
  bool includes(const FMultiset& other) const;
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  const std::vector<Formula>& items() const { return items_; }
  std::vector<Formula> distinct() const;
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  FMultiset atoms() const;
  FMultiset modals() const;
  bool all_atomic() const;
  bool all_modal_or_atomic() const;

  friend bool operator==(const FMultiset& a, const FMultiset& b) { return a.items_ == b.items_; }
  friend bool operator!=(const FMultiset& a, const FMultiset& b) { return !(a == b); }
  friend bool operator<(const FMultiset& a, const FMultiset& b) {
    return std::lexicographical_compare(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                        b.items_.end());
  }

 private:
  std::vector<Formula> items_;
};

class SequentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One crown component P => Q; both sides atomic.
struct CrownComponent {
  FMultiset ante;
  FMultiset succ;

  CrownComponent() = default;
  CrownComponent(FMultiset a, FMultiset s);

  bool empty() const { return ante.empty() && succ.empty(); }
  friend bool operator==(const CrownComponent& a, const CrownComponent& b) {
    return a.ante == b.ante && a.succ == b.succ;
  }
  friend bool operator!=(const CrownComponent& a, const CrownComponent& b) { return !(a == b); }
  friend bool operator<(const CrownComponent& a, const CrownComponent& b) {
    if (a.ante != b.ante) return a.ante < b.ante;
    return a.succ < b.succ;
  }
};

// Gamma => Delta || P1 => Q1 | ... | Pn => Qn.
// The crown is stored in insertion order; equality ignores that order.
struct RootedHypersequent {
  FMultiset ante;
  FMultiset succ;
  std::vector<CrownComponent> crown;

  RootedHypersequent() = default;
  RootedHypersequent(FMultiset a, FMultiset s, std::vector<CrownComponent> c = {});

  std::vector<CrownComponent> sorted_crown() const;
  // True when every root formula is atomic or modal.
  bool root_is_modal_atomic() const;
  // Index of some component equal to c.
  std::optional<std::size_t> find_component(const CrownComponent& c) const;

  friend bool operator==(const RootedHypersequent& a, const RootedHypersequent& b);
  friend bool operator!=(const RootedHypersequent& a, const RootedHypersequent& b) {
    return !(a == b);
  }
  friend bool operator<(const RootedHypersequent& a, const RootedHypersequent& b);
};

struct SequentHash {
  std::size_t operator()(const RootedHypersequent& s) const;
};

RootedHypersequent parse_sequent(std::string_view text);
std::string render_sequent(const RootedHypersequent& s);
std::string render_component(const CrownComponent& c);
std::ostream& operator<<(std::ostream& os, const RootedHypersequent& s);

// /\Gamma -> \/Delta \/ \/_i [](/\P_i -> \/Q_i).
Formula interpretation(const RootedHypersequent& s);

// Collapses multiplicities, deduplicates and sorts the crown.
RootedHypersequent set_project(const RootedHypersequent& s);

// All formulas anywhere in the sequent (root and crown), with repetition.
std::vector<Formula> all_formulas(const RootedHypersequent& s);

}  // namespace s5
