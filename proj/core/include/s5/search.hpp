#pragma once

#include <cstddef>
#include <optional>

#include "s5/calculus.hpp"

namespace s5 {

struct SearchBudget {
  std::size_t max_depth = 200;
  std::size_t max_visited = 2'000'000;
};

enum class SearchStatus { Provable, NotProvable, BudgetExceeded };

const char* status_name(SearchStatus s);

struct SearchVerdict {
  SearchStatus status = SearchStatus::NotProvable;
  Proof proof;  // set iff Provable
  // The goal after constant simplification; the proof concludes this sequent.
  RootedHypersequent searched;
  std::size_t saturated = 0;  // open leaves met during the search
  std::size_t visited = 0;

  bool provable() const { return status == SearchStatus::Provable; }
};

// Simplifies constants inside each formula, drops top on the left and bot on
// the right. Crown untouched.
RootedHypersequent preprocess_goal(const RootedHypersequent& goal);

SearchVerdict prove(const RootedHypersequent& goal, const SearchBudget& budget = {});
SearchVerdict decide_formula(const Formula& f, const SearchBudget& budget = {});

}  // namespace s5
