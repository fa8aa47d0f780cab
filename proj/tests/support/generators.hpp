#pragma once

#include <random>
#include <string>
#include <vector>

#include "s5/hypersequent.hpp"

namespace s5::testing {

// All formulas over `atoms` with exactly `size` AST nodes, by size class.
inline std::vector<std::vector<Formula>> formulas_by_size(const std::vector<std::string>& atoms,
                                                          std::size_t max_size,
                                                          std::size_t max_modal_depth) {
  std::vector<std::vector<Formula>> by(max_size + 1);
  if (max_size == 0) return by;
  for (const auto& a : atoms) by[1].push_back(Formula::atom(a));
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const auto& a : by[n - 1]) {
      by[n].push_back(Formula::neg(a));
      if (a.modal_depth() < max_modal_depth) {
        by[n].push_back(Formula::box(a));
        by[n].push_back(Formula::dia(a));
      }
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (const auto& a : by[i])
        for (const auto& b : by[n - 1 - i]) {
          by[n].push_back(Formula::conj(a, b));
          by[n].push_back(Formula::disj(a, b));
          by[n].push_back(Formula::imp(a, b));
        }
    }
  }
  return by;
}

inline std::vector<Formula> enumerate_formulas(const std::vector<std::string>& atoms,
                                               std::size_t max_size, std::size_t max_modal_depth) {
  std::vector<Formula> out;
  for (auto& cls : formulas_by_size(atoms, max_size, max_modal_depth))
    out.insert(out.end(), cls.begin(), cls.end());
  return out;
}

// Random formula with at most `max_size` nodes. Constants appear with small
// probability when allowed.
inline Formula random_formula(std::mt19937_64& rng, std::size_t max_size,
                              const std::vector<std::string>& atoms, bool constants = false) {
  auto pick = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  if (max_size <= 1 || pick(4) == 0) {
    if (constants && pick(8) == 0) return pick(2) ? Formula::top() : Formula::bottom();
    return Formula::atom(atoms[pick(atoms.size())]);
  }
  if (max_size == 2 || pick(3) == 0) {
    Formula a = random_formula(rng, max_size - 1, atoms, constants);
    switch (pick(3)) {
      case 0: return Formula::neg(a);
      case 1: return Formula::box(a);
      default: return Formula::dia(a);
    }
  }
  std::size_t left = 1 + pick(max_size - 2);
  Formula a = random_formula(rng, left, atoms, constants);
  Formula b = random_formula(rng, max_size - 1 - a.size(), atoms, constants);
  switch (pick(3)) {
    case 0: return Formula::conj(a, b);
    case 1: return Formula::disj(a, b);
    default: return Formula::imp(a, b);
  }
}

// Root of up to two formulas per side (each at most `size` nodes) and up to
// two crown components over the atoms.
inline RootedHypersequent random_sequent(std::mt19937_64& rng, std::size_t size = 6,
                                         const std::vector<std::string>& atoms = {"p", "q", "r"}) {
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  RootedHypersequent s;
  for (std::size_t j = pick(3); j > 0; --j) s.ante.add(random_formula(rng, size, atoms));
  for (std::size_t j = pick(3); j > 0; --j) s.succ.add(random_formula(rng, size, atoms));
  for (std::size_t c = pick(3); c > 0; --c) {
    CrownComponent comp;
    for (const auto& x : atoms) {
      const auto k = pick(4);
      if (k == 0) comp.ante.add(Formula::atom(x));
      if (k == 1) comp.succ.add(Formula::atom(x));
    }
    s.crown.push_back(comp);
  }
  return s;
}

}  // namespace s5::testing
