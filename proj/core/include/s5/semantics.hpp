#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "s5/calculus.hpp"

namespace s5 {

// Finite S5 model with the universal relation. Worlds are bitmasks over
// `atoms`; at most 64 worlds.
struct KripkeModel {
  std::vector<std::string> atoms;
  std::vector<std::uint64_t> worlds;

  std::size_t size() const { return worlds.size(); }
  bool holds(std::size_t world, const std::string& atom) const;
  std::vector<std::string> true_atoms(std::size_t world) const;
};

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool eval(const KripkeModel& m, std::size_t world, const Formula& f);
// Bit w set iff f holds at world w.
std::uint64_t eval_worlds(const KripkeModel& m, const Formula& f);
bool eval_sequent(const KripkeModel& m, std::size_t world, const RootedHypersequent& s);

struct Countermodel {
  KripkeModel model;
  std::size_t world = 0;
};

struct OracleVerdict {
  std::optional<Countermodel> countermodel;  // empty means valid
  bool valid() const { return !countermodel.has_value(); }
};

struct OracleOptions {
  // Ceiling on the number of candidate models examined.
  std::uint64_t max_models = 20'000'000;
};

// Number of worlds enumerated: distinct modal subformulas + 1, capped by the
// number of distinct valuations.
std::size_t world_bound(const Formula& f);

OracleVerdict oracle_validity(const Formula& f, const OracleOptions& opts = {});
OracleVerdict oracle_sequent(const RootedHypersequent& s, const OracleOptions& opts = {});

struct SoundnessResult {
  bool ok = true;
  std::vector<std::size_t> path;
  std::optional<RootedHypersequent> failing;
  explicit operator bool() const { return ok; }
};

// Every node's conclusion must be oracle-valid.
SoundnessResult check_soundness(const Proof& pf, const OracleOptions& opts = {});

// Worlds with their atoms, the designated world and a truth table over the
// subformulas of f.
std::string render_countermodel(const Countermodel& cm, const Formula& f);

}  // namespace s5
