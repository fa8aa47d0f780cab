#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "s5/calculus.hpp"
#include "s5/search.hpp"

namespace s5::cli {

enum Exit : int { kOk = 0, kRefuted = 1, kUsage = 2, kBudget = 3 };

// Bad input from the command line or a file; reported with exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProofFormat { Text, Json, Latex };

std::string read_file(const std::string& path);

// Sequent text, or a bare formula read as => f.
RootedHypersequent goal_from(std::string_view text);

Formula formula_from(std::string_view text);

Proof load_proof(const std::string& path);

void emit_proof(std::ostream& os, const Proof& pf, ProofFormat fmt);

// `op:arg:...` applied to the proof; writes the result to os and the report to log.
int run_transform(const Proof& pf, const std::string& descriptor, ProofFormat fmt,
                  std::ostream& os, std::ostream& log);

int run_corpus(const std::string& path, std::size_t jobs, const SearchBudget& budget,
               std::ostream& os);

}  // namespace s5::cli
