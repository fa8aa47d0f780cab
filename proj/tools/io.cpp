#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "s5/serialize.hpp"

namespace s5::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RootedHypersequent goal_from(std::string_view text) {
  try {
    if (text.find("=>") != std::string_view::npos) return parse_sequent(text);
    return RootedHypersequent({}, {parse_formula(text)});
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const SequentError& e) {
    throw UsageError(e.what());
  }
}

Formula formula_from(std::string_view text) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

Proof load_proof(const std::string& path) {
  try {
    return proof_from_json(read_file(path));
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit_proof(std::ostream& os, const Proof& pf, ProofFormat fmt) {
  switch (fmt) {
    case ProofFormat::Json: os << proof_to_json(pf) << '\n'; break;
    case ProofFormat::Latex: os << proof_to_latex(pf); break;
    case ProofFormat::Text: os << proof_to_text(pf); break;
  }
}

}  // namespace s5::cli
