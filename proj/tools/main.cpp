#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cli.hpp"
#include "s5/hilbert.hpp"
#include "s5/qnf.hpp"
#include "s5/semantics.hpp"
#include "s5/serialize.hpp"

using namespace s5;
using namespace s5::cli;

namespace {

struct Options {
  std::string goal, file, descriptor;
  std::size_t max_depth = SearchBudget{}.max_depth;
  std::size_t jobs = std::max(1U, std::thread::hardware_concurrency());
  bool json = false, latex = false, oracle = false, dqnf = false;

  ProofFormat format() const {
    return json ? ProofFormat::Json : latex ? ProofFormat::Latex : ProofFormat::Text;
  }
};

void print_countermodel(const Countermodel& cm, const RootedHypersequent& s) {
  std::cout << "countermodel (" << cm.model.size() << " worlds, * marks the actual one):\n"
            << render_countermodel(cm, s.ante.empty() && s.crown.empty() && s.succ.size() == 1
                                           ? *s.succ.begin()
                                           : interpretation(s));
}

int cmd_prove(const Options& o) {
  const auto goal = goal_from(o.goal);
  SearchBudget budget;
  budget.max_depth = o.max_depth;
  auto v = prove(goal, budget);

  if (v.status == SearchStatus::BudgetExceeded) {
    std::cerr << "search budget exhausted after " << v.visited << " sequents\n";
    return kBudget;
  }
  if (!v.provable()) {
    std::cout << "not provable: " << render_sequent(goal) << '\n';
    if (o.oracle) {
      auto ov = oracle_sequent(goal);
      if (ov.valid()) {
        std::cerr << "oracle disagrees: the sequent is valid\n";
        return kRefuted;
      }
      print_countermodel(*ov.countermodel, goal);
    }
    return kRefuted;
  }

  if (auto chk = check_proof(v.proof); !chk.ok) {
    std::cerr << "internal error: search produced a proof the checker rejects: " << chk.reason
              << '\n';
    return kRefuted;
  }
  if (o.oracle && !oracle_sequent(goal).valid()) {
    std::cerr << "oracle disagrees: the sequent has a countermodel\n";
    return kRefuted;
  }
  if (!(v.searched == goal) && o.format() == ProofFormat::Text)
    std::cout << "# constants simplified: " << render_sequent(v.searched) << '\n';
  emit_proof(std::cout, v.proof, o.format());
  return kOk;
}

int cmd_check(const Options& o) {
  const Proof pf = load_proof(o.file);
  auto chk = check_proof(pf);
  if (!chk.ok) {
    std::cout << "invalid at [";
    for (std::size_t i = 0; i < chk.path.size(); ++i) std::cout << (i ? "," : "") << chk.path[i];
    std::cout << "]: " << chk.reason << '\n';
    return kRefuted;
  }
  std::cout << "valid: " << render_sequent(pf->conclusion) << "\nheight " << proof_height(pf)
            << ", nodes " << proof_size(pf) << ", subformula property "
            << (has_subformula_property(pf) ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_oracle(const Options& o) {
  const auto goal = goal_from(o.goal);
  auto v = oracle_sequent(goal);
  if (v.valid()) {
    std::cout << "valid\n";
    return kOk;
  }
  std::cout << "not valid\n";
  print_countermodel(*v.countermodel, goal);
  return kRefuted;
}

int cmd_qnf(const Options& o) {
  const Formula f = formula_from(o.goal);
  std::cout << render_qnf(o.dqnf ? to_dqnf(f) : to_cqnf(f)) << '\n';
  return kOk;
}

int cmd_transform(const Options& o) {
  return run_transform(load_proof(o.file), o.descriptor, o.format(), std::cout, std::cerr);
}

int cmd_hilbert(const Options& o) {
  HilbertProof hp;
  try {
    hp = parse_hilbert(read_file(o.file));
  } catch (const HilbertError& e) {
    throw UsageError(o.file + ": " + e.what());
  }
  if (auto chk = check_hilbert(hp); !chk.ok) {
    std::cout << "step " << chk.step + 1 << ": " << chk.reason << '\n';
    return kRefuted;
  }
  if (o.format() == ProofFormat::Text)
    std::cout << "# derivation checks (" << hp.steps.size() << " steps)\n";
  Proof pf;
  try {
    pf = translate(hp);
  } catch (const HilbertError& e) {
    std::cerr << "translation failed: " << e.what() << '\n';
    return kRefuted;
  } catch (const TransformError& e) {
    std::cerr << "translation failed: " << e.what() << '\n';
    return kBudget;
  }
  if (auto chk = check_proof(pf); !chk.ok) {
    std::cerr << "internal error: translation rejected by the checker: " << chk.reason << '\n';
    return kRefuted;
  }
  emit_proof(std::cout, pf, o.format());
  return kOk;
}

void proof_format_flags(CLI::App* sub, Options& o) {
  auto* j = sub->add_flag("--json", o.json, "Emit the proof as JSON");
  sub->add_flag("--latex", o.latex, "Emit the proof as a bussproofs tree")->excludes(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof search, checking and transformation for S5 rooted hypersequents", "s5"};
  app.require_subcommand(1);
  Options o;
  int (*run)(const Options&) = nullptr;

  auto* prove_cmd = app.add_subcommand("prove", "Search for a proof of a sequent or formula");
  prove_cmd->add_option("sequent", o.goal, "Sequent such as \"p => q || r =>\", or a formula")
      ->required();
  prove_cmd->add_option("--max-depth", o.max_depth, "Depth bound for the search");
  prove_cmd->add_flag("--oracle", o.oracle, "Cross-check the verdict against Kripke semantics");
  proof_format_flags(prove_cmd, o);
  prove_cmd->callback([&] { run = cmd_prove; });

  auto* check_cmd = app.add_subcommand("check", "Check a JSON proof file");
  check_cmd->add_option("prooffile", o.file)->required();
  check_cmd->callback([&] { run = cmd_check; });

  auto* oracle_cmd = app.add_subcommand("oracle", "Decide validity by model enumeration");
  oracle_cmd->add_option("formula", o.goal, "Formula or sequent")->required();
  oracle_cmd->callback([&] { run = cmd_oracle; });

  auto* qnf_cmd = app.add_subcommand("qnf", "Quasi-propositional normal form");
  qnf_cmd->add_option("formula", o.goal)->required();
  auto* c = qnf_cmd->add_flag("--cqnf", "Conjunctive form (default)");
  qnf_cmd->add_flag("--dqnf", o.dqnf, "Disjunctive form")->excludes(c);
  qnf_cmd->callback([&] { run = cmd_qnf; });

  auto* tr_cmd = app.add_subcommand("transform", "Apply an admissible rule to a JSON proof");
  tr_cmd->add_option("prooffile", o.file)->required();
  tr_cmd->add_option("descriptor", o.descriptor,
                     "merge-crown:I:J  merge-root:I  weaken-left:F  weaken-right:F\n"
                     "weaken-crown:I:C  weaken-component:C  contract-left:F  contract-right:F\n"
                     "contract-crown-left:I:P  contract-crown-right:I:Q  contract-external:I:J\n"
                     "invert:RULE:F  invert:Exch:I  strip-dia:F  strip-box:F  cut:F:RIGHTFILE")
      ->required();
  proof_format_flags(tr_cmd, o);
  tr_cmd->callback([&] { run = cmd_transform; });

  auto* hil_cmd = app.add_subcommand("hilbert", "Check a Hilbert derivation and translate it");
  hil_cmd->add_option("prooffile", o.file)->required();
  proof_format_flags(hil_cmd, o);
  hil_cmd->callback([&] { run = cmd_hilbert; });

  auto* corpus_cmd = app.add_subcommand("corpus", "Run every entry of a corpus file");
  corpus_cmd->add_option("file", o.file, "Lines of the form: id ; provable|notProvable|unknown ; sequent")
      ->required();
  corpus_cmd->add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  corpus_cmd->add_option("--max-depth", o.max_depth, "Depth bound for each search");
  corpus_cmd->callback([&] {
    run = [](const Options& opt) {
      SearchBudget budget;
      budget.max_depth = opt.max_depth;
      return run_corpus(opt.file, opt.jobs, budget, std::cout);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    return run(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OracleLimitError& e) {
    std::cerr << "oracle limit: " << e.what() << '\n';
    return kBudget;
  } catch (const TransformError& e) {
    std::cerr << "transform failed: " << e.what() << '\n';
    return kBudget;
  }
}
