#include <charconv>
#include <ostream>
#include <vector>

#include "cli.hpp"
#include "s5/serialize.hpp"
#include "s5/transform.hpp"

namespace s5::cli {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(':', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::size_t index_arg(const std::string& s) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw UsageError("bad index '" + s + "'");
  return v;
}

CrownComponent component_arg(const std::string& s) {
  auto seq = goal_from("=> || " + s);
  if (seq.crown.size() != 1) throw UsageError("expected one component, got '" + s + "'");
  return seq.crown.front();
}

void want(const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n + 1)
    throw UsageError(args.front() + " takes " + std::to_string(n) + " argument(s)");
}

RuleInstance instance_arg(const std::vector<std::string>& args) {
  want(args, 2);
  auto rule = rule_from_name(args[1]);
  if (!rule) throw UsageError("unknown rule " + args[1]);
  if (*rule == RuleId::Exch) return RuleInstance::exch(index_arg(args[2]));
  return RuleInstance::on(*rule, formula_from(args[2]));
}

std::vector<TransformReport> dispatch(const Proof& pf, const std::vector<std::string>& a) {
  const std::string& op = a.front();
  if (op == "merge-crown") {
    want(a, 2);
    return {merge_crown(pf, index_arg(a[1]), index_arg(a[2]))};
  }
  if (op == "merge-root") {
    want(a, 1);
    return {merge_root(pf, index_arg(a[1]))};
  }
  if (op == "weaken-left" || op == "weaken-right") {
    want(a, 1);
    auto f = formula_from(a[1]);
    return {weaken(pf, op == "weaken-left" ? WeakenAt::left(f) : WeakenAt::right(f))};
  }
  if (op == "weaken-crown") {
    want(a, 2);
    return {weaken(pf, WeakenAt::crown(index_arg(a[1]), component_arg(a[2])))};
  }
  if (op == "weaken-component") {
    want(a, 1);
    return {weaken(pf, WeakenAt::component(component_arg(a[1])))};
  }
  if (op == "contract-left" || op == "contract-right") {
    want(a, 1);
    auto f = formula_from(a[1]);
    return {contract(pf, op == "contract-left" ? ContractAt::left(f) : ContractAt::right(f))};
  }
  if (op == "contract-crown-left" || op == "contract-crown-right") {
    want(a, 2);
    auto i = index_arg(a[1]);
    auto p = formula_from(a[2]);
    return {contract(pf, op == "contract-crown-left" ? ContractAt::crown_left(i, p)
                                                     : ContractAt::crown_right(i, p))};
  }
  if (op == "contract-external") {
    want(a, 2);
    return {contract(pf, ContractAt::external(index_arg(a[1]), index_arg(a[2])))};
  }
  if (op == "invert") return invert(pf, instance_arg(a));
  if (op == "strip-dia" || op == "strip-box") {
    want(a, 1);
    auto f = formula_from(a[1]);
    return {strip_modality(pf, op == "strip-dia" ? StripAt::left_dia(f) : StripAt::right_box(f))};
  }
  if (op == "cut") {
    want(a, 2);
    Proof right = load_proof(a[2]);
    if (auto chk = check_proof(right); !chk.ok)
      throw UsageError(a[2] + ": not a valid proof: " + chk.reason);
    return {eliminate_cut(pf, right, formula_from(a[1]))};
  }
  throw UsageError("unknown transform '" + op + "'");
}

}  // namespace

int run_transform(const Proof& pf, const std::string& descriptor, ProofFormat fmt,
                  std::ostream& os, std::ostream& log) {
  if (auto chk = check_proof(pf); !chk.ok) {
    log << "input proof rejected: " << chk.reason << '\n';
    return kRefuted;
  }
  std::vector<TransformReport> reports;
  try {
    reports = dispatch(pf, split(descriptor));
  } catch (const CalculusError& e) {
    throw UsageError(e.what());
  } catch (const TransformError& e) {
    log << "transform failed: " << e.what() << '\n';
    return std::string_view(e.what()).find("budget") != std::string_view::npos ? kBudget
                                                                               : kRefuted;
  }

  const bool many = reports.size() > 1 && fmt == ProofFormat::Json;
  if (many) os << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    log << "premise " << i << ": " << render_sequent(r.output->conclusion) << "  height "
        << r.heightIn << " -> " << r.heightOut << ", nodes " << proof_size(pf) << " -> "
        << proof_size(r.output) << (r.heightPreserving ? ", height-preserving" : "") << '\n';
    if (many && i) os << ",\n";
    emit_proof(os, r.output, fmt);
  }
  if (many) os << "]\n";
  return kOk;
}

}  // namespace s5::cli
