#include "s5/serialize.hpp"

#include "json.hpp"

namespace s5 {

namespace {

using nlohmann::json;

json node_json(const Proof& pf) {
  json j;
  j["conclusion"] = render_sequent(pf->conclusion);
  j["rule"] = rule_name(pf->instance.rule);
  if (pf->instance.principal) {
    j["principal"] = render_formula(*pf->instance.principal);
    j["side"] = pf->instance.side == Side::Right ? "right" : "left";
  }
  if (pf->instance.crown_index) j["crown_index"] = *pf->instance.crown_index;
  json kids = json::array();
  for (const auto& k : pf->premises) kids.push_back(node_json(k));
  j["premises"] = std::move(kids);
  return j;
}

template <typename T>
T field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("proof node lacks \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("proof node field \"") + key + "\" has the wrong type");
  }
}

Proof node_from(const json& j) {
  if (!j.is_object()) throw FormatError("proof node must be an object");
  RootedHypersequent s;
  try {
    s = parse_sequent(field<std::string>(j, "conclusion"));
  } catch (const std::exception& e) {
    if (dynamic_cast<const FormatError*>(&e)) throw;
    throw FormatError(std::string("bad conclusion: ") + e.what());
  }
  const auto name = field<std::string>(j, "rule");
  auto rule = rule_from_name(name);
  if (!rule) throw FormatError("unknown rule " + name);

  RuleInstance r;
  r.rule = *rule;
  r.side = rule_side(*rule);
  if (j.contains("principal")) {
    try {
      r.principal = parse_formula(field<std::string>(j, "principal"));
    } catch (const ParseError& e) {
      throw FormatError(std::string("bad principal: ") + e.what());
    }
  }
  if (j.contains("side")) {
    const auto side = field<std::string>(j, "side");
    if (side != "left" && side != "right") throw FormatError("side must be left or right");
    r.side = side == "right" ? Side::Right : Side::Left;
  }
  if (j.contains("crown_index")) r.crown_index = field<std::size_t>(j, "crown_index");

  std::vector<Proof> kids;
  if (j.contains("premises")) {
    const json& ps = j.at("premises");
    if (!ps.is_array()) throw FormatError("premises must be an array");
    for (const auto& p : ps) kids.push_back(node_from(p));
  }
  return make_node(std::move(s), std::move(r), std::move(kids));
}

std::string multiset_latex(const FMultiset& m) {
  std::string out;
  for (const auto& f : m) {
    if (!out.empty()) out += ", ";
    out += render_formula_latex(f);
  }
  return out;
}

std::string arrow_latex(const FMultiset& a, const FMultiset& s) {
  std::string l = multiset_latex(a), r = multiset_latex(s);
  return (l.empty() ? "" : l + " ") + "\\Rightarrow" + (r.empty() ? "" : " " + r);
}

std::string rule_latex(RuleId r) {
  switch (r) {
    case RuleId::Ax: return "Ax";
    case RuleId::LBot: return "$L\\bot$";
    case RuleId::RTop: return "$R\\top$";
    case RuleId::LNeg: return "$L\\neg$";
    case RuleId::RNeg: return "$R\\neg$";
    case RuleId::LOr: return "$L\\lor$";
    case RuleId::ROr: return "$R\\lor$";
    case RuleId::LAnd: return "$L\\land$";
    case RuleId::RAnd: return "$R\\land$";
    case RuleId::LImp: return "$L\\to$";
    case RuleId::RImp: return "$R\\to$";
    case RuleId::LDia: return "$L\\Diamond$";
    case RuleId::RDia: return "$R\\Diamond$";
    case RuleId::LBox: return "$L\\Box$";
    case RuleId::RBox: return "$R\\Box$";
    case RuleId::Exch: return "Exch";
  }
  return rule_name(r);
}

void latex_rec(const Proof& pf, std::string& out) {
  for (const auto& k : pf->premises) latex_rec(k, out);
  if (pf->premises.empty()) out += "\\AxiomC{}\n";
  out += "\\RightLabel{\\scriptsize " + rule_latex(pf->instance.rule) + "}\n";
  static const char* const kInf[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC", "\\TrinaryInfC"};
  out += std::string(kInf[std::min<std::size_t>(pf->premises.size(), 3)]) + "{$" +
         sequent_to_latex(pf->conclusion) + "$}\n";
}

void text_rec(const Proof& pf, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += render_sequent(pf->conclusion) + "    [" + render_instance(pf->instance) + "]\n";
  for (const auto& k : pf->premises) text_rec(k, depth + 1, out);
}

}  // namespace

std::string proof_to_text(const Proof& pf) {
  if (!pf) throw FormatError("null proof");
  std::string out;
  text_rec(pf, 0, out);
  return out;
}

std::string proof_to_json(const Proof& pf, int indent) {
  if (!pf) throw FormatError("null proof");
  return node_json(pf).dump(indent);
}

Proof proof_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return node_from(j);
}

std::string sequent_to_latex(const RootedHypersequent& s) {
  std::string out = arrow_latex(s.ante, s.succ);
  for (std::size_t i = 0; i < s.crown.size(); ++i) {
    out += i == 0 ? " \\parallel " : " \\mid ";
    out += arrow_latex(s.crown[i].ante, s.crown[i].succ);
  }
  return out;
}

std::string proof_to_latex(const Proof& pf) {
  if (!pf) throw FormatError("null proof");
  std::string out = "\\begin{prooftree}\n";
  latex_rec(pf, out);
  out += "\\end{prooftree}\n";
  return out;
}

}  // namespace s5
