#include "format/proof_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/subst.hpp"
#include "fol/clause.hpp"
#include "schemata/schemata.hpp"
#include "shadow/shadow.hpp"

namespace sk {

namespace {

constexpr const char* kHeader = "shadowkernel-proof v1";

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitTokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// Labels land in whitespace-separated head position, so they must be
// delimiter-free to survive a round trip.
void requireToken(const std::string& what, const std::string& s) {
  if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos ||
      s.find("::") != std::string::npos)
    throw std::invalid_argument("writeProof: " + what + " '" + s +
                                "' cannot be written as a token");
}

std::string renderIds(const std::vector<std::size_t>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  out += "]";
  return out;
}

std::string renderDeps(const std::set<std::string>& deps) {
  std::string out = "{";
  bool first = true;
  for (const std::string& d : deps) {
    if (!first) out += ",";
    out += d;
    first = false;
  }
  out += "}";
  return out;
}

// Premise ids and assumption-label support sets, recomputed from the proof
// itself. Nodes number the assumptions first, then every expansion
// conclusion in application order.
struct ProofGraph {
  std::map<std::string, std::vector<std::size_t>> premise_ids;
  std::map<std::string, std::set<std::string>> node_deps;
  std::vector<std::set<std::string>> step_deps;
};

ProofGraph analyze(const MixedProof& p, const Signature& sig) {
  ProofGraph g;
  std::map<std::string, std::size_t> by_key;
  std::vector<std::string> node_labels;
  auto addNode = [&](const std::string& label, const FormulaPtr& f, std::set<std::string> deps) {
    by_key.emplace(writeFormula(alphaNormalize(f), sig), node_labels.size());
    g.node_deps[label] = std::move(deps);
    node_labels.push_back(label);
  };
  for (const LabelledFormula& a : p.assumptions) addNode(a.label, a.formula, {a.label});
  for (const ExpansionRound& r : p.rounds) {
    if (r.labels.size() != r.applied.size())
      throw std::invalid_argument("writeProof: round labels out of step with its instances");
    for (std::size_t k = 0; k < r.applied.size(); ++k) {
      const SchemaInstance& inst = r.applied[k];
      std::vector<std::size_t> ids;
      std::set<std::string> deps;
      for (const FormulaPtr& prem : inst.premises) {
        auto it = by_key.find(writeFormula(alphaNormalize(prem), sig));
        if (it == by_key.end())
          throw std::invalid_argument("writeProof: instance premise is not an earlier node");
        ids.push_back(it->second);
        const std::set<std::string>& pd = g.node_deps[node_labels[it->second]];
        deps.insert(pd.begin(), pd.end());
      }
      g.premise_ids[r.labels[k]] = std::move(ids);
      addNode(r.labels[k], inst.conclusion, std::move(deps));
    }
  }
  g.step_deps.reserve(p.fol.steps.size());
  for (std::size_t i = 0; i < p.fol.steps.size(); ++i) {
    const ProofStep& st = p.fol.steps[i];
    std::set<std::string> deps;
    auto parent = [&](int id) -> const std::set<std::string>& {
      if (id < 0 || static_cast<std::size_t>(id) >= i)
        throw std::invalid_argument("writeProof: derivation step premise out of range");
      return g.step_deps[static_cast<std::size_t>(id)];
    };
    switch (st.rule) {
      case ProofStep::Rule::Input: {
        auto it = g.node_deps.find(st.label);
        if (it != g.node_deps.end()) deps = it->second;
        break;  // goal and sort-theory clauses rest on no assumption
      }
      case ProofStep::Rule::Resolve: {
        deps = parent(st.prem1);
        const std::set<std::string>& d2 = parent(st.prem2);
        deps.insert(d2.begin(), d2.end());
        break;
      }
      case ProofStep::Rule::Factor:
        deps = parent(st.prem1);
        break;
    }
    g.step_deps.push_back(std::move(deps));
  }
  return g;
}

void writeBlock(std::ostream& os, const MixedProof& p, const Signature& sig) {
  ProofGraph g = analyze(p, sig);
  os << kHeader << "\n";
  os << "goal :: " << writeFormula(p.goal, sig) << "\n";
  for (const LabelledFormula& a : p.assumptions) {
    requireToken("assumption label", a.label);
    os << "assume " << a.label << " :: " << writeFormula(a.formula, sig) << "\n";
  }
  for (const auto& [name, f] : p.shadow_atoms) {
    requireToken("atom name", name);
    os << "atom " << name << " :: " << writeFormula(f, sig) << "\n";
  }
  for (std::size_t rn = 0; rn < p.rounds.size(); ++rn) {
    const ExpansionRound& r = p.rounds[rn];
    os << "round " << rn << "\n";
    for (std::size_t k = 0; k < r.applied.size(); ++k) {
      const SchemaInstance& inst = r.applied[k];
      const std::string& label = r.labels[k];
      requireToken("conclusion label", label);
      os << "schema " << schemaName(inst.id) << " " << label << " premises "
         << renderIds(g.premise_ids[label]) << " deps " << renderDeps(g.node_deps[label])
         << " :: " << writeFormula(inst.conclusion, sig) << "\n";
      for (const auto& [key, value] : inst.binding) {
        requireToken("binding key", key);
        os << "bind " << key << " :: " << value << "\n";
      }
      for (const std::string& side : inst.side_conditions) os << "side :: " << side << "\n";
      if (inst.subproof) {
        os << "sub\n";
        writeBlock(os, *inst.subproof, sig);
        os << "end\n";
      }
    }
  }
  os << "fol " << p.fol.steps.size() << "\n";
  for (std::size_t i = 0; i < p.fol.steps.size(); ++i) {
    const ProofStep& st = p.fol.steps[i];
    os << "step " << i << " ";
    switch (st.rule) {
      case ProofStep::Rule::Input:
        requireToken("input step label", st.label);
        os << "input " << st.label;
        break;
      case ProofStep::Rule::Resolve:
        os << "resolve " << st.prem1 << " " << st.prem2 << " " << st.lit1 << " " << st.lit2;
        break;
      case ProofStep::Rule::Factor:
        os << "factor " << st.prem1 << " " << st.lit1 << " " << st.lit2;
        break;
    }
    os << " deps " << renderDeps(g.step_deps[i]) << " :: " << renderClause(st.clause) << "\n";
  }
  os << "qed " << (p.fol.steps.empty() ? -1 : static_cast<int>(p.fol.steps.size()) - 1) << "\n";
}

// ---------------------------------------------------------------------------
// Reading

Term termFromSExpr(const SExpr& e, const Signature& sig, bool& ok, std::string& err);

std::vector<Term> termsFromList(const SExpr& e, std::size_t from, const Signature& sig, bool& ok,
                                std::string& err) {
  std::vector<Term> out;
  for (std::size_t i = from; i < e.items.size() && ok; ++i)
    out.push_back(termFromSExpr(e.items[i], sig, ok, err));
  return out;
}

Term termFromSExpr(const SExpr& e, const Signature& sig, bool& ok, std::string& err) {
  if (e.isSymbol()) {
    const std::string& n = e.text;
    if (n.rfind("v$", 0) == 0) return Term::var(n, kNoSort);
    if (const ConstDecl* c = sig.findConst(n)) return Term::constant(n, c->sort);
    if (n.rfind("w$", 0) == 0) {
      // Sort witnesses carry the sort they inhabit.
      if (std::optional<SortId> s = sig.findSort(n.substr(2))) return Term::constant(n, *s);
      ok = false;
      err = "unknown witness sort in '" + n + "'";
      return Term::constant(n, kNoSort);
    }
    return Term::constant(n, kNoSort);  // skolem constants and adopted names
  }
  if (e.items.empty() || !e.items[0].isSymbol()) {
    ok = false;
    err = "malformed term";
    return Term::constant("?", kNoSort);
  }
  const std::string& fn = e.items[0].text;
  std::vector<Term> args = termsFromList(e, 1, sig, ok, err);
  SortId result = kNoSort;
  if (const FuncDecl* fd = sig.findFunc(fn)) result = fd->result_sort;
  return Term::app(fn, result, std::move(args));
}

bool literalFromSExpr(const SExpr& e, const Signature& sig, Literal& out, std::string& err) {
  const SExpr* cur = &e;
  out = Literal{};
  if (cur->isList() && !cur->items.empty() && cur->items[0].isSymbol() &&
      cur->items[0].text == "not") {
    if (cur->items.size() != 2) {
      err = "'not' takes exactly one literal";
      return false;
    }
    out.positive = false;
    cur = &cur->items[1];
  }
  if (cur->isSymbol()) {
    out.pred = cur->text;
    return true;
  }
  if (cur->items.empty() || !cur->items[0].isSymbol()) {
    err = "malformed literal";
    return false;
  }
  out.pred = cur->items[0].text;
  bool ok = true;
  out.args = termsFromList(*cur, 1, sig, ok, err);
  return ok;
}

// Recursive-descent reader over trimmed lines. Structure only; the content
// is vouched for by checkMixedProof, never by this parser.
struct ProofReader {
  std::vector<std::string> lines;
  std::vector<std::size_t> line_nos;
  std::size_t pos = 0;
  Signature& sig;
  std::vector<Diagnostic>& diags;
  bool failed = false;

  ProofReader(const std::string& text, Signature& s, std::vector<Diagnostic>& d)
      : sig(s), diags(d) {
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
      ++no;
      std::string t = trimmed(line);
      if (t.empty()) continue;
      lines.push_back(std::move(t));
      line_nos.push_back(no);
    }
  }

  bool atEnd() const { return pos >= lines.size(); }

  int here() const {
    if (lines.empty()) return 1;
    return static_cast<int>(line_nos[pos < lines.size() ? pos : lines.size() - 1]);
  }

  void fail(const std::string& msg) {
    if (!failed) diags.push_back({here(), 1, msg});
    failed = true;
  }

  bool intTok(const std::string& tok, long& out) {
    try {
      std::size_t used = 0;
      out = std::stol(tok, &used);
      return used == tok.size();
    } catch (const std::exception&) {
      return false;
    }
  }

  // "[1,4]" or "[]"
  bool idList(const std::string& tok, std::vector<long>& out) {
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']') return false;
    std::string body = tok.substr(1, tok.size() - 2);
    if (body.empty()) return true;
    std::istringstream is(body);
    std::string piece;
    while (std::getline(is, piece, ',')) {
      long v = 0;
      if (!intTok(piece, v)) return false;
      out.push_back(v);
    }
    return true;
  }

  FormulaPtr formula(const std::string& text) {
    std::size_t before = diags.size();
    FormulaPtr f = parseFormula(text, sig, diags);
    // parseFormula reports positions within the payload; point at the line.
    for (std::size_t i = before; i < diags.size(); ++i) diags[i].line = here();
    if (!f) {
      failed = true;
      if (diags.size() == before) fail("unreadable formula");
    }
    return f;
  }

  MixedProof block();
};

MixedProof ProofReader::block() {
  MixedProof p;
  if (atEnd() || lines[pos] != kHeader) {
    fail(std::string("expected '") + kHeader + "'");
    return p;
  }
  ++pos;

  // label, formula for every node so far; premise ids resolve against it
  std::vector<std::pair<std::string, FormulaPtr>> nodes;
  SchemaInstance* open_inst = nullptr;
  bool goal_seen = false;
  bool fol_seen = false;
  long fol_declared = 0;
  bool done = false;

  while (!failed && !done) {
    if (atEnd()) {
      fail("proof ends without 'qed'");
      break;
    }
    const std::string& line = lines[pos];
    std::string head = line, payload;
    if (std::size_t cut = line.find(" :: "); cut != std::string::npos) {
      head = line.substr(0, cut);
      payload = line.substr(cut + 4);
    }
    std::vector<std::string> tok = splitTokens(head);
    const std::string& kw = tok[0];

    if (kw == "goal") {
      if (tok.size() != 1 || payload.empty()) {
        fail("goal line takes exactly one formula");
      } else if (goal_seen) {
        fail("duplicate goal line");
      } else {
        p.goal = formula(payload);
        goal_seen = true;
      }
    } else if (kw == "assume") {
      if (tok.size() != 2 || payload.empty()) {
        fail("expected 'assume <label> :: <formula>'");
      } else if (!p.rounds.empty() || fol_seen) {
        fail("assumptions must precede rounds");
      } else if (FormulaPtr f = formula(payload)) {
        p.assumptions.push_back({tok[1], f});
        nodes.emplace_back(tok[1], f);
      }
    } else if (kw == "atom") {
      if (tok.size() != 2 || payload.empty()) {
        fail("expected 'atom <name> :: <formula>'");
      } else if (FormulaPtr f = formula(payload)) {
        p.shadow_atoms.emplace_back(tok[1], f);
      }
    } else if (kw == "round") {
      long idx = 0;
      if (tok.size() != 2 || !intTok(tok[1], idx)) {
        fail("expected 'round <index>'");
      } else if (idx != static_cast<long>(p.rounds.size())) {
        fail("round indices must count up from 0");
      } else {
        p.rounds.emplace_back();
        open_inst = nullptr;
      }
    } else if (kw == "schema") {
      std::vector<long> ids;
      std::optional<SchemaId> id;
      if (tok.size() != 7 || tok[3] != "premises" || tok[5] != "deps" || payload.empty()) {
        fail("expected 'schema <name> <label> premises [..] deps {..} :: <formula>'");
      } else if (p.rounds.empty()) {
        fail("schema line outside any round");
      } else if (!(id = schemaFromName(tok[1]))) {
        fail("unknown schema '" + tok[1] + "'");
      } else if (!idList(tok[4], ids)) {
        fail("unreadable premise list '" + tok[4] + "'");
      } else {
        SchemaInstance inst;
        inst.id = *id;
        for (long node : ids) {
          if (node < 0 || static_cast<std::size_t>(node) >= nodes.size()) {
            fail("premise id " + std::to_string(node) + " names no earlier node");
            break;
          }
          inst.premises.push_back(nodes[static_cast<std::size_t>(node)].second);
        }
        if (!failed) {
          if ((inst.conclusion = formula(payload))) {
            ExpansionRound& r = p.rounds.back();
            r.applied.push_back(std::move(inst));
            r.labels.push_back(tok[2]);
            nodes.emplace_back(tok[2], r.applied.back().conclusion);
            open_inst = &r.applied.back();
          }
        }
      }
    } else if (kw == "bind") {
      if (tok.size() != 2) {
        fail("expected 'bind <key> :: <value>'");
      } else if (!open_inst) {
        fail("bind line outside any schema step");
      } else {
        open_inst->binding.emplace_back(tok[1], payload);
      }
    } else if (kw == "side") {
      if (tok.size() != 1) {
        fail("expected 'side :: <condition>'");
      } else if (!open_inst) {
        fail("side line outside any schema step");
      } else {
        open_inst->side_conditions.push_back(payload);
      }
    } else if (kw == "sub") {
      if (!open_inst) {
        fail("sub block outside any schema step");
      } else if (open_inst->subproof) {
        fail("schema step already has a subproof");
      } else {
        ++pos;
        MixedProof inner = block();
        if (!failed) {
          if (atEnd() || lines[pos] != "end") {
            fail("subproof must close with 'end'");
          } else {
            open_inst->subproof = std::make_shared<const MixedProof>(std::move(inner));
          }
        }
      }
    } else if (kw == "fol") {
      if (tok.size() != 2 || !intTok(tok[1], fol_declared) || fol_declared < 0) {
        fail("expected 'fol <step count>'");
      } else if (fol_seen) {
        fail("duplicate fol line");
      } else {
        fol_seen = true;
        open_inst = nullptr;
      }
    } else if (kw == "step") {
      long id = 0;
      if (!fol_seen) {
        fail("step line before 'fol'");
      } else if (tok.size() < 3 || !intTok(tok[1], id) ||
                 id != static_cast<long>(p.fol.steps.size())) {
        fail("step ids must count up from 0");
      } else {
        ProofStep st;
        const std::string& rule = tok[2];
        bool shape_ok = false;
        long nums[4] = {0, 0, 0, 0};
        if (rule == "input" && tok.size() == 6 && tok[4] == "deps") {
          st.rule = ProofStep::Rule::Input;
          st.label = tok[3];
          shape_ok = true;
        } else if (rule == "resolve" && tok.size() == 9 && tok[7] == "deps") {
          st.rule = ProofStep::Rule::Resolve;
          shape_ok = intTok(tok[3], nums[0]) && intTok(tok[4], nums[1]) &&
                     intTok(tok[5], nums[2]) && intTok(tok[6], nums[3]);
          st.prem1 = static_cast<int>(nums[0]);
          st.prem2 = static_cast<int>(nums[1]);
          st.lit1 = static_cast<int>(nums[2]);
          st.lit2 = static_cast<int>(nums[3]);
        } else if (rule == "factor" && tok.size() == 8 && tok[6] == "deps") {
          st.rule = ProofStep::Rule::Factor;
          shape_ok = intTok(tok[3], nums[0]) && intTok(tok[4], nums[1]) && intTok(tok[5], nums[2]);
          st.prem1 = static_cast<int>(nums[0]);
          st.lit1 = static_cast<int>(nums[1]);
          st.lit2 = static_cast<int>(nums[2]);
        }
        std::string err;
        if (!shape_ok) {
          fail("unreadable step line");
        } else if (!parseClauseText(payload, sig, st.clause, err)) {
          fail("step " + std::to_string(id) + ": " + err);
        } else {
          p.fol.steps.push_back(std::move(st));
        }
      }
    } else if (kw == "qed") {
      long id = 0;
      if (tok.size() != 2 || !intTok(tok[1], id)) {
        fail("expected 'qed <step id>'");
      } else if (!fol_seen || fol_declared != static_cast<long>(p.fol.steps.size())) {
        fail("fol step count does not match the steps present");
      } else if (id != static_cast<long>(p.fol.steps.size()) - 1) {
        fail("qed must name the final step");
      } else {
        done = true;
      }
    } else {
      fail("unrecognized line '" + kw + "'");
    }
    if (!failed) ++pos;
  }

  if (!failed && !goal_seen) fail("proof has no goal");
  if (failed) return p;

  // The shadowed image is derived data; rebuild it from the atom table the
  // way the prover built it, minting past the recorded names if the table
  // is short. checkMixedProof compares table and image sizes afterwards.
  try {
    ShadowMap m = ShadowMap::restore(p.shadow_atoms);
    p.shadowed_gamma.clear();
    for (const auto& [label, f] : nodes) p.shadowed_gamma.push_back({label, shadow(f, 1, m)});
    p.shadowed_goal = shadow(p.goal, 1, m);
  } catch (const std::exception& e) {
    fail(std::string("cannot rebuild the shadowed sequent: ") + e.what());
  }
  return p;
}

}  // namespace

bool parseClauseText(const std::string& text, const Signature& sig, Clause& out,
                     std::string& error) {
  out.lits.clear();
  std::string t = trimmed(text);
  if (t == "[]") return true;
  if (t.empty()) {
    error = "empty clause text (the empty clause is spelled '[]')";
    return false;
  }
  std::vector<std::string> pieces;
  std::size_t start = 0;
  while (true) {
    std::size_t cut = t.find(" | ", start);
    if (cut == std::string::npos) {
      pieces.push_back(t.substr(start));
      break;
    }
    pieces.push_back(t.substr(start, cut - start));
    start = cut + 3;
  }
  for (const std::string& piece : pieces) {
    std::vector<Diagnostic> local;
    std::vector<SExpr> exprs = readSExprs(piece, local);
    if (!local.empty() || exprs.size() != 1) {
      error = "unreadable literal '" + piece + "'";
      return false;
    }
    Literal lit;
    if (!literalFromSExpr(exprs[0], sig, lit, error)) return false;
    out.lits.push_back(std::move(lit));
  }
  return true;
}

std::set<std::string> proofSupport(const MixedProof& p, const Signature& sig) {
  ProofGraph g = analyze(p, sig);
  std::set<std::string> out;
  for (const std::set<std::string>& d : g.step_deps) out.insert(d.begin(), d.end());
  return out;
}

std::string writeProof(const MixedProof& p, const Signature& sig) {
  std::ostringstream os;
  writeBlock(os, p, sig);
  return os.str();
}

MixedProof readProofText(const std::string& text, Signature& sig,
                         std::vector<Diagnostic>& diags) {
  ProofReader r(text, sig, diags);
  MixedProof p = r.block();
  if (!r.failed && !r.atEnd()) r.fail("content after the closing qed");
  return p;
}

MixedProof readProofFile(const std::string& path, Signature& sig,
                         std::vector<Diagnostic>& diags) {
  std::ifstream in(path);
  if (!in) {
    diags.push_back({1, 1, "cannot open '" + path + "'"});
    return MixedProof{};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return readProofText(buf.str(), sig, diags);
}

namespace {

nlohmann::json jsonBlock(const MixedProof& p, const Signature& sig) {
  ProofGraph g = analyze(p, sig);
  nlohmann::json j;
  j["format"] = "shadowkernel-proof";
  j["version"] = 1;
  j["goal"] = writeFormula(p.goal, sig);
  j["assumptions"] = nlohmann::json::array();
  for (const LabelledFormula& a : p.assumptions)
    j["assumptions"].push_back({{"label", a.label}, {"formula", writeFormula(a.formula, sig)}});
  j["atoms"] = nlohmann::json::array();
  for (const auto& [name, f] : p.shadow_atoms)
    j["atoms"].push_back({{"name", name}, {"formula", writeFormula(f, sig)}});
  j["rounds"] = nlohmann::json::array();
  for (const ExpansionRound& r : p.rounds) {
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t k = 0; k < r.applied.size(); ++k) {
      const SchemaInstance& inst = r.applied[k];
      const std::string& label = r.labels[k];
      nlohmann::json s;
      s["schema"] = schemaName(inst.id);
      s["label"] = label;
      s["premises"] = g.premise_ids[label];
      s["deps"] = g.node_deps[label];
      s["conclusion"] = writeFormula(inst.conclusion, sig);
      nlohmann::json binding = nlohmann::json::array();
      for (const auto& [key, value] : inst.binding) binding.push_back({key, value});
      s["binding"] = std::move(binding);
      s["side_conditions"] = inst.side_conditions;
      s["subproof"] = inst.subproof ? jsonBlock(*inst.subproof, sig) : nlohmann::json();
      steps.push_back(std::move(s));
    }
    j["rounds"].push_back({{"applied", std::move(steps)}});
  }
  j["fol"] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.fol.steps.size(); ++i) {
    const ProofStep& st = p.fol.steps[i];
    nlohmann::json s;
    s["id"] = i;
    switch (st.rule) {
      case ProofStep::Rule::Input:
        s["rule"] = "input";
        s["label"] = st.label;
        break;
      case ProofStep::Rule::Resolve:
        s["rule"] = "resolve";
        s["premises"] = {st.prem1, st.prem2};
        s["literals"] = {st.lit1, st.lit2};
        break;
      case ProofStep::Rule::Factor:
        s["rule"] = "factor";
        s["premises"] = {st.prem1};
        s["literals"] = {st.lit1, st.lit2};
        break;
    }
    s["deps"] = g.step_deps[i];
    s["clause"] = renderClause(st.clause);
    j["fol"].push_back(std::move(s));
  }
  j["qed"] = p.fol.steps.empty() ? -1 : static_cast<int>(p.fol.steps.size()) - 1;
  return j;
}

}  // namespace

nlohmann::json proofJson(const MixedProof& p, const Signature& sig) {
  return jsonBlock(p, sig);
}

}  // namespace sk
