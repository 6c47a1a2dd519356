#include "format/kb.hpp"

#include <fstream>
#include <sstream>

#include "format/formula_io.hpp"

namespace sk {

bool validStrength(int s) { return s >= -5 && s <= 5; }

const Assumption* KBDocument::findAssumption(const std::string& label) const {
  for (const Assumption& a : assumptions)
    if (a.label == label) return &a;
  return nullptr;
}

FormulaPtr KBDocument::findGoal(const std::string& label) const {
  for (const auto& [l, f] : goals)
    if (l == label) return f;
  return nullptr;
}

std::optional<std::string> KBDocument::option(const std::string& name) const {
  for (const auto& [k, v] : options)
    if (k == name) return v;
  return std::nullopt;
}

namespace {

void fail(std::vector<Diagnostic>& diags, const SExpr& at, std::string msg) {
  diags.push_back({at.line, at.col, std::move(msg)});
}

bool symbolArg(const SExpr& form, std::size_t i, std::vector<Diagnostic>& diags,
               std::string& out) {
  if (i >= form.items.size() || !form.items[i].isSymbol()) {
    fail(diags, form, "expected a name at argument " + std::to_string(i));
    return false;
  }
  out = form.items[i].text;
  return true;
}

bool intArg(const SExpr& e, std::vector<Diagnostic>& diags, int& out) {
  if (!e.isSymbol()) {
    fail(diags, e, "expected an integer");
    return false;
  }
  try {
    std::size_t used = 0;
    out = std::stoi(e.text, &used);
    if (used != e.text.size()) throw std::invalid_argument("trailing");
  } catch (...) {
    fail(diags, e, "expected an integer, got '" + e.text + "'");
    return false;
  }
  return true;
}

bool userName(const SExpr& at, const std::string& name, std::vector<Diagnostic>& diags) {
  if (Signature::isReservedName(name)) {
    fail(diags, at, "name '" + name + "' is reserved ('$')");
    return false;
  }
  return true;
}

std::optional<SortId> sortArg(const SExpr& e, const Signature& sig,
                              std::vector<Diagnostic>& diags) {
  if (!e.isSymbol()) {
    fail(diags, e, "expected a sort name");
    return std::nullopt;
  }
  auto s = sig.findSort(e.text);
  if (!s) fail(diags, e, "unknown sort '" + e.text + "'");
  return s;
}

std::optional<std::vector<SortId>> sortListArg(const SExpr& e, const Signature& sig,
                                               std::vector<Diagnostic>& diags) {
  if (!e.isList()) {
    fail(diags, e, "expected a parenthesized sort list");
    return std::nullopt;
  }
  std::vector<SortId> out;
  bool ok = true;
  for (const SExpr& item : e.items) {
    auto s = sortArg(item, sig, diags);
    if (!s) {
      ok = false;
      continue;
    }
    out.push_back(*s);
  }
  if (!ok) return std::nullopt;
  return out;
}

}  // namespace

bool applyKBDirective(const SExpr& form, KBDocument& kb, std::vector<Diagnostic>& diags) {
  if (!form.isList() || form.items.empty() || !form.items[0].isSymbol()) return false;
  const std::string& head = form.items[0].text;

  if (head == "sort") {
    std::string name;
    if (!symbolArg(form, 1, diags, name) || !userName(form.items[1], name, diags)) return true;
    SortId parent = kb.sig.rootSort();
    if (form.items.size() == 3) {
      auto p = sortArg(form.items[2], kb.sig, diags);
      if (!p) return true;
      parent = *p;
    } else if (form.items.size() != 2) {
      fail(diags, form, "sort takes a name and an optional parent");
      return true;
    }
    try {
      kb.sig.addSort(name, parent);
    } catch (const SkError& e) {
      fail(diags, form, e.what());
    }
    return true;
  }

  if (head == "const") {
    std::string name;
    if (form.items.size() != 3 || !symbolArg(form, 1, diags, name)) {
      if (form.items.size() != 3) fail(diags, form, "const takes a name and a sort");
      return true;
    }
    if (!userName(form.items[1], name, diags)) return true;
    auto s = sortArg(form.items[2], kb.sig, diags);
    if (!s) return true;
    try {
      kb.sig.addConst(name, *s);
    } catch (const SkError& e) {
      fail(diags, form, e.what());
    }
    return true;
  }

  if (head == "func") {
    std::string name;
    if (form.items.size() != 4) {
      fail(diags, form, "func takes a name, an argument sort list, and a result sort");
      return true;
    }
    if (!symbolArg(form, 1, diags, name) || !userName(form.items[1], name, diags)) return true;
    auto args = sortListArg(form.items[2], kb.sig, diags);
    auto res = sortArg(form.items[3], kb.sig, diags);
    if (!args || !res) return true;
    try {
      kb.sig.addFunc(name, std::move(*args), *res);
    } catch (const SkError& e) {
      fail(diags, form, e.what());
    }
    return true;
  }

  if (head == "pred") {
    std::string name;
    if (form.items.size() != 3) {
      fail(diags, form, "pred takes a name and an argument sort list");
      return true;
    }
    if (!symbolArg(form, 1, diags, name) || !userName(form.items[1], name, diags)) return true;
    auto args = sortListArg(form.items[2], kb.sig, diags);
    if (!args) return true;
    try {
      kb.sig.addPred(name, std::move(*args));
    } catch (const SkError& e) {
      fail(diags, form, e.what());
    }
    return true;
  }

  if (head == "assume" || head == "goal") {
    std::string label;
    if (form.items.size() != 3) {
      fail(diags, form, head + " takes a label and a formula");
      return true;
    }
    if (!symbolArg(form, 1, diags, label) || !userName(form.items[1], label, diags)) return true;
    if (kb.findAssumption(label) || kb.findGoal(label)) {
      fail(diags, form.items[1], "duplicate label '" + label + "'");
      return true;
    }
    FormulaPtr f = parseFormula(form.items[2], kb.sig, diags);
    if (!f) return true;
    if (head == "assume")
      kb.assumptions.push_back({label, std::move(f), 5});
    else
      kb.goals.emplace_back(label, std::move(f));
    return true;
  }

  if (head == "strength") {
    std::string label;
    int level = 0;
    if (form.items.size() != 3 || !symbolArg(form, 1, diags, label) ||
        !intArg(form.items[2], diags, level))
      return true;
    if (!validStrength(level)) {
      fail(diags, form.items[2], "strength must be in [-5, 5]");
      return true;
    }
    for (Assumption& a : kb.assumptions) {
      if (a.label == label) {
        a.strength = level;
        return true;
      }
    }
    fail(diags, form.items[1], "strength names unknown assumption '" + label + "'");
    return true;
  }

  if (head == "option") {
    std::string name;
    if (form.items.size() < 3 || !symbolArg(form, 1, diags, name)) {
      if (form.items.size() < 3) fail(diags, form, "option takes a name and a value");
      return true;
    }
    std::string value;
    for (std::size_t i = 2; i < form.items.size(); ++i) {
      if (!form.items[i].isSymbol()) {
        fail(diags, form.items[i], "option values must be plain tokens");
        return true;
      }
      if (i > 2) value += " ";
      value += form.items[i].text;
    }
    kb.options.emplace_back(name, value);
    return true;
  }

  return false;
}

KBDocument parseKBText(const std::string& text, std::vector<Diagnostic>& diags) {
  KBDocument kb;
  std::vector<SExpr> forms = readSExprs(text, diags);
  for (const SExpr& form : forms) {
    if (!applyKBDirective(form, kb, diags)) {
      fail(diags, form,
           form.isList() && !form.items.empty() && form.items[0].isSymbol()
               ? "unknown directive '" + form.items[0].text + "'"
               : "expected a directive form");
    }
  }
  return kb;
}

KBDocument parseKBFile(const std::string& path, std::vector<Diagnostic>& diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diags.push_back({0, 0, "cannot read '" + path + "'"});
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseKBText(buf.str(), diags);
}

std::string serializeKB(const KBDocument& kb) {
  std::ostringstream os;
  const Signature& sig = kb.sig;
  for (std::size_t i = sig.builtinSortCount(); i < sig.sortCount(); ++i) {
    const SortDecl& s = sig.sort(static_cast<SortId>(i));
    os << "(sort " << s.name;
    if (s.parent != sig.rootSort()) os << " " << sig.sortName(s.parent);
    os << ")\n";
  }
  for (std::size_t i = sig.builtinConstCount(); i < sig.consts().size(); ++i) {
    const ConstDecl& c = sig.consts()[i];
    os << "(const " << c.name << " " << sig.sortName(c.sort) << ")\n";
  }
  for (std::size_t i = sig.builtinFuncCount(); i < sig.funcs().size(); ++i) {
    const FuncDecl& f = sig.funcs()[i];
    os << "(func " << f.name << " (";
    for (std::size_t j = 0; j < f.arg_sorts.size(); ++j)
      os << (j ? " " : "") << sig.sortName(f.arg_sorts[j]);
    os << ") " << sig.sortName(f.result_sort) << ")\n";
  }
  for (std::size_t i = sig.builtinPredCount(); i < sig.preds().size(); ++i) {
    const PredDecl& p = sig.preds()[i];
    os << "(pred " << p.name << " (";
    for (std::size_t j = 0; j < p.arg_sorts.size(); ++j)
      os << (j ? " " : "") << sig.sortName(p.arg_sorts[j]);
    os << "))\n";
  }
  for (const Assumption& a : kb.assumptions) {
    os << "(assume " << a.label << " " << writeFormula(a.formula, sig) << ")\n";
    if (a.strength != 5) os << "(strength " << a.label << " " << a.strength << ")\n";
  }
  for (const auto& [label, f] : kb.goals)
    os << "(goal " << label << " " << writeFormula(f, sig) << ")\n";
  for (const auto& [k, v] : kb.options) os << "(option " << k << " " << v << ")\n";
  return os.str();
}

}  // namespace sk
