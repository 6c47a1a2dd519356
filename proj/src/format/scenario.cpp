#include "format/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "format/formula_io.hpp"

namespace sk {

namespace {

void fail(std::vector<Diagnostic>& diags, const SExpr& at, std::string msg) {
  diags.push_back({at.line, at.col, std::move(msg)});
}

bool parseInt(const SExpr& e, std::vector<Diagnostic>& diags, int& out) {
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

// Moments named t<digits> carry their position; used for the percept-order
// check only when both sides are indexed.
bool momentIndex(const Term& t, long& out) {
  if (!t.isConst() || t.name.size() < 2 || t.name[0] != 't') return false;
  for (std::size_t i = 1; i < t.name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t.name[i]))) return false;
  out = std::stol(t.name.substr(1));
  return true;
}

bool parseHoleList(const SExpr& e, Signature& sig, std::vector<Diagnostic>& diags,
                   std::vector<std::pair<std::string, SortId>>& out) {
  if (!e.isList()) {
    fail(diags, e, "expected a hole list ((name Sort) ...)");
    return false;
  }
  for (const SExpr& h : e.items) {
    if (!h.isList() || h.items.size() != 2 || !h.items[0].isSymbol() || !h.items[1].isSymbol()) {
      fail(diags, h, "hole must be (name Sort)");
      return false;
    }
    auto s = sig.findSort(h.items[1].text);
    if (!s) {
      fail(diags, h.items[1], "unknown sort '" + h.items[1].text + "'");
      return false;
    }
    if (Signature::isReservedName(h.items[0].text)) {
      fail(diags, h.items[0], "hole name '" + h.items[0].text + "' is reserved ('$')");
      return false;
    }
    out.emplace_back(h.items[0].text, *s);
  }
  return true;
}

}  // namespace

ScenarioScript parseScenarioText(const std::string& text, std::vector<Diagnostic>& diags) {
  ScenarioScript sc;
  std::vector<SExpr> forms = readSExprs(text, diags);
  long last_percept_time = -1;

  for (const SExpr& form : forms) {
    if (applyKBDirective(form, sc.kb, diags)) continue;
    if (!form.isList() || form.items.empty() || !form.items[0].isSymbol()) {
      fail(diags, form, "expected a directive form");
      continue;
    }
    const std::string& head = form.items[0].text;

    if (head == "learner") {
      if (form.items.size() != 2 || !form.items[1].isSymbol()) {
        fail(diags, form, "learner takes one agent name");
        continue;
      }
      sc.learner = form.items[1].text;
      continue;
    }

    if (head == "percept") {
      if (form.items.size() != 4 && form.items.size() != 5) {
        fail(diags, form, "percept takes agent, time, formula, and optional strength");
        continue;
      }
      bool ok = true;
      PerceptEvent ev;
      ev.agent = parseTerm(form.items[1], sc.kb.sig, diags, {}, {}, ok);
      ev.time = parseTerm(form.items[2], sc.kb.sig, diags, {}, {}, ok);
      ev.formula = parseFormula(form.items[3], sc.kb.sig, diags);
      if (form.items.size() == 5) {
        if (!parseInt(form.items[4], diags, ev.strength)) continue;
        if (!validStrength(ev.strength)) {
          fail(diags, form.items[4], "strength must be in [-5, 5]");
          continue;
        }
      }
      if (!ok || !ev.formula) continue;
      long idx;
      if (momentIndex(ev.time, idx)) {
        if (idx < last_percept_time) {
          fail(diags, form.items[2], "percept times must be nondecreasing");
          continue;
        }
        last_percept_time = idx;
      }
      sc.script.push_back({ScenarioScript::Action::Kind::Percept, std::move(ev)});
      continue;
    }

    if (head == "step") {
      if (form.items.size() != 1) {
        fail(diags, form, "step takes no arguments");
        continue;
      }
      sc.script.push_back({ScenarioScript::Action::Kind::Step, {}});
      continue;
    }

    if (head == "interest" || head == "interest-template") {
      bool tmpl = head == "interest-template";
      std::size_t want = tmpl ? 5u : 4u;
      if (form.items.size() != want) {
        fail(diags, form,
             tmpl ? "interest-template takes priority, label, holes, and a formula"
                  : "interest takes priority, label, and a formula");
        continue;
      }
      InterestSpec spec;
      if (!parseInt(form.items[1], diags, spec.priority)) continue;
      if (!form.items[2].isSymbol()) {
        fail(diags, form.items[2], "expected a label");
        continue;
      }
      spec.label = form.items[2].text;
      std::map<std::string, SortId> env;
      if (tmpl) {
        if (!parseHoleList(form.items[3], sc.kb.sig, diags, spec.holes)) continue;
        for (const auto& [n, s] : spec.holes) env[n] = s;
      }
      spec.formula = parseFormula(form.items[tmpl ? 4 : 3], sc.kb.sig, diags, {}, env);
      if (!spec.formula) continue;
      sc.interests.push_back(std::move(spec));
      continue;
    }

    if (head == "world-truth") {
      if (form.items.size() != 2) {
        fail(diags, form, "world-truth takes one formula");
        continue;
      }
      FormulaPtr f = parseFormula(form.items[1], sc.kb.sig, diags);
      if (f) sc.world_truth.push_back(std::move(f));
      continue;
    }

    if (head == "expect") {
      if (form.items.size() != 4) {
        fail(diags, form, "expect takes label, level, and a formula");
        continue;
      }
      Expectation ex;
      if (!form.items[1].isSymbol()) {
        fail(diags, form.items[1], "expected a label");
        continue;
      }
      ex.label = form.items[1].text;
      if (!parseInt(form.items[2], diags, ex.min_strength)) continue;
      if (!validStrength(ex.min_strength)) {
        fail(diags, form.items[2], "level must be in [-5, 5]");
        continue;
      }
      ex.formula = parseFormula(form.items[3], sc.kb.sig, diags);
      if (!ex.formula) continue;
      sc.expectations.push_back(std::move(ex));
      continue;
    }

    fail(diags, form, "unknown directive '" + head + "'");
  }

  if (sc.learner.empty() && !sc.script.empty())
    diags.push_back({0, 0, "scenario has percepts but no (learner ...) directive"});
  return sc;
}

ScenarioScript parseScenarioFile(const std::string& path, std::vector<Diagnostic>& diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diags.push_back({0, 0, "cannot read '" + path + "'"});
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseScenarioText(buf.str(), diags);
}

}  // namespace sk
