#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/ast.hpp"
#include "core/signature.hpp"
#include "format/sexpr.hpp"

namespace sk {

struct Assumption {
  std::string label;
  FormulaPtr formula;
  int strength = 5;
};

// A knowledge-base file: declarations, labelled assumptions, labelled
// goals, and string-valued options.  Directives, one form each:
//   (sort Name [Parent]) (const name Sort) (func name (S...) R)
//   (pred name (S...)) (assume label f) (strength label n)
//   (goal label f) (option name value...)
struct KBDocument {
  Signature sig;
  std::vector<Assumption> assumptions;
  std::vector<std::pair<std::string, FormulaPtr>> goals;
  std::vector<std::pair<std::string, std::string>> options;

  const Assumption* findAssumption(const std::string& label) const;
  FormulaPtr findGoal(const std::string& label) const;
  std::optional<std::string> option(const std::string& name) const;
};

// Both parsers aggregate diagnostics across the whole input instead of
// stopping at the first error; a document is usable iff diags is empty.
KBDocument parseKBText(const std::string& text, std::vector<Diagnostic>& diags);
KBDocument parseKBFile(const std::string& path, std::vector<Diagnostic>& diags);
std::string serializeKB(const KBDocument& kb);

// Shared by KB and scenario loading: applies one declaration/assumption
// directive to an under-construction document.  Returns false when the
// head symbol is not a KB directive.
bool applyKBDirective(const SExpr& form, KBDocument& kb, std::vector<Diagnostic>& diags);

// Strength levels live in [-5, 5].
bool validStrength(int s);

}  // namespace sk
