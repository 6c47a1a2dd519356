#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/ast.hpp"
#include "core/signature.hpp"
#include "format/sexpr.hpp"

namespace sk {

struct ParseOptions {
  // When set, undeclared predicates/constants are adopted into the
  // signature at the root sort instead of reported.
  bool implicit_decls = false;
};

// Parses one formula from prefix notation.  Unicode aliases for the
// connectives and quantifiers are accepted on input only.  Symbols bound by
// an enclosing quantifier (or an entry in `env`) parse as variables;
// everything else is a constant.  Returns nullptr and appends diagnostics
// on failure; a returned formula is well sorted.
FormulaPtr parseFormula(const SExpr& e, Signature& sig, std::vector<Diagnostic>& diags,
                        const ParseOptions& opts = {},
                        const std::map<std::string, SortId>& env = {});

FormulaPtr parseFormula(const std::string& text, Signature& sig, std::vector<Diagnostic>& diags,
                        const ParseOptions& opts = {});

// Parses a term in the same surface syntax.
Term parseTerm(const SExpr& e, Signature& sig, std::vector<Diagnostic>& diags,
               const ParseOptions& opts, const std::map<std::string, SortId>& env, bool& ok);

// Canonical serialization: ASCII operator names, binary connectives, one
// space between items.  parse(write(f)) reproduces f for closed formulas.
std::string writeFormula(const FormulaPtr& f, const Signature& sig);
std::string writeTerm(const Term& t);

}  // namespace sk
