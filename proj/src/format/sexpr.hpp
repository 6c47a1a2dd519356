#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sk {

struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;
};

std::string renderDiag(const Diagnostic& d);

// Parenthesized prefix syntax.  A node is either a symbol token or a list.
// Comments run from ';' to end of line.  Columns count code points, not
// bytes, so multi-byte operator aliases report sane positions.
struct SExpr {
  enum class Kind { Symbol, List };
  Kind kind = Kind::Symbol;
  std::string text;         // Symbol only
  std::vector<SExpr> items  // List only
      ;
  int line = 0;
  int col = 0;

  bool isSymbol() const { return kind == Kind::Symbol; }
  bool isList() const { return kind == Kind::List; }
  bool isSymbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
};

// Reads every top-level form.  Malformed input produces diagnostics and as
// many recovered forms as possible; never throws.
std::vector<SExpr> readSExprs(std::string_view input, std::vector<Diagnostic>& diags);

}  // namespace sk
