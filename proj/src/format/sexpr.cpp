#include "format/sexpr.hpp"

#include <sstream>

namespace sk {

std::string renderDiag(const Diagnostic& d) {
  std::ostringstream os;
  os << d.line << ":" << d.col << ": " << d.message;
  return os.str();
}

namespace {

struct Lexer {
  std::string_view in;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= in.size(); }
  char peek() const { return in[pos]; }

  void advance() {
    char c = in[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col;
    }
  }

  void skipSpace() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }
};

bool isDelim(char c) {
  return c == '(' || c == ')' || c == ';' || c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

SExpr readForm(Lexer& lx, std::vector<Diagnostic>& diags, bool& ok);

SExpr readList(Lexer& lx, std::vector<Diagnostic>& diags, bool& ok) {
  SExpr list;
  list.kind = SExpr::Kind::List;
  list.line = lx.line;
  list.col = lx.col;
  lx.advance();  // '('
  while (true) {
    lx.skipSpace();
    if (lx.eof()) {
      diags.push_back({list.line, list.col, "unterminated list"});
      ok = false;
      return list;
    }
    if (lx.peek() == ')') {
      lx.advance();
      return list;
    }
    bool innerOk = true;
    list.items.push_back(readForm(lx, diags, innerOk));
    if (!innerOk) ok = false;
  }
}

SExpr readForm(Lexer& lx, std::vector<Diagnostic>& diags, bool& ok) {
  if (lx.peek() == '(') return readList(lx, diags, ok);
  if (lx.peek() == ')') {
    diags.push_back({lx.line, lx.col, "unexpected ')'"});
    ok = false;
    lx.advance();
    SExpr bad;
    bad.line = lx.line;
    bad.col = lx.col;
    return bad;
  }
  SExpr sym;
  sym.kind = SExpr::Kind::Symbol;
  sym.line = lx.line;
  sym.col = lx.col;
  std::size_t start = lx.pos;
  while (!lx.eof() && !isDelim(lx.peek())) lx.advance();
  sym.text = std::string(lx.in.substr(start, lx.pos - start));
  return sym;
}

}  // namespace

std::vector<SExpr> readSExprs(std::string_view input, std::vector<Diagnostic>& diags) {
  Lexer lx{input};
  std::vector<SExpr> forms;
  while (true) {
    lx.skipSpace();
    if (lx.eof()) break;
    bool ok = true;
    SExpr form = readForm(lx, diags, ok);
    if (ok) {
      forms.push_back(std::move(form));
    } else if (form.kind == SExpr::Kind::List && !form.items.empty()) {
      // Keep a recovered prefix so later diagnostics still have context.
      forms.push_back(std::move(form));
    }
  }
  return forms;
}

}  // namespace sk
