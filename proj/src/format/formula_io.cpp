#include "format/formula_io.hpp"

#include <sstream>

namespace sk {

namespace {

struct Ctx {
  Signature& sig;
  std::vector<Diagnostic>& diags;
  const ParseOptions& opts;
};

void fail(Ctx& cx, const SExpr& at, std::string msg) {
  cx.diags.push_back({at.line, at.col, std::move(msg)});
}

Term parseTermRec(Ctx& cx, const SExpr& e, const std::map<std::string, SortId>& env, bool& ok) {
  if (e.isSymbol()) {
    auto it = env.find(e.text);
    if (it != env.end()) return Term::var(e.text, it->second);
    if (const ConstDecl* c = cx.sig.findConst(e.text)) return Term::constant(e.text, c->sort);
    if (cx.opts.implicit_decls) {
      cx.sig.addConst(e.text, cx.sig.rootSort());
      return Term::constant(e.text, cx.sig.rootSort());
    }
    fail(cx, e, "unknown constant '" + e.text + "'");
    ok = false;
    return Term::constant(e.text, kNoSort);
  }
  if (e.items.empty() || !e.items[0].isSymbol()) {
    fail(cx, e, "expected a function application");
    ok = false;
    return Term::constant("?", kNoSort);
  }
  const std::string& fn = e.items[0].text;
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    args.push_back(parseTermRec(cx, e.items[i], env, ok));
  const FuncDecl* fd = cx.sig.findFunc(fn);
  if (!fd) {
    if (cx.opts.implicit_decls) {
      cx.sig.addFunc(fn, std::vector<SortId>(args.size(), cx.sig.rootSort()), cx.sig.rootSort());
      fd = cx.sig.findFunc(fn);
    } else {
      fail(cx, e.items[0], "unknown function '" + fn + "'");
      ok = false;
      return Term::app(fn, kNoSort, std::move(args));
    }
  }
  if (fd->arg_sorts.size() != args.size()) {
    std::ostringstream os;
    os << "function '" << fn << "' expects " << fd->arg_sorts.size() << " arguments, got "
       << args.size();
    fail(cx, e, os.str());
    ok = false;
  } else {
    for (std::size_t i = 0; i < args.size(); ++i) {
      SortId have = cx.sig.termSort(args[i]);
      if (have != kNoSort && fd->arg_sorts[i] != kNoSort && !cx.sig.subsort(have, fd->arg_sorts[i])) {
        fail(cx, e.items[i + 1],
             "argument " + std::to_string(i + 1) + " of '" + fn + "' expects sort " +
                 cx.sig.sortName(fd->arg_sorts[i]) + ", got " + cx.sig.sortName(have));
        ok = false;
      }
    }
  }
  return Term::app(fn, fd->result_sort, std::move(args));
}

// Modal heads and the argument shapes they take.  The four-argument S form
// names both speaker and hearer; the three-argument form is public.
struct ModalSpec {
  Formula::Kind kind;
  std::size_t index_count;  // terms before the payload formula
};

bool lookupModal(const std::string& head, std::size_t item_count, ModalSpec& out) {
  if (head == "K") { out = {Formula::Kind::Knows, 2}; return true; }
  if (head == "B") { out = {Formula::Kind::Believes, 2}; return true; }
  if (head == "P") { out = {Formula::Kind::Perceives, 2}; return true; }
  if (head == "C") { out = {Formula::Kind::Common, 1}; return true; }
  if (head == "D") { out = {Formula::Kind::Desires, 2}; return true; }
  if (head == "I") { out = {Formula::Kind::Intends, 2}; return true; }
  if (head == "S") {
    if (item_count == 5) { out = {Formula::Kind::Says, 3}; return true; }
    out = {Formula::Kind::SaysPub, 2};
    return true;
  }
  return false;
}

FormulaPtr parseRec(Ctx& cx, const SExpr& e, std::map<std::string, SortId> env);

FormulaPtr parseQuant(Ctx& cx, const SExpr& e, Formula::Kind kind,
                      std::map<std::string, SortId> env) {
  if (e.items.size() != 3) {
    fail(cx, e, std::string(kind == Formula::Kind::Forall ? "forall" : "exists") +
                    " takes a binder and a body");
    return nullptr;
  }
  const SExpr& binder = e.items[1];
  std::string var;
  SortId sort = cx.sig.rootSort();
  if (binder.isSymbol()) {
    var = binder.text;
  } else if (binder.items.size() == 1 && binder.items[0].isSymbol()) {
    var = binder.items[0].text;
  } else if (binder.items.size() == 2 && binder.items[0].isSymbol() && binder.items[1].isSymbol()) {
    var = binder.items[0].text;
    auto s = cx.sig.findSort(binder.items[1].text);
    if (!s) {
      fail(cx, binder.items[1], "unknown sort '" + binder.items[1].text + "'");
      return nullptr;
    }
    sort = *s;
  } else {
    fail(cx, binder, "binder must be a name or (name Sort)");
    return nullptr;
  }
  if (var.find('$') != std::string::npos) {
    fail(cx, binder, "variable name '" + var + "' is reserved ('$')");
    return nullptr;
  }
  env[var] = sort;
  FormulaPtr body = parseRec(cx, e.items[2], std::move(env));
  if (!body) return nullptr;
  return kind == Formula::Kind::Forall ? mkForall(var, sort, std::move(body))
                                       : mkExists(var, sort, std::move(body));
}

// The deontic operator's last argument must be a (possibly negated)
// happens literal over an action term.
bool checkHappensLiteral(Ctx& cx, const SExpr& at, const FormulaPtr& lit) {
  const Formula* f = lit.get();
  if (f->kind == Formula::Kind::Not) f = f->sub[0].get();
  if (f->kind == Formula::Kind::Atom && f->name == "happens") return true;
  fail(cx, at, "O takes a happens literal as its final argument");
  return false;
}

FormulaPtr parseAtomOrModal(Ctx& cx, const SExpr& e, const std::map<std::string, SortId>& env) {
  const std::string& head = e.items[0].text;

  ModalSpec ms;
  if (head == "O") {
    if (e.items.size() != 5) {
      fail(cx, e, "O takes agent, time, a proposition, and a happens literal");
      return nullptr;
    }
    bool ok = true;
    Term agent = parseTermRec(cx, e.items[1], env, ok);
    Term time = parseTermRec(cx, e.items[2], env, ok);
    FormulaPtr prop = parseRec(cx, e.items[3], env);
    FormulaPtr lit = parseRec(cx, e.items[4], env);
    if (!ok || !prop || !lit) return nullptr;
    if (!checkHappensLiteral(cx, e.items[4], lit)) return nullptr;
    return mkOught(std::move(agent), std::move(time), std::move(prop), std::move(lit));
  }

  if (lookupModal(head, e.items.size(), ms)) {
    if (e.items.size() != ms.index_count + 2) {
      fail(cx, e, "operator '" + head + "' applied to the wrong number of arguments");
      return nullptr;
    }
    bool ok = true;
    std::vector<Term> idx;
    for (std::size_t i = 0; i < ms.index_count; ++i)
      idx.push_back(parseTermRec(cx, e.items[1 + i], env, ok));
    FormulaPtr body = parseRec(cx, e.items[1 + ms.index_count], env);
    if (!ok || !body) return nullptr;
    return mkModal(ms.kind, std::move(idx), std::move(body));
  }

  // Plain atom.
  if (head.find('$') != std::string::npos && !cx.opts.implicit_decls) {
    fail(cx, e.items[0], "predicate name '" + head + "' is reserved ('$')");
    return nullptr;
  }
  bool ok = true;
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    args.push_back(parseTermRec(cx, e.items[i], env, ok));
  const PredDecl* pd = cx.sig.findPred(head);
  if (!pd) {
    if (cx.opts.implicit_decls) {
      cx.sig.addPred(head, std::vector<SortId>(args.size(), cx.sig.rootSort()));
      pd = cx.sig.findPred(head);
    } else {
      fail(cx, e.items[0], "unknown predicate '" + head + "'");
      return nullptr;
    }
  }
  if (pd->arg_sorts.size() != args.size()) {
    std::ostringstream os;
    os << "predicate '" << head << "' expects " << pd->arg_sorts.size() << " arguments, got "
       << args.size();
    fail(cx, e, os.str());
    return nullptr;
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    SortId have = cx.sig.termSort(args[i]);
    if (have != kNoSort && !cx.sig.subsort(have, pd->arg_sorts[i])) {
      fail(cx, e.items[i + 1],
           "argument " + std::to_string(i + 1) + " of '" + head + "' expects sort " +
               cx.sig.sortName(pd->arg_sorts[i]) + ", got " + cx.sig.sortName(have));
      ok = false;
    }
  }
  if (!ok) return nullptr;
  return mkAtom(head, std::move(args));
}

FormulaPtr parseRec(Ctx& cx, const SExpr& e, std::map<std::string, SortId> env) {
  if (e.isSymbol()) {
    // Bare symbol: zero-ary atom.
    if (env.count(e.text)) {
      fail(cx, e, "variable '" + e.text + "' used as a formula");
      return nullptr;
    }
    const PredDecl* pd = cx.sig.findPred(e.text);
    if (!pd) {
      if (cx.opts.implicit_decls) {
        cx.sig.addPred(e.text, {});
      } else {
        fail(cx, e, "unknown predicate '" + e.text + "'");
        return nullptr;
      }
    } else if (!pd->arg_sorts.empty()) {
      fail(cx, e, "predicate '" + e.text + "' expects arguments");
      return nullptr;
    }
    return mkAtom(e.text, {});
  }
  if (e.items.empty()) {
    fail(cx, e, "empty form");
    return nullptr;
  }
  if (!e.items[0].isSymbol()) {
    fail(cx, e.items[0], "operator or predicate name expected");
    return nullptr;
  }
  const std::string& head = e.items[0].text;

  auto binary = [&](Formula::Kind k) -> FormulaPtr {
    if (e.items.size() < 3) {
      fail(cx, e, "'" + head + "' takes at least two arguments");
      return nullptr;
    }
    if ((k == Formula::Kind::Implies || k == Formula::Kind::Iff) && e.items.size() != 3) {
      fail(cx, e, "'" + head + "' takes exactly two arguments");
      return nullptr;
    }
    FormulaPtr acc = parseRec(cx, e.items[1], env);
    if (!acc) return nullptr;
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      FormulaPtr rhs = parseRec(cx, e.items[i], env);
      if (!rhs) return nullptr;
      auto g = std::make_shared<Formula>();
      g->kind = k;
      g->sub = {std::move(acc), std::move(rhs)};
      acc = std::move(g);
    }
    return acc;
  };

  if (head == "and" || head == "∧") return binary(Formula::Kind::And);
  if (head == "or" || head == "∨") return binary(Formula::Kind::Or);
  if (head == "implies" || head == "=>" || head == "→") return binary(Formula::Kind::Implies);
  if (head == "iff" || head == "<=>" || head == "↔") return binary(Formula::Kind::Iff);
  if (head == "not" || head == "¬") {
    if (e.items.size() != 2) {
      fail(cx, e, "'not' takes exactly one argument");
      return nullptr;
    }
    FormulaPtr body = parseRec(cx, e.items[1], env);
    if (!body) return nullptr;
    return mkNot(std::move(body));
  }
  if (head == "forall" || head == "∀") return parseQuant(cx, e, Formula::Kind::Forall, std::move(env));
  if (head == "exists" || head == "∃") return parseQuant(cx, e, Formula::Kind::Exists, std::move(env));

  return parseAtomOrModal(cx, e, env);
}

}  // namespace

FormulaPtr parseFormula(const SExpr& e, Signature& sig, std::vector<Diagnostic>& diags,
                        const ParseOptions& opts, const std::map<std::string, SortId>& env) {
  Ctx cx{sig, diags, opts};
  return parseRec(cx, e, env);
}

FormulaPtr parseFormula(const std::string& text, Signature& sig, std::vector<Diagnostic>& diags,
                        const ParseOptions& opts) {
  std::vector<SExpr> forms = readSExprs(text, diags);
  if (forms.empty()) {
    diags.push_back({1, 1, "no formula in input"});
    return nullptr;
  }
  if (forms.size() > 1) {
    diags.push_back({forms[1].line, forms[1].col, "trailing input after formula"});
    return nullptr;
  }
  return parseFormula(forms[0], sig, diags, opts);
}

Term parseTerm(const SExpr& e, Signature& sig, std::vector<Diagnostic>& diags,
               const ParseOptions& opts, const std::map<std::string, SortId>& env, bool& ok) {
  Ctx cx{sig, diags, opts};
  return parseTermRec(cx, e, env, ok);
}

std::string writeTerm(const Term& t) { return renderTerm(t); }

namespace {

void writeRec(std::ostringstream& os, const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      if (f->terms.empty()) {
        os << f->name;
        return;
      }
      os << "(" << f->name;
      for (const Term& t : f->terms) os << " " << renderTerm(t);
      os << ")";
      return;
    case Formula::Kind::Not:
      os << "(not ";
      writeRec(os, f->sub[0], sig);
      os << ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* name = f->kind == Formula::Kind::And       ? "and"
                         : f->kind == Formula::Kind::Or      ? "or"
                         : f->kind == Formula::Kind::Implies ? "implies"
                                                             : "iff";
      os << "(" << name << " ";
      writeRec(os, f->sub[0], sig);
      os << " ";
      writeRec(os, f->sub[1], sig);
      os << ")";
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      os << "(" << (f->kind == Formula::Kind::Forall ? "forall" : "exists") << " ";
      if (f->var_sort == kNoSort || sig.sort(f->var_sort).name == "$i") {
        os << "(" << f->name << ")";
      } else {
        os << "(" << f->name << " " << sig.sortName(f->var_sort) << ")";
      }
      os << " ";
      writeRec(os, f->sub[0], sig);
      os << ")";
      return;
    }
    case Formula::Kind::Ought:
      os << "(O " << renderTerm(f->terms[0]) << " " << renderTerm(f->terms[1]) << " ";
      writeRec(os, f->sub[0], sig);
      os << " ";
      writeRec(os, f->sub[1], sig);
      os << ")";
      return;
    default: {
      os << "(" << kindName(f->kind);
      for (const Term& t : f->terms) os << " " << renderTerm(t);
      os << " ";
      writeRec(os, f->sub[0], sig);
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string writeFormula(const FormulaPtr& f, const Signature& sig) {
  std::ostringstream os;
  writeRec(os, f, sig);
  return os.str();
}

}  // namespace sk
