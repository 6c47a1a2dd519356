#include "core/ast.hpp"

#include <algorithm>

namespace sk {

Term Term::var(std::string name, SortId sort) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  t.sort = sort;
  return t;
}

Term Term::constant(std::string name, SortId sort) {
  Term t;
  t.kind = Kind::Const;
  t.name = std::move(name);
  t.sort = sort;
  return t;
}

Term Term::app(std::string fn, SortId result_sort, std::vector<Term> args) {
  Term t;
  t.kind = Kind::App;
  t.name = std::move(fn);
  t.sort = result_sort;
  t.args = std::move(args);
  return t;
}

int compare(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.sort != b.sort) return a.sort < b.sort ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i])) return c;
  return 0;
}

bool isModal(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Perceives:
    case Formula::Kind::Knows:
    case Formula::Kind::Believes:
    case Formula::Kind::Common:
    case Formula::Kind::Says:
    case Formula::Kind::SaysPub:
    case Formula::Kind::Desires:
    case Formula::Kind::Intends:
    case Formula::Kind::Ought:
      return true;
    default:
      return false;
  }
}

bool isQuantifier(Formula::Kind k) {
  return k == Formula::Kind::Forall || k == Formula::Kind::Exists;
}

bool isConnective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return true;
    default:
      return false;
  }
}

const char* kindName(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Atom: return "atom";
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Implies: return "implies";
    case Formula::Kind::Iff: return "iff";
    case Formula::Kind::Forall: return "forall";
    case Formula::Kind::Exists: return "exists";
    case Formula::Kind::Perceives: return "P";
    case Formula::Kind::Knows: return "K";
    case Formula::Kind::Believes: return "B";
    case Formula::Kind::Common: return "C";
    case Formula::Kind::Says: return "S";
    case Formula::Kind::SaysPub: return "S";
    case Formula::Kind::Desires: return "D";
    case Formula::Kind::Intends: return "I";
    case Formula::Kind::Ought: return "O";
  }
  return "?";
}

FormulaPtr mkAtom(std::string pred, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->name = std::move(pred);
  f->terms = std::move(args);
  return f;
}

static FormulaPtr mkUnary(Formula::Kind k, FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->sub = {std::move(a)};
  return f;
}

static FormulaPtr mkBinary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->sub = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr mkNot(FormulaPtr f) { return mkUnary(Formula::Kind::Not, std::move(f)); }
FormulaPtr mkAnd(FormulaPtr a, FormulaPtr b) { return mkBinary(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr mkOr(FormulaPtr a, FormulaPtr b) { return mkBinary(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr mkImplies(FormulaPtr a, FormulaPtr b) { return mkBinary(Formula::Kind::Implies, std::move(a), std::move(b)); }
FormulaPtr mkIff(FormulaPtr a, FormulaPtr b) { return mkBinary(Formula::Kind::Iff, std::move(a), std::move(b)); }

static FormulaPtr mkQuant(Formula::Kind k, std::string var, SortId sort, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(var);
  f->var_sort = sort;
  f->sub = {std::move(body)};
  return f;
}

FormulaPtr mkForall(std::string var, SortId sort, FormulaPtr body) {
  return mkQuant(Formula::Kind::Forall, std::move(var), sort, std::move(body));
}
FormulaPtr mkExists(std::string var, SortId sort, FormulaPtr body) {
  return mkQuant(Formula::Kind::Exists, std::move(var), sort, std::move(body));
}

FormulaPtr mkModal(Formula::Kind k, std::vector<Term> idx, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->terms = std::move(idx);
  f->sub = {std::move(body)};
  return f;
}

FormulaPtr mkOught(Term agent, Term time, FormulaPtr prop, FormulaPtr happens_lit) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Ought;
  f->terms = {std::move(agent), std::move(time)};
  f->sub = {std::move(prop), std::move(happens_lit)};
  return f;
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.var_sort != b.var_sort) return a.var_sort < b.var_sort ? -1 : 1;
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (int c = compare(a.terms[i], b.terms[i])) return c;
  if (a.sub.size() != b.sub.size()) return a.sub.size() < b.sub.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.sub.size(); ++i)
    if (int c = compare(*a.sub[i], *b.sub[i])) return c;
  return 0;
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  return compare(*a, *b);
}

namespace {

void collectTermVars(const Term& t, std::vector<std::pair<std::string, SortId>>& out,
                     const std::vector<std::string>& bound) {
  if (t.isVar()) {
    if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) return;
    for (const auto& [n, s] : out)
      if (n == t.name) return;
    out.emplace_back(t.name, t.sort);
    return;
  }
  for (const Term& a : t.args) collectTermVars(a, out, bound);
}

void collectFreeVars(const FormulaPtr& f, std::vector<std::pair<std::string, SortId>>& out,
                     std::vector<std::string>& bound) {
  for (const Term& t : f->terms) collectTermVars(t, out, bound);
  if (isQuantifier(f->kind)) {
    bound.push_back(f->name);
    collectFreeVars(f->sub[0], out, bound);
    bound.pop_back();
    return;
  }
  for (const FormulaPtr& s : f->sub) collectFreeVars(s, out, bound);
}

}  // namespace

std::vector<std::pair<std::string, SortId>> freeVars(const FormulaPtr& f) {
  std::vector<std::pair<std::string, SortId>> out;
  std::vector<std::string> bound;
  collectFreeVars(f, out, bound);
  return out;
}

std::vector<std::pair<std::string, SortId>> freeVars(const Term& t) {
  std::vector<std::pair<std::string, SortId>> out;
  std::vector<std::string> bound;
  collectTermVars(t, out, bound);
  return out;
}

bool isClosed(const FormulaPtr& f) { return freeVars(f).empty(); }

int modalDepth(const FormulaPtr& f) {
  int inner = 0;
  for (const FormulaPtr& s : f->sub) inner = std::max(inner, modalDepth(s));
  return isModal(f->kind) ? inner + 1 : inner;
}

void forEachSubformula(const FormulaPtr& f, const std::function<void(const FormulaPtr&)>& fn) {
  fn(f);
  for (const FormulaPtr& s : f->sub) forEachSubformula(s, fn);
}

namespace {
bool termIsGround(const Term& t) {
  if (t.isVar()) return false;
  for (const Term& a : t.args)
    if (!termIsGround(a)) return false;
  return true;
}

void collectGroundTerms(const Term& t, std::vector<Term>& out) {
  if (termIsGround(t)) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  for (const Term& a : t.args) collectGroundTerms(a, out);
}
}  // namespace

std::vector<Term> groundTerms(const FormulaPtr& f) {
  std::vector<Term> out;
  forEachSubformula(f, [&](const FormulaPtr& g) {
    for (const Term& t : g->terms) collectGroundTerms(t, out);
  });
  return out;
}

}  // namespace sk
