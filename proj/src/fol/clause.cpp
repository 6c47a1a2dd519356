#include "fol/clause.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "core/signature.hpp"

namespace sk {

int compare(const Literal& a, const Literal& b) {
  if (a.positive != b.positive) return a.positive ? -1 : 1;
  if (int c = a.pred.compare(b.pred)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i])) return c;
  return 0;
}

int compare(const Clause& a, const Clause& b) {
  if (a.lits.size() != b.lits.size()) return a.lits.size() < b.lits.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.lits.size(); ++i)
    if (int c = compare(a.lits[i], b.lits[i])) return c;
  return 0;
}

int termWeight(const Term& t) {
  int w = 1;
  for (const Term& a : t.args) w += termWeight(a);
  return w;
}

int clauseWeight(const Clause& c) {
  int w = 0;
  for (const Literal& l : c.lits) {
    w += 1;
    for (const Term& a : l.args) w += termWeight(a);
  }
  return w;
}

namespace {

// Comparison that treats every variable as the same token, so literal
// order does not depend on the variable names about to be rewritten.
int compareTermBlind(const Term& a, const Term& b) {
  bool av = a.isVar(), bv = b.isVar();
  if (av && bv) return 0;
  if (av != bv) return av ? -1 : 1;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compareTermBlind(a.args[i], b.args[i])) return c;
  return 0;
}

int compareLitBlind(const Literal& a, const Literal& b) {
  if (a.positive != b.positive) return a.positive ? -1 : 1;
  if (int c = a.pred.compare(b.pred)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compareTermBlind(a.args[i], b.args[i])) return c;
  return 0;
}

void renameTermVars(Term& t, std::map<std::string, std::string>& names, int& next) {
  if (t.isVar()) {
    auto it = names.find(t.name);
    if (it == names.end()) it = names.emplace(t.name, "v$" + std::to_string(next++)).first;
    t.name = it->second;
    return;
  }
  for (Term& a : t.args) renameTermVars(a, names, next);
}

void renameClauseVars(Clause& c) {
  std::map<std::string, std::string> names;
  int next = 0;
  for (Literal& l : c.lits)
    for (Term& a : l.args) renameTermVars(a, names, next);
}

}  // namespace

Clause normalizeClause(Clause c) {
  std::stable_sort(c.lits.begin(), c.lits.end(),
                   [](const Literal& a, const Literal& b) { return compareLitBlind(a, b) < 0; });
  renameClauseVars(c);
  std::sort(c.lits.begin(), c.lits.end(), [](const Literal& a, const Literal& b) { return a < b; });
  c.lits.erase(std::unique(c.lits.begin(), c.lits.end()), c.lits.end());
  renameClauseVars(c);
  return c;
}

bool isTautology(const Clause& c) {
  for (const Literal& l : c.lits) {
    if (!l.positive) continue;
    Literal neg = l;
    neg.positive = false;
    for (const Literal& m : c.lits)
      if (compare(m, neg) == 0) return true;
  }
  return false;
}

std::string renderLiteral(const Literal& l) {
  std::ostringstream os;
  if (!l.positive) os << "(not ";
  if (l.args.empty()) {
    os << l.pred;
  } else {
    os << "(" << l.pred;
    for (const Term& a : l.args) os << " " << renderTerm(a);
    os << ")";
  }
  if (!l.positive) os << ")";
  return os.str();
}

std::string renderClause(const Clause& c) {
  if (c.lits.empty()) return "[]";
  std::ostringstream os;
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) os << " | ";
    os << renderLiteral(c.lits[i]);
  }
  return os.str();
}

}  // namespace sk
