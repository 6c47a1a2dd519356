#pragma once

#include <string>
#include <vector>

#include "core/ast.hpp"

namespace sk {

struct Literal {
  bool positive = true;
  std::string pred;
  std::vector<Term> args;
};

int compare(const Literal& a, const Literal& b);
inline bool operator==(const Literal& a, const Literal& b) { return compare(a, b) == 0; }
inline bool operator<(const Literal& a, const Literal& b) { return compare(a, b) < 0; }

// Literals are kept sorted and deduplicated; variables are renamed to
// v$0, v$1, ... in first-occurrence order whenever a clause is normalized,
// so structurally equal clauses compare equal.
struct Clause {
  std::vector<Literal> lits;

  bool empty() const { return lits.empty(); }
};

int compare(const Clause& a, const Clause& b);
inline bool operator==(const Clause& a, const Clause& b) { return compare(a, b) == 0; }
inline bool operator<(const Clause& a, const Clause& b) { return compare(a, b) < 0; }

// Symbol-count weight: every variable, constant, function, and predicate
// occurrence counts one.
int termWeight(const Term& t);
int clauseWeight(const Clause& c);

// Sorts, dedupes, renames variables canonically, in that order.
Clause normalizeClause(Clause c);

// True when the clause contains a literal and its exact complement.
bool isTautology(const Clause& c);

std::string renderLiteral(const Literal& l);
std::string renderClause(const Clause& c);

}  // namespace sk
