#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/ast.hpp"
#include "fol/clause.hpp"

namespace sk::testoracle {

// Truth-table machinery for the propositional fragment (zero-ary atoms,
// extensional connectives only).  Independent of the prover pipeline.

inline void propAtomsRec(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Formula::Kind::Atom) {
    out.insert(f->name);
    return;
  }
  for (const FormulaPtr& s : f->sub) propAtomsRec(s, out);
}

inline std::vector<std::string> propAtoms(const FormulaPtr& f) {
  std::set<std::string> s;
  propAtomsRec(f, s);
  return {s.begin(), s.end()};
}

inline bool evalProp(const FormulaPtr& f, const std::map<std::string, bool>& val) {
  switch (f->kind) {
    case Formula::Kind::Atom: return val.at(f->name);
    case Formula::Kind::Not: return !evalProp(f->sub[0], val);
    case Formula::Kind::And: return evalProp(f->sub[0], val) && evalProp(f->sub[1], val);
    case Formula::Kind::Or: return evalProp(f->sub[0], val) || evalProp(f->sub[1], val);
    case Formula::Kind::Implies: return !evalProp(f->sub[0], val) || evalProp(f->sub[1], val);
    case Formula::Kind::Iff: return evalProp(f->sub[0], val) == evalProp(f->sub[1], val);
    default: throw SkError("evalProp: not a propositional formula");
  }
}

template <typename Fn>
bool forAllAssignments(const std::vector<std::string>& atoms, Fn&& holds) {
  std::size_t n = atoms.size();
  for (std::size_t bits = 0; bits < (1u << n); ++bits) {
    std::map<std::string, bool> val;
    for (std::size_t i = 0; i < n; ++i) val[atoms[i]] = (bits >> i) & 1;
    if (!holds(val)) return false;
  }
  return true;
}

inline bool propValid(const FormulaPtr& f) {
  return forAllAssignments(propAtoms(f),
                           [&](const std::map<std::string, bool>& v) { return evalProp(f, v); });
}

inline bool propSatisfiable(const FormulaPtr& f) {
  return !forAllAssignments(propAtoms(f),
                            [&](const std::map<std::string, bool>& v) { return !evalProp(f, v); });
}

// Satisfiability of a ground zero-ary clause set, by enumeration.
inline bool clausesSatisfiable(const std::vector<Clause>& clauses) {
  std::set<std::string> atomSet;
  for (const Clause& c : clauses)
    for (const Literal& l : c.lits) atomSet.insert(l.pred);
  std::vector<std::string> atoms(atomSet.begin(), atomSet.end());
  bool unsat = forAllAssignments(atoms, [&](const std::map<std::string, bool>& v) {
    for (const Clause& c : clauses) {
      bool sat = false;
      for (const Literal& l : c.lits)
        if (v.at(l.pred) == l.positive) {
          sat = true;
          break;
        }
      if (!sat) return true;  // this assignment falsifies c; keep scanning
    }
    return false;  // assignment satisfies every clause
  });
  return !unsat;
}

}  // namespace sk::testoracle
