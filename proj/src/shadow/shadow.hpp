#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/ast.hpp"

namespace sk {

// Expressiveness rank of a formula: 0 purely propositional, 1 first-order
// material (predicates with arguments or quantifiers) but no modal
// operator, 2 when a modal operator occurs anywhere.
int level(const FormulaPtr& f);

// Bijection between alpha-normalized formulas and minted zero-ary atom
// symbols A$0, A$1, ...  Alpha-equivalent formulas share one symbol; the
// map grows monotonically within a session.
class ShadowMap {
 public:
  std::string atomize(const FormulaPtr& f);
  // Normalized formula behind an atom symbol, nullptr when unknown.
  FormulaPtr formulaFor(const std::string& atom) const;
  // Insertion-order (atom, normalized formula) pairs.
  const std::vector<std::pair<std::string, FormulaPtr>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Rebuilds a map from recorded entries, e.g. out of a serialized proof.
  // Future mints continue past the largest recorded A$N index.
  static ShadowMap restore(const std::vector<std::pair<std::string, FormulaPtr>>& entries);

 private:
  std::vector<std::pair<std::string, FormulaPtr>> entries_;
  std::map<FormulaPtr, std::string, FormulaLess> by_formula_;
  int counter_ = 0;
};

// Replaces the outermost subformulas of level > l with their atoms, all at
// once.  Connectives are transparent at every l; quantifiers are
// transparent at l >= 1.  Only closed subformulas are atomized: an open
// modal body forces atomization of the nearest enclosing closed quantifier
// or modal node instead.  Throws ModalLeakError when f itself is open and
// cannot absorb an obstruction.
FormulaPtr shadow(const FormulaPtr& f, int l, ShadowMap& m);

// Element-wise shadow sharing one map, so equal modal subformulas across
// the set collapse to the same atom.
std::vector<FormulaPtr> shadowSet(const std::vector<FormulaPtr>& gamma, int l, ShadowMap& m);

// Inverse pass: replaces every minted atom in f by the formula it stands
// for.  Atoms not in the map are left alone.
FormulaPtr expandAtoms(const FormulaPtr& f, const ShadowMap& m);

}  // namespace sk
