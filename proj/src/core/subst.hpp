#pragma once

#include <map>
#include <optional>
#include <string>

#include "core/ast.hpp"
#include "core/signature.hpp"

namespace sk {

// Variable-name keyed binding map.  Bindings are fully dereferenced when
// applied, not when inserted, so chained bindings are fine.
class Substitution {
 public:
  bool bind(const std::string& var, Term value);
  const Term* lookup(const std::string& var) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const;
  // Capture-avoiding: bound variables whose name collides with a variable
  // free in an incoming binding get renamed before descending.
  FormulaPtr apply(const FormulaPtr& f) const;

 private:
  std::map<std::string, Term> map_;
};

// Most general unifier of two terms under the sort forest: a variable only
// binds to a term whose sort fits under the variable's sort, and two
// variables unify toward the more specific of their sorts.  Occurs check on.
std::optional<Substitution> unify(const Term& a, const Term& b, const Signature& sig);
std::optional<Substitution> unify(const Term& a, const Term& b, const Signature& sig,
                                  Substitution seed);

// Unifies two atoms (predicate name, arity, then argument-wise).
std::optional<Substitution> unifyAtoms(const FormulaPtr& a, const FormulaPtr& b,
                                       const Signature& sig);

// Renames every bound variable to $0, $1, ... in binder-encounter order.
// Alpha-equivalent formulas normalize to equal structures.
FormulaPtr alphaNormalize(const FormulaPtr& f);

// Substitutes a single variable everywhere it occurs free.
FormulaPtr substituteVar(const FormulaPtr& f, const std::string& var, const Term& value);

}  // namespace sk
