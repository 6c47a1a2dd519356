#pragma once

#include <string>
#include <vector>

#include "core/signature.hpp"
#include "fol/clause.hpp"

namespace sk {

struct LabelledFormula {
  std::string label;
  FormulaPtr formula;
};

struct LabelledClause {
  std::string label;
  Clause clause;
};

// Standard refutation front end: negation normal form, relativization of
// sorted quantifiers into s$Sort guard literals, skolemization (sk$N), and
// distribution to CNF.  Quantifiers over the internal root sort get no
// guard.  When any guard literal is introduced, the sort theory (subsort
// axioms, constant memberships, function closure, and w$Sort witnesses for
// otherwise-uninhabited sorts) is appended under the label "$sorts".
//
// Throws ModalLeakError when a modal operator reaches the clausifier.
class Clausifier {
 public:
  explicit Clausifier(const Signature& sig) : sig_(sig) {}

  // Single formula, no guard theory appended (guards_used() reports
  // whether any guard literal was minted so far).
  std::vector<Clause> clausify(const FormulaPtr& f);

  // Whole input set; clause order follows formula order, guard theory
  // last.  Exact duplicate clauses keep their first label only.
  std::vector<LabelledClause> run(const std::vector<LabelledFormula>& formulas);

  bool guardsUsed() const { return guards_used_; }
  std::vector<LabelledClause> guardTheory() const;

 private:
  const Signature& sig_;
  int skolem_ = 0;
  int var_ = 0;
  bool guards_used_ = false;
};

}  // namespace sk
