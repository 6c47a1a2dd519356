#pragma once

#include <string>
#include <vector>

#include "fol/clausify.hpp"

namespace sk {

struct ResourceLimits {
  long max_clauses = 50000;  // kept clauses
  int max_weight = 60;       // heavier derived clauses are discarded
  long timeout_ms = 5000;
};

enum class ProveStatus { Proved, No, ResourceOut };

const char* proveStatusName(ProveStatus s);

struct ProofStep {
  enum class Rule { Input, Resolve, Factor };
  Rule rule = Rule::Input;
  // Resolve: lit1 indexes prem1's literals, lit2 indexes prem2's.
  // Factor: lit1 < lit2 both index prem1's literals.
  int prem1 = -1, prem2 = -1;
  int lit1 = -1, lit2 = -1;
  Clause clause;
  std::string label;  // Input only: source formula label
};

// Steps in derivation order; step ids are vector indices and premises
// always point backwards.  A complete refutation ends in the empty clause.
struct FOLProof {
  std::vector<ProofStep> steps;

  bool refutation() const { return !steps.empty() && steps.back().clause.empty(); }
};

struct FOLResult {
  ProveStatus status = ProveStatus::No;
  FOLProof proof;  // Proved only
  long generated = 0;
  long kept = 0;
  std::string note;
};

// Given-clause saturation by binary resolution + factoring, smallest
// weight first, insertion order breaking ties.  Saturation only counts as
// NO when nothing was discarded for weight; otherwise the answer is
// ResourceOut, since a discarded clause could have completed a refutation.
FOLResult proveClauses(const std::vector<LabelledClause>& input, const Signature& sig,
                       const ResourceLimits& lim);

// Clausifies gamma plus the negated goal (label "$goal") and saturates.
FOLResult proveFOL(const std::vector<LabelledFormula>& gamma, const FormulaPtr& goal,
                   const Signature& sig, const ResourceLimits& lim);

struct CheckResult {
  bool ok = true;
  int failed_step = -1;
  std::string message;
};

// Replays every step with its own rule applications (core unification
// only; none of the search machinery) and confirms input steps against the
// expected clause set and the final step against the empty clause.
CheckResult checkFOLProof(const FOLProof& proof, const std::vector<LabelledClause>& expected,
                          const Signature& sig);

}  // namespace sk
