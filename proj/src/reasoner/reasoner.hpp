#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/signature.hpp"
#include "fol/clausify.hpp"
#include "fol/prover.hpp"
#include "schemata/schemata.hpp"
#include "shadow/shadow.hpp"

namespace sk {

enum class ReasonStatus { Proved, Fail, ResourceOut };

const char* reasonStatusName(ReasonStatus s);

struct ReasonerConfig {
  ResourceLimits fol_limits;
  ExpansionPolicy policy = ExpansionPolicy::all();
  // Wall budget for one top-level query, expansion rounds included.
  long global_timeout_ms = 20000;
  // How many closure discharges may nest before the hook is withheld.
  int recursion_depth = 2;
};

// One expansion round: the instances applied (in application order, with
// the internal label each conclusion entered Gamma under) and diagnostics.
struct ExpansionRound {
  std::vector<SchemaInstance> applied;
  std::vector<std::string> labels;
  std::vector<std::string> notes;
};

// Full certificate for a modal verdict.  The rounds rebuild the final
// premise set from the assumptions, the atom table fixes the shadowing,
// and the refutation closes the first-order remainder.  Everything a
// checker needs is here; no search required on replay.
struct MixedProof {
  std::vector<LabelledFormula> assumptions;
  FormulaPtr goal;
  std::vector<ExpansionRound> rounds;
  std::vector<std::pair<std::string, FormulaPtr>> shadow_atoms;
  std::vector<LabelledFormula> shadowed_gamma;
  FormulaPtr shadowed_goal;
  FOLProof fol;
};

struct ReasonResult {
  ReasonStatus status = ReasonStatus::Fail;
  std::shared_ptr<const MixedProof> proof;  // set iff status == Proved
  std::vector<std::string> trace;
  int rounds_used = 0;
  std::string note;
};

// Proves goal from gamma, growing gamma by schema expansion between
// first-order attempts.  Fail is only returned from a genuine fixpoint
// with every inner call decided; otherwise resource exhaustion wins.
ReasonResult prove(const std::vector<LabelledFormula>& gamma, const FormulaPtr& goal,
                   const Signature& sig, const ReasonerConfig& cfg);

struct MixedCheck {
  bool ok = true;
  std::string message;
};

// Replays a MixedProof against the claimed assumptions and goal: every
// round instance is re-verified, the shadowing is re-run over the restored
// atom table, and the refutation is re-checked step by step.  cfg bounds
// the re-discharge of closure subproofs.
MixedCheck checkMixedProof(const MixedProof& p, const std::vector<LabelledFormula>& gamma,
                           const FormulaPtr& goal, const Signature& sig,
                           const ReasonerConfig& cfg);

}  // namespace sk
