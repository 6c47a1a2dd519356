#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core/ast.hpp"
#include "core/signature.hpp"
#include "schemata/timeline.hpp"

namespace sk {

// Forward-expansion rules over modal formulas. Ids follow the calculus'
// numbering, which has no R11.
enum class SchemaId {
  RK,
  RB,
  R1,
  R2,
  R3,
  R4,
  R5,
  R6,
  R7,
  R8,
  R9,
  R10,
  R12,
  R13,
  R14,
};

const char* schemaName(SchemaId id);
std::optional<SchemaId> schemaFromName(const std::string& name);
const std::vector<SchemaId>& allSchemata();

struct ExpansionPolicy {
  std::set<SchemaId> enabled;
  // Every formula added by expansion keeps modal nesting depth <= d_max.
  int d_max = 3;
  // Longest iterated-knowledge chain minted from one common-knowledge premise.
  int r3_depth = 2;
  int max_rounds = 8;

  bool has(SchemaId id) const { return enabled.count(id) != 0; }
  static ExpansionPolicy all();
  static ExpansionPolicy none();

  std::vector<std::pair<std::string, std::string>> toOptions() const;
  static ExpansionPolicy fromOptions(const std::vector<std::pair<std::string, std::string>>& opts,
                                     std::vector<std::string>* errors = nullptr);
};

struct MixedProof;

// One applied (or applicable) expansion step. Premises are formulas taken
// from the current set; axiom mints have no premises and record the
// triggering occurrence in the binding instead.
struct SchemaInstance {
  SchemaId id = SchemaId::R1;
  std::vector<FormulaPtr> premises;
  FormulaPtr conclusion;
  // Metavariable assignment, rendered, for the proof artifact.
  std::vector<std::pair<std::string, std::string>> binding;
  // Discharged side-conditions, human readable ("t0 <= t1", ...).
  std::vector<std::string> side_conditions;
  // Closure steps only: the embedded entailment's proof.
  std::shared_ptr<const MixedProof> subproof;
};

// Discharges an embedded entailment base |- goal for the closure schemata.
// Returns the proof on success, nullptr on failure or budget exhaustion.
using DischargeFn = std::function<std::shared_ptr<const MixedProof>(
    const std::vector<FormulaPtr>& base, const FormulaPtr& goal)>;

// Optional steering for enumeration. Closure conclusions are only attempted
// for knowledge/belief shapes that occur somewhere already; hints (typically
// the goal) widen that pool. Without a discharge callback the closure
// schemata produce no instances.
struct ExpandHooks {
  std::vector<FormulaPtr> hints;
  DischargeFn discharge;
};

std::vector<SchemaInstance> applicable(const std::vector<FormulaPtr>& gamma,
                                       const ExpansionPolicy& pol, const Signature& sig,
                                       const Timeline& tl, const ExpandHooks* hooks = nullptr,
                                       std::vector<std::string>* notes = nullptr);

struct ExpandResult {
  std::vector<FormulaPtr> gamma;
  std::vector<SchemaInstance> applied;
  std::vector<std::string> notes;
  bool changed = false;
};

// One round: gamma plus every applicable conclusion, input order preserved,
// each addition recorded once. Depth-pruned instances leave a note.
ExpandResult expand(const std::vector<FormulaPtr>& gamma, const ExpansionPolicy& pol,
                    const Signature& sig, const Timeline& tl,
                    const ExpandHooks* hooks = nullptr);

struct InstanceCheck {
  bool ok = false;
  std::string message;
};

// Replays one instance against gamma: premises must be members, the
// conclusion must have exactly the cited schema's shape, and time
// side-conditions must hold. Closure instances re-prove their embedded
// entailment through the callback and are rejected without one.
InstanceCheck verifyInstance(const SchemaInstance& inst, const std::vector<FormulaPtr>& gamma,
                             const Signature& sig, const Timeline& tl,
                             const DischargeFn& discharge = nullptr);

}  // namespace sk
