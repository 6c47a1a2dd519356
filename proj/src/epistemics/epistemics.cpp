#include "epistemics/epistemics.hpp"

#include <algorithm>
#include <stdexcept>

#include "core/subst.hpp"
#include "format/proof_io.hpp"

namespace sk {

namespace {

const char* kPositiveLabels[6] = {
    "counterbalanced",        // 0
    "more likely than not",   // 1
    "likely",                 // 2
    "beyond reasonable doubt",  // 3
    "overwhelmingly likely",  // 4
    "certain",                // 5
};

bool eqAlpha(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(alphaNormalize(a), alphaNormalize(b)) == 0;
}

}  // namespace

std::string strengthLabel(int level) {
  if (level < -5 || level > 5)
    throw std::out_of_range("strength level " + std::to_string(level) + " outside [-5, 5]");
  if (level >= 0) return kPositiveLabels[level];
  return std::string(kPositiveLabels[-level]) + " (negation)";
}

int combineStrengths(const std::vector<int>& levels) {
  if (levels.empty()) throw std::invalid_argument("combineStrengths: no levels to combine");
  int out = levels[0];
  for (int l : levels) {
    if (l < -5 || l > 5)
      throw std::out_of_range("strength level " + std::to_string(l) + " outside [-5, 5]");
    out = std::min(out, l);
  }
  return out;
}

const char* jtbLegName(JtbLeg leg) {
  switch (leg) {
    case JtbLeg::Belief: return "belief";
    case JtbLeg::Justification: return "justification";
    case JtbLeg::Truth: return "truth";
  }
  return "?";
}

JudgeOutcome judgeKnowledge(const Term& agent, const FormulaPtr& phi,
                            const std::shared_ptr<const MixedProof>& justification,
                            const JudgeInputs& in, const Signature& sig,
                            const ReasonerConfig& cfg) {
  JudgeOutcome out;

  bool believes = justification && justification->goal && eqAlpha(justification->goal, phi);
  for (const LabelledFormula& f : in.kb) {
    if (believes) break;
    if (f.formula->kind != Formula::Kind::Believes) continue;
    if (compare(f.formula->terms[0], agent) != 0) continue;
    believes = eqAlpha(f.formula->sub[0], phi);
  }
  if (!believes) {
    out.failed_leg = JtbLeg::Belief;
    out.reason = "the knowledge base holds no such belief and the justification does not conclude it";
    return out;
  }

  if (!justification) {
    out.failed_leg = JtbLeg::Justification;
    out.reason = "no justification supplied";
    return out;
  }
  MixedCheck check = checkMixedProof(*justification, in.kb, phi, sig, cfg);
  if (!check.ok) {
    out.failed_leg = JtbLeg::Justification;
    out.reason = check.message;
    return out;
  }

  ReasonResult truth = prove(in.world_truth, phi, sig, cfg);
  if (truth.status == ReasonStatus::ResourceOut) {
    out.status = JudgeOutcome::Status::TruthUndecidable;
    out.failed_leg = JtbLeg::Truth;
    out.reason = "truth check ran out of resources: " + truth.note;
    return out;
  }
  if (truth.status != ReasonStatus::Proved) {
    out.failed_leg = JtbLeg::Truth;
    out.reason = "the world set does not entail the proposition";
    return out;
  }

  // The checker accepted, so support analysis cannot hit dangling references.
  std::vector<int> levels;
  for (const std::string& label : proofSupport(*justification, sig)) {
    auto it = in.strengths.find(label);
    levels.push_back(it == in.strengths.end() ? 5 : it->second);
  }
  int level = levels.empty() ? 5 : combineStrengths(levels);

  out.status = JudgeOutcome::Status::Knowledge;
  out.record.agent = agent;
  out.record.proposition = phi;
  out.record.belief_level = level;
  out.record.justification = justification;
  out.record.truth = true;
  out.record.knowledge_level = level;
  return out;
}

}  // namespace sk
