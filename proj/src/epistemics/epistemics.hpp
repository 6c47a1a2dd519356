#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "reasoner/reasoner.hpp"

namespace sk {

// Belief strength runs -5..5. Positive levels name increasing confidence in
// the proposition, negative levels the same confidence in its negation,
// 0 is counterbalanced.
std::string strengthLabel(int level);  // throws std::out_of_range outside [-5,5]

// Weakest link: an argument supports its conclusion no more strongly than
// its weakest input. Deductive machinery itself contributes level 5.
int combineStrengths(const std::vector<int>& levels);  // throws on empty input

enum class JtbLeg { Belief, Justification, Truth };
const char* jtbLegName(JtbLeg leg);

struct KnowledgeRecord {
  Term agent;
  FormulaPtr proposition;
  int belief_level = 5;
  std::shared_ptr<const MixedProof> justification;
  bool truth = false;
  int knowledge_level = 5;
};

// What the judgment consults: the agent's labelled formulas with their
// declared strengths (absent labels count as 5), and the formulas the
// system holds true, which serve as the truth oracle.
struct JudgeInputs {
  std::vector<LabelledFormula> kb;
  std::map<std::string, int> strengths;
  std::vector<LabelledFormula> world_truth;
};

struct JudgeOutcome {
  enum class Status { Knowledge, NotKnowledge, TruthUndecidable };
  Status status = Status::NotKnowledge;
  KnowledgeRecord record;  // Knowledge only
  JtbLeg failed_leg = JtbLeg::Belief;
  std::string reason;
};

// Knowledge as justified true belief, each leg machine-decided:
//   belief        the KB holds B(agent, t, phi) at some moment, or the
//                 justification itself concludes phi;
//   justification checkMixedProof accepts the supplied proof of phi
//                 against the KB;
//   truth         the world set entails phi within cfg's budgets.
// All three hold: a record at the combined strength of the assumptions the
// justification rests on. A truth check that runs out of resources is
// reported as TruthUndecidable, never folded into false.
JudgeOutcome judgeKnowledge(const Term& agent, const FormulaPtr& phi,
                            const std::shared_ptr<const MixedProof>& justification,
                            const JudgeInputs& in, const Signature& sig,
                            const ReasonerConfig& cfg);

}  // namespace sk
