#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "epistemics/epistemics.hpp"
#include "format/scenario.hpp"

namespace sk {

struct ClockRegressionError : SkError {
  using SkError::SkError;
};

struct AgentConfig {
  ReasonerConfig reasoner;
  int batch = 4;                // interests attempted per step
  int retries = 1;              // failed queries requeue this many times
  int max_instantiations = 64;  // groundings per template per regeneration
};

struct QueuedInterest {
  int priority = 0;
  std::string label;
  FormulaPtr query;
  int attempts = 0;
};

// One learned fact with its full cycle: the interest that raised the query,
// the query itself, and the judged record whose justification has already
// been checked.
struct TranscriptEntry {
  int step = 0;
  std::string interest;
  FormulaPtr query;
  std::string kb_label;
  KnowledgeRecord record;
};

struct AgentState {
  Signature sig;
  Term learner;
  std::vector<LabelledFormula> kb;
  std::map<std::string, int> strengths;
  std::vector<LabelledFormula> world_truth;
  std::vector<InterestSpec> templates;
  std::deque<QueuedInterest> queue;
  Term clock;  // empty name until the first percept
  std::vector<TranscriptEntry> transcript;
  std::vector<std::string> log;
  int steps_run = 0;
  int percepts_seen = 0;
  int facts_learned = 0;
  bool resource_out_seen = false;
  // query key -> attempts so far; exhausted queries are not re-raised
  std::map<std::string, int> tried;
};

// Builds the initial state from a parsed scenario: KB, learner constant,
// world-truth set, and the interest queue seeded from the templates.
// Throws std::invalid_argument when the learner is missing or undeclared.
AgentState initAgent(const ScenarioScript& sc, const AgentConfig& cfg);

// Records P(agent, t, phi) at the event's strength and advances the clock.
// Throws ClockRegressionError when t precedes (or is incomparable with)
// the clock.
void ingestPercept(AgentState& st, const PerceptEvent& ev);

// One loop turn: attempt a bounded batch of queued interests, judge every
// proved query, commit knowledge to the KB and transcript, then regenerate
// interests against the grown KB. Every outcome lands in the log.
void stepAgent(AgentState& st, const AgentConfig& cfg);

struct ScenarioOutcome {
  int exit_code = 0;  // 0 expectations met, 2 mismatch, 3 undecided by resources
  AgentState state;
  std::vector<std::string> missing;  // unmet expectation labels
  long wall_ms = 0;
};

// Replays the script in order, then compares the transcript against the
// scenario's expectations (set inclusion, each at its minimum strength).
ScenarioOutcome runScenario(const ScenarioScript& sc, const AgentConfig& cfg);

std::string renderTranscript(const AgentState& st);
nlohmann::json transcriptJson(const AgentState& st);

}  // namespace sk
