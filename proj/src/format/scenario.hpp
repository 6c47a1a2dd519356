#pragma once

#include <string>
#include <vector>

#include "format/kb.hpp"

namespace sk {

struct PerceptEvent {
  Term agent;
  Term time;
  FormulaPtr formula;
  int strength = 5;
};

// An interest is a query the agent wants settled.  A template carries typed
// holes; the agent grounds them over terms occurring in its KB.
struct InterestSpec {
  int priority = 0;
  std::string label;
  std::vector<std::pair<std::string, SortId>> holes;
  FormulaPtr formula;  // open in the holes when holes is nonempty
};

struct Expectation {
  std::string label;
  int min_strength = 1;
  FormulaPtr formula;
};

// A scripted run: embedded KB directives plus, in order, percepts and
// explicit step points.  Directives beyond the KB set:
//   (learner agent) (percept agent time f [strength])
//   (interest prio label f) (interest-template prio label ((x Sort)...) f)
//   (world-truth f) (expect label level f) (step)
struct ScenarioScript {
  KBDocument kb;
  std::string learner;

  struct Action {
    enum class Kind { Percept, Step };
    Kind kind = Kind::Step;
    PerceptEvent percept;  // Percept only
  };
  std::vector<Action> script;
  std::vector<InterestSpec> interests;
  std::vector<FormulaPtr> world_truth;
  std::vector<Expectation> expectations;
};

ScenarioScript parseScenarioText(const std::string& text, std::vector<Diagnostic>& diags);
ScenarioScript parseScenarioFile(const std::string& path, std::vector<Diagnostic>& diags);

}  // namespace sk
