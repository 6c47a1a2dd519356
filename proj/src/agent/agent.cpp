#include "agent/agent.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "core/subst.hpp"
#include "format/formula_io.hpp"
#include "format/proof_io.hpp"
#include "schemata/timeline.hpp"

namespace sk {

namespace {

bool eqAlpha(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(alphaNormalize(a), alphaNormalize(b)) == 0;
}

std::string queryKey(const FormulaPtr& f, const Signature& sig) {
  return writeFormula(alphaNormalize(f), sig);
}

bool kbHolds(const AgentState& st, const FormulaPtr& f) {
  for (const LabelledFormula& g : st.kb)
    if (eqAlpha(g.formula, f)) return true;
  return false;
}

void enqueueInterest(AgentState& st, const AgentConfig& cfg, int priority,
                     const std::string& label, const FormulaPtr& query) {
  if (!isClosed(query)) {
    st.log.push_back("interest " + label + " is still open after grounding, skipped");
    return;
  }
  std::string key = queryKey(query, st.sig);
  auto it = st.tried.find(key);
  if (it != st.tried.end() && it->second > cfg.retries) return;
  if (kbHolds(st, query)) return;
  for (const QueuedInterest& q : st.queue)
    if (queryKey(q.query, st.sig) == key) return;
  st.queue.push_back({priority, label, query, it == st.tried.end() ? 0 : it->second});
}

// Grounds a template's holes over the ground terms occurring in the KB, one
// candidate pool per hole sort, odometer order, capped per regeneration.
void instantiateTemplate(AgentState& st, const AgentConfig& cfg, const InterestSpec& spec) {
  if (spec.holes.empty()) {
    enqueueInterest(st, cfg, spec.priority, spec.label, spec.formula);
    return;
  }
  std::vector<std::vector<Term>> pools;
  for (const auto& [hole, sort] : spec.holes) {
    std::vector<Term> pool;
    std::set<std::string> seen;
    for (const LabelledFormula& g : st.kb) {
      for (const Term& t : groundTerms(g.formula)) {
        SortId s = st.sig.termSort(t);
        if (s == kNoSort || !st.sig.subsort(s, sort)) continue;
        if (seen.insert(renderTerm(t)).second) pool.push_back(t);
      }
    }
    if (pool.empty()) return;
    pools.push_back(std::move(pool));
  }
  std::vector<std::size_t> idx(pools.size(), 0);
  for (int made = 0; made < cfg.max_instantiations; ++made) {
    FormulaPtr q = spec.formula;
    std::string args = "(";
    for (std::size_t i = 0; i < pools.size(); ++i) {
      const Term& t = pools[i][idx[i]];
      q = substituteVar(q, spec.holes[i].first, t);
      if (i) args += ",";
      args += renderTerm(t);
    }
    args += ")";
    enqueueInterest(st, cfg, spec.priority, spec.label + args, q);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
}

void regenerateInterests(AgentState& st, const AgentConfig& cfg) {
  for (const InterestSpec& spec : st.templates) instantiateTemplate(st, cfg, spec);
  std::stable_sort(st.queue.begin(), st.queue.end(),
                   [](const QueuedInterest& a, const QueuedInterest& b) {
                     return a.priority > b.priority;
                   });
}

}  // namespace

AgentState initAgent(const ScenarioScript& sc, const AgentConfig& cfg) {
  AgentState st;
  st.sig = sc.kb.sig;
  for (const Assumption& a : sc.kb.assumptions) {
    st.kb.push_back({a.label, a.formula});
    st.strengths[a.label] = a.strength;
  }
  if (sc.learner.empty()) throw std::invalid_argument("scenario names no learner");
  const ConstDecl* learner = st.sig.findConst(sc.learner);
  if (!learner) throw std::invalid_argument("learner '" + sc.learner + "' is not declared");
  st.learner = Term::constant(sc.learner, learner->sort);
  int wt = 0;
  for (const FormulaPtr& f : sc.world_truth)
    st.world_truth.push_back({"wt" + std::to_string(wt++), f});
  st.templates = sc.interests;
  regenerateInterests(st, cfg);
  return st;
}

void ingestPercept(AgentState& st, const PerceptEvent& ev) {
  if (!st.clock.name.empty()) {
    Timeline tl(st.sig);
    if (!tl.comparable(st.clock, ev.time) || !tl.leq(st.clock, ev.time))
      throw ClockRegressionError("percept at " + renderTerm(ev.time) +
                                 " precedes the clock at " + renderTerm(st.clock));
  }
  FormulaPtr percept =
      mkModal(Formula::Kind::Perceives, {ev.agent, ev.time}, ev.formula);
  std::string label = "pct" + std::to_string(st.percepts_seen++);
  st.kb.push_back({label, percept});
  st.strengths[label] = ev.strength;
  st.clock = ev.time;
  st.log.push_back("percept " + label + " at " + renderTerm(ev.time) + ": " +
                   writeFormula(ev.formula, st.sig));
}

void stepAgent(AgentState& st, const AgentConfig& cfg) {
  ++st.steps_run;
  const std::string turn = "step " + std::to_string(st.steps_run) + ": ";

  std::vector<QueuedInterest> batch;
  for (int i = 0; i < cfg.batch && !st.queue.empty(); ++i) {
    batch.push_back(st.queue.front());
    st.queue.pop_front();
  }

  for (QueuedInterest& qi : batch) {
    std::string key = queryKey(qi.query, st.sig);
    int attempt = ++st.tried[key];
    ReasonResult r = prove(st.kb, qi.query, st.sig, cfg.reasoner);

    if (r.status == ReasonStatus::Proved) {
      JudgeInputs in{st.kb, st.strengths, st.world_truth};
      JudgeOutcome out = judgeKnowledge(st.learner, qi.query, r.proof, in, st.sig, cfg.reasoner);
      if (out.status == JudgeOutcome::Status::Knowledge) {
        std::string label = "lrn" + std::to_string(st.facts_learned++);
        st.kb.push_back({label, qi.query});
        st.strengths[label] = out.record.knowledge_level;
        st.transcript.push_back({st.steps_run, qi.label, qi.query, label, out.record});
        st.tried[key] = cfg.retries + 1;
        st.log.push_back(turn + "learned " + label + " from interest " + qi.label +
                         " at level " + std::to_string(out.record.knowledge_level));
      } else if (out.status == JudgeOutcome::Status::TruthUndecidable) {
        st.resource_out_seen = true;
        st.log.push_back(turn + "interest " + qi.label + " proved but " + out.reason);
        if (attempt <= cfg.retries) st.queue.push_back({qi.priority, qi.label, qi.query, attempt});
      } else {
        // A proved query that is not knowledge will not become knowledge by
        // retrying against the same world set.
        st.tried[key] = cfg.retries + 1;
        st.log.push_back(turn + "interest " + qi.label + " proved but not knowledge (" +
                         jtbLegName(out.failed_leg) + ": " + out.reason + ")");
      }
    } else {
      if (r.status == ReasonStatus::ResourceOut) st.resource_out_seen = true;
      st.log.push_back(turn + "interest " + qi.label + " " +
                       reasonStatusName(r.status) + (r.note.empty() ? "" : " (" + r.note + ")"));
      if (attempt <= cfg.retries) {
        st.queue.push_back({qi.priority, qi.label, qi.query, attempt});
      } else {
        st.log.push_back(turn + "interest " + qi.label + " dropped after " +
                         std::to_string(attempt) + " attempts");
      }
    }
  }
  regenerateInterests(st, cfg);
}

ScenarioOutcome runScenario(const ScenarioScript& sc, const AgentConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  Clock::time_point start = Clock::now();

  ScenarioOutcome out;
  out.state = initAgent(sc, cfg);
  for (const ScenarioScript::Action& act : sc.script) {
    if (act.kind == ScenarioScript::Action::Kind::Percept)
      ingestPercept(out.state, act.percept);
    else
      stepAgent(out.state, cfg);
  }

  for (const Expectation& e : sc.expectations) {
    bool met = false;
    for (const TranscriptEntry& t : out.state.transcript)
      if (t.record.knowledge_level >= e.min_strength && eqAlpha(t.record.proposition, e.formula)) {
        met = true;
        break;
      }
    if (!met) out.missing.push_back(e.label);
  }
  // An unmet expectation after a resource blowout is undecided, not refuted.
  out.exit_code = out.missing.empty() ? 0 : (out.state.resource_out_seen ? 3 : 2);
  out.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return out;
}

std::string renderTranscript(const AgentState& st) {
  std::ostringstream os;
  os << "transcript for " << st.learner.name << ": " << st.transcript.size()
     << " learned fact(s) over " << st.steps_run << " step(s)\n";
  for (const TranscriptEntry& t : st.transcript) {
    std::set<std::string> support = proofSupport(*t.record.justification, st.sig);
    os << t.kb_label << " at level " << t.record.knowledge_level << " ("
       << strengthLabel(t.record.knowledge_level) << ")  [step " << t.step << ", interest "
       << t.interest << ", support {";
    bool first = true;
    for (const std::string& s : support) {
      if (!first) os << " ";
      os << s;
      first = false;
    }
    os << "}]\n  " << writeFormula(t.record.proposition, st.sig) << "\n";
  }
  os << "log:\n";
  for (const std::string& line : st.log) os << "  " << line << "\n";
  return os.str();
}

nlohmann::json transcriptJson(const AgentState& st) {
  nlohmann::json j;
  j["format"] = "shadowkernel-transcript";
  j["version"] = 1;
  j["learner"] = st.learner.name;
  j["steps"] = st.steps_run;
  j["entries"] = nlohmann::json::array();
  for (const TranscriptEntry& t : st.transcript) {
    nlohmann::json e;
    e["step"] = t.step;
    e["interest"] = t.interest;
    e["label"] = t.kb_label;
    e["query"] = writeFormula(t.query, st.sig);
    e["level"] = t.record.knowledge_level;
    e["level_label"] = strengthLabel(t.record.knowledge_level);
    e["truth"] = t.record.truth;
    e["support"] = proofSupport(*t.record.justification, st.sig);
    e["justification"] = proofJson(*t.record.justification, st.sig);
    j["entries"].push_back(std::move(e));
  }
  j["log"] = st.log;
  return j;
}

}  // namespace sk
