#include "fol/prover.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "core/subst.hpp"

namespace sk {

const char* proveStatusName(ProveStatus s) {
  switch (s) {
    case ProveStatus::Proved: return "PROVED";
    case ProveStatus::No: return "FAIL";
    case ProveStatus::ResourceOut: return "RESOURCE-OUT";
  }
  return "?";
}

namespace {

Term prefixVars(const Term& t, const std::string& prefix) {
  if (t.isVar()) return Term::var(prefix + t.name, t.sort);
  if (t.isConst()) return t;
  Term r = t;
  for (Term& a : r.args) a = prefixVars(a, prefix);
  return r;
}

Clause prefixVars(const Clause& c, const std::string& prefix) {
  Clause r = c;
  for (Literal& l : r.lits)
    for (Term& a : l.args) a = prefixVars(a, prefix);
  return r;
}

bool unifyArgLists(const std::vector<Term>& xs, const std::vector<Term>& ys, const Signature& sig,
                   Substitution& s) {
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto r = unify(xs[i], ys[i], sig, std::move(s));
    if (!r) return false;
    s = std::move(*r);
  }
  return true;
}

Clause applySubst(const Clause& c, const Substitution& s) {
  Clause r = c;
  for (Literal& l : r.lits)
    for (Term& a : l.args) a = s.apply(a);
  return r;
}

struct Saturation {
  const Signature& sig;
  const ResourceLimits& lim;
  std::vector<ProofStep> steps;
  std::set<std::pair<std::pair<int, int>, int>> usable;  // ((weight, id), id)
  std::vector<int> active;
  std::set<Clause> seen;
  long generated = 0;
  bool weight_discarded = false;
  int empty_step = -1;
  std::chrono::steady_clock::time_point deadline;

  bool admit(ProofStep step) {
    ++generated;
    if (isTautology(step.clause)) return false;
    if (step.rule != ProofStep::Rule::Input && clauseWeight(step.clause) > lim.max_weight) {
      weight_discarded = true;
      return false;
    }
    if (!seen.insert(step.clause).second) return false;
    int id = static_cast<int>(steps.size());
    int w = clauseWeight(step.clause);
    steps.push_back(std::move(step));
    usable.insert({{w, id}, id});
    if (steps[id].clause.empty()) empty_step = id;
    return true;
  }

  void resolveAll(int gi, int ai) {
    const Clause g = prefixVars(steps[gi].clause, "l$");
    const Clause a = prefixVars(steps[ai].clause, "r$");
    for (std::size_t i = 0; i < g.lits.size(); ++i) {
      for (std::size_t j = 0; j < a.lits.size(); ++j) {
        const Literal& li = g.lits[i];
        const Literal& lj = a.lits[j];
        if (li.positive == lj.positive || li.pred != lj.pred) continue;
        Substitution s;
        if (!unifyArgLists(li.args, lj.args, sig, s)) continue;
        Clause res;
        for (std::size_t k = 0; k < g.lits.size(); ++k)
          if (k != i) res.lits.push_back(g.lits[k]);
        for (std::size_t k = 0; k < a.lits.size(); ++k)
          if (k != j) res.lits.push_back(a.lits[k]);
        res = normalizeClause(applySubst(res, s));
        ProofStep step;
        step.rule = ProofStep::Rule::Resolve;
        step.prem1 = gi;
        step.prem2 = ai;
        step.lit1 = static_cast<int>(i);
        step.lit2 = static_cast<int>(j);
        step.clause = std::move(res);
        admit(std::move(step));
        if (empty_step >= 0) return;
      }
      if (empty_step >= 0) return;
    }
  }

  void factorAll(int gi) {
    const Clause g = steps[gi].clause;
    for (std::size_t i = 0; i < g.lits.size(); ++i) {
      for (std::size_t j = i + 1; j < g.lits.size(); ++j) {
        const Literal& li = g.lits[i];
        const Literal& lj = g.lits[j];
        if (li.positive != lj.positive || li.pred != lj.pred) continue;
        Substitution s;
        if (!unifyArgLists(li.args, lj.args, sig, s)) continue;
        ProofStep step;
        step.rule = ProofStep::Rule::Factor;
        step.prem1 = gi;
        step.lit1 = static_cast<int>(i);
        step.lit2 = static_cast<int>(j);
        step.clause = normalizeClause(applySubst(g, s));
        admit(std::move(step));
        if (empty_step >= 0) return;
      }
    }
  }
};

// Backward reachability from the refuting step, then dense renumbering.
FOLProof extractProof(const std::vector<ProofStep>& steps, int final_id) {
  std::vector<bool> used(steps.size(), false);
  std::vector<int> stack{final_id};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (used[id]) continue;
    used[id] = true;
    if (steps[id].prem1 >= 0) stack.push_back(steps[id].prem1);
    if (steps[id].prem2 >= 0) stack.push_back(steps[id].prem2);
  }
  std::map<int, int> remap;
  FOLProof proof;
  for (std::size_t id = 0; id < steps.size(); ++id) {
    if (!used[id]) continue;
    ProofStep s = steps[id];
    if (s.prem1 >= 0) s.prem1 = remap.at(s.prem1);
    if (s.prem2 >= 0) s.prem2 = remap.at(s.prem2);
    remap[static_cast<int>(id)] = static_cast<int>(proof.steps.size());
    proof.steps.push_back(std::move(s));
  }
  return proof;
}

}  // namespace

FOLResult proveClauses(const std::vector<LabelledClause>& input, const Signature& sig,
                       const ResourceLimits& lim) {
  Saturation sat{sig, lim, {}, {}, {}, {}, 0, false, -1,
                 std::chrono::steady_clock::now() + std::chrono::milliseconds(lim.timeout_ms)};

  FOLResult result;
  for (const LabelledClause& lc : input) {
    ProofStep step;
    step.rule = ProofStep::Rule::Input;
    step.clause = lc.clause;
    step.label = lc.label;
    sat.admit(std::move(step));
    if (sat.empty_step >= 0) break;
  }

  while (sat.empty_step < 0 && !sat.usable.empty()) {
    if (static_cast<long>(sat.steps.size()) > lim.max_clauses ||
        std::chrono::steady_clock::now() > sat.deadline) {
      result.status = ProveStatus::ResourceOut;
      result.note = "limit reached after " + std::to_string(sat.steps.size()) + " kept clauses";
      result.generated = sat.generated;
      result.kept = static_cast<long>(sat.steps.size());
      return result;
    }
    int given = sat.usable.begin()->second;
    sat.usable.erase(sat.usable.begin());
    sat.active.push_back(given);
    // Literal pairs are scanned complementary-both-ways inside resolveAll,
    // so one orientation per active partner covers every resolvent.
    for (int ai : sat.active) {
      sat.resolveAll(given, ai);
      if (sat.empty_step >= 0) break;
    }
    if (sat.empty_step < 0) sat.factorAll(given);
  }

  result.generated = sat.generated;
  result.kept = static_cast<long>(sat.steps.size());
  if (sat.empty_step >= 0) {
    result.status = ProveStatus::Proved;
    result.proof = extractProof(sat.steps, sat.empty_step);
  } else if (sat.weight_discarded) {
    result.status = ProveStatus::ResourceOut;
    result.note = "saturated, but clauses over the weight limit were discarded";
  } else {
    result.status = ProveStatus::No;
  }
  return result;
}

FOLResult proveFOL(const std::vector<LabelledFormula>& gamma, const FormulaPtr& goal,
                   const Signature& sig, const ResourceLimits& lim) {
  Clausifier cl(sig);
  std::vector<LabelledFormula> all = gamma;
  all.push_back({"$goal", mkNot(goal)});
  return proveClauses(cl.run(all), sig, lim);
}

CheckResult checkFOLProof(const FOLProof& proof, const std::vector<LabelledClause>& expected,
                          const Signature& sig) {
  auto reject = [](int step, std::string msg) {
    return CheckResult{false, step, std::move(msg)};
  };
  if (proof.steps.empty()) return reject(-1, "empty proof");

  for (std::size_t id = 0; id < proof.steps.size(); ++id) {
    const ProofStep& s = proof.steps[id];
    switch (s.rule) {
      case ProofStep::Rule::Input: {
        bool found = false;
        for (const LabelledClause& lc : expected)
          if (lc.clause == s.clause) {
            found = true;
            break;
          }
        if (!found) return reject(static_cast<int>(id), "input clause not in the expected set");
        break;
      }
      case ProofStep::Rule::Resolve: {
        if (s.prem1 < 0 || s.prem2 < 0 || s.prem1 >= static_cast<int>(id) ||
            s.prem2 >= static_cast<int>(id))
          return reject(static_cast<int>(id), "premise out of range");
        Clause c1 = prefixVars(proof.steps[s.prem1].clause, "c$l");
        Clause c2 = prefixVars(proof.steps[s.prem2].clause, "c$r");
        if (s.lit1 < 0 || s.lit1 >= static_cast<int>(c1.lits.size()) || s.lit2 < 0 ||
            s.lit2 >= static_cast<int>(c2.lits.size()))
          return reject(static_cast<int>(id), "literal index out of range");
        const Literal& l1 = c1.lits[s.lit1];
        const Literal& l2 = c2.lits[s.lit2];
        if (l1.positive == l2.positive || l1.pred != l2.pred)
          return reject(static_cast<int>(id), "selected literals are not complementary");
        Substitution sub;
        if (!unifyArgLists(l1.args, l2.args, sig, sub))
          return reject(static_cast<int>(id), "selected literals do not unify");
        Clause res;
        for (std::size_t k = 0; k < c1.lits.size(); ++k)
          if (static_cast<int>(k) != s.lit1) res.lits.push_back(c1.lits[k]);
        for (std::size_t k = 0; k < c2.lits.size(); ++k)
          if (static_cast<int>(k) != s.lit2) res.lits.push_back(c2.lits[k]);
        res = normalizeClause(applySubst(res, sub));
        if (!(res == s.clause))
          return reject(static_cast<int>(id), "replayed resolvent differs from stated clause");
        break;
      }
      case ProofStep::Rule::Factor: {
        if (s.prem1 < 0 || s.prem1 >= static_cast<int>(id))
          return reject(static_cast<int>(id), "premise out of range");
        const Clause& c = proof.steps[s.prem1].clause;
        if (s.lit1 < 0 || s.lit2 <= s.lit1 || s.lit2 >= static_cast<int>(c.lits.size()))
          return reject(static_cast<int>(id), "literal index out of range");
        const Literal& l1 = c.lits[s.lit1];
        const Literal& l2 = c.lits[s.lit2];
        if (l1.positive != l2.positive || l1.pred != l2.pred)
          return reject(static_cast<int>(id), "factored literals do not match");
        Substitution sub;
        if (!unifyArgLists(l1.args, l2.args, sig, sub))
          return reject(static_cast<int>(id), "factored literals do not unify");
        Clause res = normalizeClause(applySubst(c, sub));
        if (!(res == s.clause))
          return reject(static_cast<int>(id), "replayed factor differs from stated clause");
        break;
      }
    }
  }
  if (!proof.steps.back().clause.empty())
    return reject(static_cast<int>(proof.steps.size()) - 1, "final clause is not empty");
  return {};
}

}  // namespace sk
