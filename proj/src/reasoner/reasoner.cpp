#include "reasoner/reasoner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include "core/subst.hpp"
#include "format/formula_io.hpp"
#include "schemata/timeline.hpp"

namespace sk {

const char* reasonStatusName(ReasonStatus s) {
  switch (s) {
    case ReasonStatus::Proved: return "PROVED";
    case ReasonStatus::Fail: return "FAIL";
    case ReasonStatus::ResourceOut: return "RESOURCE-OUT";
  }
  return "?";
}

namespace {

constexpr int kShadowLevel = 1;

using Clock = std::chrono::steady_clock;

long msLeft(Clock::time_point deadline) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now())
      .count();
}

bool sameFormula(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(alphaNormalize(a), alphaNormalize(b)) == 0;
}

// Shared state for one top-level query, nested discharges included.
// inner_resource_out is sticky: once any sub-attempt hits a limit, a
// later fixpoint can no longer be certified as FAIL.
struct Env {
  const Signature& sig;
  Timeline tl;
  std::map<std::string, std::shared_ptr<const MixedProof>> memo;
  bool inner_resource_out = false;

  explicit Env(const Signature& s) : sig(s), tl(s) {}
};

std::string sequentKey(const std::vector<FormulaPtr>& base, const FormulaPtr& goal,
                       int depth, const Signature& sig) {
  std::vector<std::string> parts;
  parts.reserve(base.size());
  for (const FormulaPtr& f : base) parts.push_back(writeFormula(alphaNormalize(f), sig));
  std::sort(parts.begin(), parts.end());
  std::string key = std::to_string(depth);
  for (const std::string& p : parts) {
    key += '\n';
    key += p;
  }
  key += "\n|- ";
  key += writeFormula(alphaNormalize(goal), sig);
  return key;
}

std::vector<LabelledFormula> labelBase(const std::vector<FormulaPtr>& base) {
  std::vector<LabelledFormula> out;
  out.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    out.push_back({"$b" + std::to_string(i), base[i]});
  return out;
}

// Collapses alpha-duplicates, first label wins. Both the prover and the
// checker run this, so recorded assumption lists line up on replay.
std::vector<LabelledFormula> dedupe(const std::vector<LabelledFormula>& gamma,
                                    std::vector<std::string>* dropped) {
  std::vector<LabelledFormula> out;
  std::set<FormulaPtr, FormulaLess> seen;
  for (const LabelledFormula& lf : gamma) {
    if (!lf.formula) continue;
    if (!seen.insert(alphaNormalize(lf.formula)).second) {
      if (dropped) dropped->push_back(lf.label);
      continue;
    }
    out.push_back(lf);
  }
  return out;
}

ReasonResult proveImpl(const std::vector<LabelledFormula>& gamma_in, const FormulaPtr& goal,
                       const ReasonerConfig& cfg, int depth, Clock::time_point deadline,
                       Env& env);

// Closure discharge hook: a bounded recursive query over the same memo,
// spending at most half the remaining wall budget per fresh attempt.
DischargeFn makeDischarge(const ReasonerConfig& cfg, int depth, Clock::time_point deadline,
                          Env* env) {
  if (depth <= 0) return nullptr;
  return [cfg, depth, deadline, env](
             const std::vector<FormulaPtr>& base,
             const FormulaPtr& sub_goal) -> std::shared_ptr<const MixedProof> {
    std::string key = sequentKey(base, sub_goal, depth, env->sig);
    auto hit = env->memo.find(key);
    if (hit != env->memo.end()) return hit->second;

    long left = msLeft(deadline);
    if (left <= 0) {
      env->inner_resource_out = true;
      return nullptr;
    }
    Clock::time_point sub_deadline = Clock::now() + std::chrono::milliseconds(left / 2 + 1);
    ReasonResult r = proveImpl(labelBase(base), sub_goal, cfg, depth - 1, sub_deadline, *env);
    if (r.status == ReasonStatus::ResourceOut) env->inner_resource_out = true;
    std::shared_ptr<const MixedProof> out =
        r.status == ReasonStatus::Proved ? r.proof : nullptr;
    env->memo.emplace(std::move(key), out);
    return out;
  };
}

ReasonResult proveImpl(const std::vector<LabelledFormula>& gamma_in, const FormulaPtr& goal,
                       const ReasonerConfig& cfg, int depth, Clock::time_point deadline,
                       Env& env) {
  ReasonResult res;

  std::vector<std::string> dropped;
  std::vector<LabelledFormula> cur = dedupe(gamma_in, &dropped);
  for (const std::string& l : dropped)
    res.trace.push_back("duplicate assumption dropped: " + l);

  auto proof = std::make_shared<MixedProof>();
  proof->assumptions = cur;
  proof->goal = goal;

  ShadowMap map;
  std::size_t minted = 0;
  for (int round = 0;; ++round) {
    long left = msLeft(deadline);
    if (left <= 0) {
      res.status = ReasonStatus::ResourceOut;
      res.note = "wall budget exhausted before round " + std::to_string(round);
      res.trace.push_back(res.note);
      return res;
    }

    std::vector<FormulaPtr> bare;
    bare.reserve(cur.size());
    for (const LabelledFormula& lf : cur) bare.push_back(lf.formula);

    std::vector<FormulaPtr> sgamma = shadowSet(bare, kShadowLevel, map);
    FormulaPtr sgoal = shadow(goal, kShadowLevel, map);
    std::vector<LabelledFormula> labelled;
    labelled.reserve(sgamma.size());
    for (std::size_t i = 0; i < sgamma.size(); ++i)
      labelled.push_back({cur[i].label, sgamma[i]});

    ResourceLimits lim = cfg.fol_limits;
    lim.timeout_ms = std::min<long>(lim.timeout_ms, left);
    FOLResult fr = proveFOL(labelled, sgoal, env.sig, lim);
    res.rounds_used = round + 1;
    res.trace.push_back("round " + std::to_string(round) + ": |assumptions| = " +
                        std::to_string(cur.size()) + ", first-order " +
                        proveStatusName(fr.status) + " (" + std::to_string(fr.generated) +
                        " generated, " + std::to_string(fr.kept) + " kept)");

    if (fr.status == ProveStatus::Proved) {
      proof->shadow_atoms = map.entries();
      proof->shadowed_gamma = std::move(labelled);
      proof->shadowed_goal = sgoal;
      proof->fol = std::move(fr.proof);
      res.status = ReasonStatus::Proved;
      res.proof = std::move(proof);
      return res;
    }
    if (fr.status == ProveStatus::ResourceOut) {
      env.inner_resource_out = true;
      if (!fr.note.empty()) res.trace.push_back("  first-order limit: " + fr.note);
    }

    if (round >= cfg.policy.max_rounds) {
      res.status = ReasonStatus::ResourceOut;
      res.note = "round limit reached (max_rounds = " +
                 std::to_string(cfg.policy.max_rounds) + ")";
      res.trace.push_back(res.note);
      return res;
    }

    ExpandHooks hooks;
    hooks.hints = {goal};
    hooks.discharge = makeDischarge(cfg, depth, deadline, &env);
    ExpandResult ex = expand(bare, cfg.policy, env.sig, env.tl, &hooks);
    for (const std::string& n : ex.notes) res.trace.push_back("  " + n);

    if (!ex.changed) {
      res.status = ReasonStatus::Fail;
      res.note = "expansion fixpoint after " + std::to_string(round + 1) + " round(s)";
      res.trace.push_back(res.note);
      return res;
    }

    ExpansionRound rec;
    rec.applied = ex.applied;
    rec.notes = std::move(ex.notes);
    for (const SchemaInstance& inst : rec.applied) {
      std::string label = "$e" + std::to_string(minted++);
      rec.labels.push_back(label);
      cur.push_back({label, inst.conclusion});
      res.trace.push_back("  + " + label + " = " + writeFormula(inst.conclusion, env.sig) +
                          "  [" + schemaName(inst.id) + "]");
    }
    proof->rounds.push_back(std::move(rec));
  }
}

MixedCheck checkImpl(const MixedProof& p, const std::vector<LabelledFormula>& gamma,
                     const FormulaPtr& goal, const ReasonerConfig& cfg, int depth,
                     Clock::time_point deadline, Env& env);

// Discharge used during replay: trust-but-verify the recorded subproof
// first, fall back to a bounded fresh search only if that fails.
DischargeFn makeCheckDischarge(const SchemaInstance& inst, const ReasonerConfig& cfg,
                               int depth, Clock::time_point deadline, Env* env) {
  if (depth <= 0) return nullptr;
  return [&inst, cfg, depth, deadline, env](
             const std::vector<FormulaPtr>& base,
             const FormulaPtr& sub_goal) -> std::shared_ptr<const MixedProof> {
    if (inst.subproof) {
      MixedCheck mc =
          checkImpl(*inst.subproof, labelBase(base), sub_goal, cfg, depth - 1, deadline, *env);
      if (mc.ok) return inst.subproof;
    }
    DischargeFn fresh = makeDischarge(cfg, depth, deadline, env);
    return fresh ? fresh(base, sub_goal) : nullptr;
  };
}

MixedCheck checkImpl(const MixedProof& p, const std::vector<LabelledFormula>& gamma,
                     const FormulaPtr& goal, const ReasonerConfig& cfg, int depth,
                     Clock::time_point deadline, Env& env) {
  auto fail = [](std::string m) { return MixedCheck{false, std::move(m)}; };

  if (!goal || !p.goal) return fail("missing goal");
  if (!sameFormula(p.goal, goal)) return fail("recorded goal differs from the queried goal");

  std::vector<LabelledFormula> expect = dedupe(gamma, nullptr);
  if (expect.size() != p.assumptions.size())
    return fail("assumption count differs: recorded " + std::to_string(p.assumptions.size()) +
                ", given " + std::to_string(expect.size()));
  for (std::size_t i = 0; i < expect.size(); ++i) {
    if (p.assumptions[i].label != expect[i].label)
      return fail("assumption " + std::to_string(i) + " label differs: recorded '" +
                  p.assumptions[i].label + "', given '" + expect[i].label + "'");
    if (!p.assumptions[i].formula || !sameFormula(p.assumptions[i].formula, expect[i].formula))
      return fail("assumption '" + expect[i].label + "' differs from the given formula");
  }

  std::vector<FormulaPtr> cur;
  std::vector<std::string> labels;
  std::set<FormulaPtr, FormulaLess> have;
  for (const LabelledFormula& lf : p.assumptions) {
    cur.push_back(lf.formula);
    labels.push_back(lf.label);
    have.insert(alphaNormalize(lf.formula));
  }

  for (std::size_t ri = 0; ri < p.rounds.size(); ++ri) {
    const ExpansionRound& round = p.rounds[ri];
    if (round.labels.size() != round.applied.size())
      return fail("round " + std::to_string(ri) + ": label count differs from instance count");
    for (std::size_t i = 0; i < round.applied.size(); ++i) {
      const SchemaInstance& inst = round.applied[i];
      std::string where = "round " + std::to_string(ri) + " instance " + std::to_string(i) +
                          " (" + schemaName(inst.id) + ")";
      DischargeFn d = makeCheckDischarge(inst, cfg, depth, deadline, &env);
      InstanceCheck ic = verifyInstance(inst, cur, env.sig, env.tl, d);
      if (!ic.ok) return fail(where + ": " + ic.message);
      if (!have.insert(alphaNormalize(inst.conclusion)).second)
        return fail(where + ": conclusion already present");
      cur.push_back(inst.conclusion);
      labels.push_back(round.labels[i]);
    }
  }

  if (p.shadowed_gamma.size() != cur.size())
    return fail("shadowed set size " + std::to_string(p.shadowed_gamma.size()) +
                " differs from replayed set size " + std::to_string(cur.size()));

  ShadowMap map = ShadowMap::restore(p.shadow_atoms);
  for (std::size_t i = 0; i < cur.size(); ++i) {
    FormulaPtr s = shadow(cur[i], kShadowLevel, map);
    if (p.shadowed_gamma[i].label != labels[i])
      return fail("shadowed formula " + std::to_string(i) + " label differs");
    if (!p.shadowed_gamma[i].formula || !sameFormula(s, p.shadowed_gamma[i].formula))
      return fail("shadowing mismatch at '" + labels[i] + "'");
    if (!sameFormula(expandAtoms(p.shadowed_gamma[i].formula, map), cur[i]))
      return fail("atom expansion does not restore '" + labels[i] + "'");
  }
  if (!p.shadowed_goal) return fail("missing shadowed goal");
  FormulaPtr sgoal = shadow(goal, kShadowLevel, map);
  if (!sameFormula(sgoal, p.shadowed_goal)) return fail("shadowed goal mismatch");
  if (map.size() != p.shadow_atoms.size())
    return fail("recorded atom table does not match the shadowing");

  std::vector<LabelledFormula> shadowed;
  shadowed.reserve(cur.size() + 1);
  for (std::size_t i = 0; i < cur.size(); ++i)
    shadowed.push_back({labels[i], p.shadowed_gamma[i].formula});
  shadowed.push_back({"$goal", mkNot(p.shadowed_goal)});
  Clausifier cl(env.sig);
  std::vector<LabelledClause> expected = cl.run(shadowed);

  if (!p.fol.refutation()) return fail("first-order segment does not end in a refutation");
  CheckResult chk = checkFOLProof(p.fol, expected, env.sig);
  if (!chk.ok)
    return fail("first-order replay failed at step " + std::to_string(chk.failed_step) + ": " +
                chk.message);
  return {true, ""};
}

}  // namespace

ReasonResult prove(const std::vector<LabelledFormula>& gamma, const FormulaPtr& goal,
                   const Signature& sig, const ReasonerConfig& cfg) {
  if (!goal) throw std::invalid_argument("prove: null goal");
  if (!isClosed(goal)) throw std::invalid_argument("prove: goal has free variables");
  for (const LabelledFormula& lf : gamma) {
    if (!lf.formula) throw std::invalid_argument("prove: null assumption");
    if (!isClosed(lf.formula))
      throw std::invalid_argument("prove: assumption '" + lf.label + "' has free variables");
  }

  Env env(sig);
  Clock::time_point deadline =
      Clock::now() + std::chrono::milliseconds(cfg.global_timeout_ms);
  ReasonResult res = proveImpl(gamma, goal, cfg, cfg.recursion_depth, deadline, env);

  if (res.status == ReasonStatus::Fail && env.inner_resource_out) {
    res.status = ReasonStatus::ResourceOut;
    res.note = "fixpoint reached, but an inner attempt hit a resource limit";
    res.trace.push_back(res.note);
  }

  if (res.status == ReasonStatus::Proved) {
    // Every outgoing proof must survive its own replay. A rejection here
    // is a defect in the prover, not in the input, hence the hard stop.
    Clock::time_point check_deadline =
        Clock::now() + std::chrono::milliseconds(cfg.global_timeout_ms);
    MixedCheck mc =
        checkImpl(*res.proof, gamma, goal, cfg, cfg.recursion_depth, check_deadline, env);
    if (!mc.ok)
      throw std::logic_error("prove: produced a proof that fails verification: " + mc.message);
    res.trace.push_back("proof verified");
  }
  return res;
}

MixedCheck checkMixedProof(const MixedProof& p, const std::vector<LabelledFormula>& gamma,
                           const FormulaPtr& goal, const Signature& sig,
                           const ReasonerConfig& cfg) {
  Env env(sig);
  Clock::time_point deadline =
      Clock::now() + std::chrono::milliseconds(cfg.global_timeout_ms);
  return checkImpl(p, gamma, goal, cfg, cfg.recursion_depth, deadline, env);
}

}  // namespace sk
