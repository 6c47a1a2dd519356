#include <doctest.h>

#include <algorithm>

#include "core/subst.hpp"
#include "format/formula_io.hpp"
#include "reasoner/reasoner.hpp"
#include "schemata/schemata.hpp"
#include "schemata/timeline.hpp"
#include "support/gen.hpp"

using namespace sk;

namespace {

FormulaPtr parse(const std::string& text, Signature& sig) {
  std::vector<Diagnostic> diags;
  FormulaPtr f = parseFormula(text, sig, diags);
  REQUIRE(f != nullptr);
  return f;
}

bool eqAlpha(const FormulaPtr& a, const FormulaPtr& b) {
  return equal(alphaNormalize(a), alphaNormalize(b));
}

bool containsF(const std::vector<FormulaPtr>& v, const FormulaPtr& f) {
  return std::any_of(v.begin(), v.end(), [&](const FormulaPtr& g) { return eqAlpha(f, g); });
}

const SchemaInstance* findApplied(const ExpandResult& ex, const FormulaPtr& concl) {
  for (const SchemaInstance& inst : ex.applied)
    if (eqAlpha(inst.conclusion, concl)) return &inst;
  return nullptr;
}

// Unit tests for side conditions stub out the embedded entailment; the
// real discharge is exercised in the reasoner suite.
DischargeFn yesDischarge() {
  return [](const std::vector<FormulaPtr>&, const FormulaPtr&) {
    return std::make_shared<const MixedProof>();
  };
}

ExpansionPolicy only(std::initializer_list<SchemaId> ids) {
  ExpansionPolicy p = ExpansionPolicy::none();
  for (SchemaId id : ids) p.enabled.insert(id);
  return p;
}

bool hasNote(const std::vector<std::string>& notes, const std::string& needle) {
  return std::any_of(notes.begin(), notes.end(), [&](const std::string& n) {
    return n.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_SUITE_BEGIN("schemata");

TEST_CASE("timeline orders moments by prefix and index") {
  Signature sig = testgen::testSignature();
  sig.addConst("now", sig.momentSort());
  sig.addConst("u1", sig.momentSort());
  Timeline tl(sig);

  Term t0 = Term::constant("t0", sig.momentSort());
  Term t1 = Term::constant("t1", sig.momentSort());
  Term t2 = Term::constant("t2", sig.momentSort());
  Term now = Term::constant("now", sig.momentSort());
  Term u1 = Term::constant("u1", sig.momentSort());

  CHECK(tl.comparable(t0, t2));
  CHECK(tl.leq(t0, t1));
  CHECK(tl.leq(t1, t1));
  CHECK_FALSE(tl.leq(t2, t0));
  CHECK(tl.comparable(now, now));
  CHECK(tl.leq(now, now));
  CHECK_FALSE(tl.comparable(now, t0));
  CHECK_FALSE(tl.comparable(t1, u1));
  CHECK(tl.moments().size() >= 5);
}

TEST_CASE("policy survives an options round trip") {
  ExpansionPolicy p = only({SchemaId::R1, SchemaId::R4, SchemaId::RK});
  p.d_max = 2;
  p.r3_depth = 1;
  p.max_rounds = 5;
  ExpansionPolicy q = ExpansionPolicy::fromOptions(p.toOptions());
  CHECK(q.enabled == p.enabled);
  CHECK(q.d_max == 2);
  CHECK(q.r3_depth == 1);
  CHECK(q.max_rounds == 5);

  std::vector<std::string> errs;
  ExpansionPolicy r = ExpansionPolicy::fromOptions(
      {{"schemata", "R1 R99"}, {"d_max", "zero"}, {"max_rounds", "0"}}, &errs);
  CHECK(errs.size() == 3);
  CHECK(r.enabled == only({SchemaId::R1}).enabled);

  ExpansionPolicy none = ExpansionPolicy::fromOptions({{"schemata", "none"}});
  CHECK(none.enabled.empty());
  ExpansionPolicy all = ExpansionPolicy::fromOptions({{"schemata", "all"}});
  CHECK(all.enabled.size() == allSchemata().size());
}

TEST_CASE("R1 mints percept-to-knowledge bridges") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(P a t0 p0)", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R1}), sig, tl);
  FormulaPtr want = parse("(C t0 (implies (P a t0 p0) (K a t0 p0)))", sig);
  CHECK(ex.changed);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(C t0 (implies (P a t0 p0) (K a t0 q0)))", sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);
}

TEST_CASE("R2 mints knowledge-to-belief bridges") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(K a t0 p0)", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R2}), sig, tl);
  FormulaPtr want = parse("(C t0 (implies (K a t0 p0) (B a t0 p0)))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(C t0 (implies (K a t0 p0) (B b t0 p0)))", sig);
  InstanceCheck ic = verifyInstance(bad, gamma, sig, tl);
  CHECK_FALSE(ic.ok);
  CHECK(ic.message.find("agents") != std::string::npos);
}

TEST_CASE("R3 unrolls common knowledge into bounded chains") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t1 p0)", sig)};
  ExpansionPolicy pol = only({SchemaId::R3});
  ExpandResult ex = expand(gamma, pol, sig, tl);

  CHECK(containsF(ex.gamma, parse("(K a t2 p0)", sig)));
  CHECK(containsF(ex.gamma, parse("(K a t1 (K b t2 p0))", sig)));
  // Chains never step before the premise time.
  CHECK_FALSE(containsF(ex.gamma, parse("(K a t0 p0)", sig)));

  const SchemaInstance* inst = findApplied(ex, parse("(K b t2 p0)", sig));
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance early;
  early.id = SchemaId::R3;
  early.premises = gamma;
  early.conclusion = parse("(K a t0 p0)", sig);
  CHECK_FALSE(verifyInstance(early, gamma, sig, tl).ok);

  SchemaInstance off;
  off.id = SchemaId::R3;
  off.premises = gamma;
  off.conclusion = parse("(K a t1 q0)", sig);
  InstanceCheck ic = verifyInstance(off, gamma, sig, tl);
  CHECK_FALSE(ic.ok);
  CHECK(ic.message.find("core") != std::string::npos);
}

TEST_CASE("R4 drops the knowledge operator") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(K a t1 p0)", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R4}), sig, tl);
  CHECK(containsF(ex.gamma, parse("p0", sig)));

  const SchemaInstance* inst = findApplied(ex, parse("p0", sig));
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("q0", sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);
}

TEST_CASE("R5 distributes knowledge over a common implication") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (K a t1 (implies p0 q0)))", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R5}), sig, tl);
  FormulaPtr want = parse(
      "(implies (C t0 (K a t1 (implies p0 q0))) (implies (K a t1 p0) (K a t1 q0)))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse(
      "(implies (C t0 (K a t1 (implies p0 q0))) (implies (K b t1 p0) (K b t1 q0)))", sig);
  InstanceCheck ic = verifyInstance(bad, gamma, sig, tl);
  CHECK_FALSE(ic.ok);
  CHECK(ic.message.find("agents") != std::string::npos);
}

TEST_CASE("R6 distributes belief over a common implication") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (B a t1 (implies p0 q0)))", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R6}), sig, tl);
  FormulaPtr want = parse(
      "(implies (C t0 (B a t1 (implies p0 q0))) (implies (B a t1 p0) (B a t1 q0)))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse(
      "(implies (C t0 (B a t1 (implies p0 q0))) (implies (B a t1 q0) (B a t1 p0)))", sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);
}

TEST_CASE("R7 distributes common knowledge over a common implication") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (C t1 (implies p0 q0)))", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R7}), sig, tl);
  FormulaPtr want =
      parse("(implies (C t0 (C t1 (implies p0 q0))) (implies (C t1 p0) (C t1 q0)))", sig);
  CHECK(containsF(ex.gamma, want));
  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);
}

TEST_CASE("R8 instantiates common universals at known ground terms") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (forall (x) (P1 x)))", sig),
                                   parse("(Q1 c)", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R8}), sig, tl);
  FormulaPtr want = parse("(C t0 (implies (forall (x) (P1 x)) (P1 c)))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(C t0 (implies (forall (x) (P1 x)) (Q1 c)))", sig);
  InstanceCheck ic = verifyInstance(bad, gamma, sig, tl);
  CHECK_FALSE(ic.ok);
  CHECK(ic.message.find("witness") != std::string::npos);
}

TEST_CASE("R8 respects the bound variable's sort") {
  Signature sig = testgen::testSignature();
  SortId veh = sig.addSort("Vehicle");
  sig.addConst("car", veh);
  sig.addPred("Fast", {veh});
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (forall (x Vehicle) (Fast x)))", sig),
                                   parse("(P1 c)", sig), parse("(Fast car)", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R8}), sig, tl);
  CHECK(containsF(ex.gamma,
                  parse("(C t0 (implies (forall (x Vehicle) (Fast x)) (Fast car)))", sig)));
  // The root-sorted constant c is not a Vehicle, so no instance mentions it.
  for (const SchemaInstance& inst : ex.applied)
    CHECK(writeFormula(inst.conclusion, sig).find("(Fast c)") == std::string::npos);
}

TEST_CASE("R9 mints contraposition for common biconditionals") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (iff p0 q0))", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R9}), sig, tl);
  FormulaPtr want =
      parse("(C t0 (implies (iff p0 q0) (implies (not q0) (not p0))))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(C t0 (implies (iff p0 q0) (implies (not p0) (not q0))))", sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);
}

TEST_CASE("R10 curries packed implications") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(C t0 (implies (and p0 (and q0 r0)) s0))", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R10}), sig, tl);
  FormulaPtr want = parse(
      "(C t0 (implies (implies (and p0 (and q0 r0)) s0)"
      " (implies p0 (implies q0 (implies r0 s0)))))",
      sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse(
      "(C t0 (implies (implies (and p0 (and q0 r0)) s0)"
      " (implies q0 (implies p0 (implies r0 s0)))))",
      sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);
}

TEST_CASE("R12 turns private speech into nested belief") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(S a b t0 p0)", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R12}), sig, tl);
  FormulaPtr want = parse("(B b t0 (B a t0 p0))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(B a t0 (B b t0 p0))", sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);
}

TEST_CASE("R13 moves an intention's happening to the intender's present") {
  Signature sig = testgen::testSignature();
  sig.addConst("wave", sig.actionTypeSort());
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(I a t0 (happens (action b wave) t1))", sig)};
  ExpandResult ex = expand(gamma, only({SchemaId::R13}), sig, tl);
  FormulaPtr want = parse("(P a t0 (happens (action b wave) t0))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(P a t0 (happens (action b wave) t1))", sig);
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);

  // Payloads that are not happens(action(...), t) atoms never trigger.
  std::vector<FormulaPtr> quiet = {parse("(I a t0 p0)", sig)};
  CHECK_FALSE(expand(quiet, only({SchemaId::R13}), sig, tl).changed);
}

TEST_CASE("R14 concludes known intention from believed obligation") {
  Signature sig = testgen::testSignature();
  sig.addConst("wave", sig.actionTypeSort());
  Timeline tl(sig);
  std::string oblig = "(O a t0 p0 (happens (action a wave) t0))";
  std::vector<FormulaPtr> gamma = {
      parse(oblig, sig),
      parse("(B a t0 p0)", sig),
      parse("(B a t0 " + oblig + ")", sig),
  };
  ExpandResult ex = expand(gamma, only({SchemaId::R14}), sig, tl);
  FormulaPtr want = parse("(K a t0 (I a t0 (happens (action a wave) t0)))", sig);
  CHECK(containsF(ex.gamma, want));

  const SchemaInstance* inst = findApplied(ex, want);
  REQUIRE(inst != nullptr);
  REQUIRE(inst->premises.size() == 3);
  CHECK(verifyInstance(*inst, gamma, sig, tl).ok);

  SchemaInstance bad = *inst;
  bad.premises[1] = bad.premises[0];  // belief in the obligation goes missing
  CHECK_FALSE(verifyInstance(bad, gamma, sig, tl).ok);

  // Without the belief legs nothing fires.
  std::vector<FormulaPtr> bare = {parse(oblig, sig)};
  CHECK_FALSE(expand(bare, only({SchemaId::R14}), sig, tl).changed);
}

TEST_CASE("knowledge closure collects premises up to the target time") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(K a t1 p0)", sig)};
  FormulaPtr target = parse("(K a t2 p0)", sig);

  ExpandHooks hooks;
  hooks.hints = {target};
  hooks.discharge = yesDischarge();
  ExpandResult ex = expand(gamma, only({SchemaId::RK}), sig, tl, &hooks);
  CHECK(containsF(ex.gamma, target));

  const SchemaInstance* inst = findApplied(ex, target);
  REQUIRE(inst != nullptr);
  CHECK(verifyInstance(*inst, gamma, sig, tl, yesDischarge()).ok);
  CHECK(hasNote(inst->side_conditions, "t1 <= t2"));

  // Without a discharge callback the step cannot be trusted.
  CHECK_FALSE(verifyInstance(*inst, gamma, sig, tl).ok);

  // The closure never reaches backwards in time.
  ExpandHooks back;
  back.hints = {parse("(K a t0 p0)", sig)};
  back.discharge = yesDischarge();
  ExpandResult none = expand(gamma, only({SchemaId::RK}), sig, tl, &back);
  CHECK_FALSE(none.changed);

  SchemaInstance bad = *inst;
  bad.conclusion = parse("(K a t0 p0)", sig);
  InstanceCheck ic = verifyInstance(bad, gamma, sig, tl, yesDischarge());
  CHECK_FALSE(ic.ok);
  CHECK(ic.message.find("not <=") != std::string::npos);

  // Another agent's knowledge contributes nothing.
  std::vector<FormulaPtr> other = {parse("(K b t1 p0)", sig)};
  ExpandHooks fwd;
  fwd.hints = {target};
  fwd.discharge = yesDischarge();
  CHECK_FALSE(expand(other, only({SchemaId::RK}), sig, tl, &fwd).changed);
}

TEST_CASE("belief closure admits percepts only through the bridge policies") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(P a t1 p0)", sig)};
  FormulaPtr target = parse("(B a t2 p0)", sig);

  ExpandHooks hooks;
  hooks.hints = {target};
  hooks.discharge = yesDischarge();

  ExpandResult closed = expand(gamma, only({SchemaId::RB}), sig, tl, &hooks);
  CHECK_FALSE(closed.changed);

  ExpandResult open =
      expand(gamma, only({SchemaId::RB, SchemaId::R1, SchemaId::R2}), sig, tl, &hooks);
  CHECK(containsF(open.gamma, target));
  const SchemaInstance* inst = findApplied(open, target);
  REQUIRE(inst != nullptr);
  CHECK(hasNote(inst->side_conditions, "base via R1 R2"));

  SUBCASE("belief premises cannot feed a knowledge closure") {
    std::vector<FormulaPtr> bgamma = {parse("(B a t1 p0)", sig)};
    SchemaInstance cross;
    cross.id = SchemaId::RK;
    cross.premises = bgamma;
    cross.conclusion = parse("(K a t2 p0)", sig);
    InstanceCheck ic = verifyInstance(cross, bgamma, sig, tl, yesDischarge());
    CHECK_FALSE(ic.ok);
    CHECK(ic.message.find("belief premise") != std::string::npos);
  }
}

TEST_CASE("incomparable moments are logged, never ordered") {
  Signature sig = testgen::testSignature();
  sig.addConst("now", sig.momentSort());
  Timeline tl(sig);
  std::vector<FormulaPtr> gamma = {parse("(K a now p0)", sig)};
  ExpandHooks hooks;
  hooks.hints = {parse("(K a t1 p0)", sig)};
  hooks.discharge = yesDischarge();
  ExpandResult ex = expand(gamma, only({SchemaId::RK}), sig, tl, &hooks);
  CHECK_FALSE(ex.changed);
  CHECK(hasNote(ex.notes, "incomparable times: now vs t1"));
}

TEST_CASE("depth cap prunes tall mints and says so") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  ExpansionPolicy pol = only({SchemaId::R3});
  pol.r3_depth = 3;
  pol.d_max = 1;
  std::vector<FormulaPtr> gamma = {parse("(C t0 p0)", sig)};
  ExpandResult ex = expand(gamma, pol, sig, tl);
  CHECK(hasNote(ex.notes, "DepthExceeded"));
  CHECK(containsF(ex.gamma, parse("(K a t1 p0)", sig)));
  CHECK_FALSE(containsF(ex.gamma, parse("(K a t1 (K a t1 p0))", sig)));
}

TEST_CASE("expansion keeps the input as a prefix") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  testgen::Gen gen(sig);
  ExpansionPolicy pol = ExpansionPolicy::all();
  pol.enabled.erase(SchemaId::RK);
  pol.enabled.erase(SchemaId::RB);
  pol.d_max = 2;
  pol.r3_depth = 1;
  for (int i = 0; i < 40; ++i) {
    std::vector<FormulaPtr> gamma = {gen.modal(2), gen.modal(2)};
    ExpandResult ex = expand(gamma, pol, sig, tl);
    REQUIRE(ex.gamma.size() >= gamma.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) CHECK(equal(ex.gamma[j], gamma[j]));
    CHECK(ex.gamma.size() == gamma.size() + ex.applied.size());
  }
}

TEST_CASE("one round never adds the same conclusion twice") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  testgen::Gen gen(sig);
  ExpansionPolicy pol = ExpansionPolicy::all();
  pol.enabled.erase(SchemaId::RK);
  pol.enabled.erase(SchemaId::RB);
  pol.d_max = 2;
  pol.r3_depth = 1;
  for (int i = 0; i < 40; ++i) {
    std::vector<FormulaPtr> gamma = {gen.modal(2), gen.modal(2), gen.modal(1)};
    ExpandResult ex = expand(gamma, pol, sig, tl);
    std::set<FormulaPtr, FormulaLess> seen;
    for (const FormulaPtr& f : ex.gamma) CHECK(seen.insert(alphaNormalize(f)).second);
  }
}

TEST_CASE("iterated expansion reaches a fixpoint") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  testgen::Gen gen(sig);
  ExpansionPolicy pol = ExpansionPolicy::all();
  pol.enabled.erase(SchemaId::RK);
  pol.enabled.erase(SchemaId::RB);
  pol.d_max = 2;
  pol.r3_depth = 1;
  for (int i = 0; i < 15; ++i) {
    std::vector<FormulaPtr> gamma = {gen.modal(2), gen.modal(2)};
    bool settled = false;
    for (int round = 0; round < 64; ++round) {
      ExpandResult ex = expand(gamma, pol, sig, tl);
      if (!ex.changed) {
        settled = true;
        // A fixpoint stays a fixpoint.
        CHECK_FALSE(expand(ex.gamma, pol, sig, tl).changed);
        break;
      }
      gamma = std::move(ex.gamma);
    }
    CHECK_MESSAGE(settled, "no fixpoint after 64 rounds, seed case " << i);
  }
}

TEST_CASE("a larger premise set expands to a larger set") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  testgen::Gen gen(sig);
  ExpansionPolicy pol = ExpansionPolicy::all();
  pol.enabled.erase(SchemaId::RK);
  pol.enabled.erase(SchemaId::RB);
  pol.d_max = 2;
  pol.r3_depth = 1;
  for (int i = 0; i < 25; ++i) {
    std::vector<FormulaPtr> small = {gen.modal(2)};
    std::vector<FormulaPtr> large = small;
    large.push_back(gen.modal(2));
    ExpandResult exs = expand(small, pol, sig, tl);
    ExpandResult exl = expand(large, pol, sig, tl);
    for (const FormulaPtr& f : exs.gamma) CHECK(containsF(exl.gamma, f));
  }
}

TEST_CASE("every applied instance survives verification") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  testgen::Gen gen(sig);
  ExpansionPolicy pol = ExpansionPolicy::all();
  pol.enabled.erase(SchemaId::RK);
  pol.enabled.erase(SchemaId::RB);
  pol.d_max = 2;
  pol.r3_depth = 1;
  for (int i = 0; i < 40; ++i) {
    std::vector<FormulaPtr> gamma = {gen.modal(2), gen.modal(2)};
    ExpandResult ex = expand(gamma, pol, sig, tl);
    for (const SchemaInstance& inst : ex.applied) {
      InstanceCheck ic = verifyInstance(inst, gamma, sig, tl);
      CHECK_MESSAGE(ic.ok, schemaName(inst.id) << " rejected: " << ic.message);
    }
  }
}

TEST_CASE("premises must come from the premise set") {
  Signature sig = testgen::testSignature();
  Timeline tl(sig);
  SchemaInstance inst;
  inst.id = SchemaId::R4;
  inst.premises = {parse("(K a t0 p0)", sig)};
  inst.conclusion = parse("p0", sig);
  InstanceCheck ic = verifyInstance(inst, {}, sig, tl);
  CHECK_FALSE(ic.ok);
  CHECK(ic.message.find("premise") != std::string::npos);
}

TEST_SUITE_END();
