#include "schemata/schemata.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "core/subst.hpp"
#include "format/formula_io.hpp"

namespace sk {

namespace {

const std::vector<std::pair<SchemaId, const char*>>& catalog() {
  static const std::vector<std::pair<SchemaId, const char*>> table = {
      {SchemaId::RK, "R_K"},  {SchemaId::RB, "R_B"},  {SchemaId::R1, "R1"},
      {SchemaId::R2, "R2"},   {SchemaId::R3, "R3"},   {SchemaId::R4, "R4"},
      {SchemaId::R5, "R5"},   {SchemaId::R6, "R6"},   {SchemaId::R7, "R7"},
      {SchemaId::R8, "R8"},   {SchemaId::R9, "R9"},   {SchemaId::R10, "R10"},
      {SchemaId::R12, "R12"}, {SchemaId::R13, "R13"}, {SchemaId::R14, "R14"},
  };
  return table;
}

}  // namespace

const char* schemaName(SchemaId id) {
  for (const auto& [sid, name] : catalog())
    if (sid == id) return name;
  return "?";
}

std::optional<SchemaId> schemaFromName(const std::string& name) {
  for (const auto& [sid, sname] : catalog())
    if (name == sname) return sid;
  return std::nullopt;
}

const std::vector<SchemaId>& allSchemata() {
  static const std::vector<SchemaId> ids = [] {
    std::vector<SchemaId> v;
    for (const auto& [sid, name] : catalog()) v.push_back(sid);
    return v;
  }();
  return ids;
}

ExpansionPolicy ExpansionPolicy::all() {
  ExpansionPolicy p;
  for (SchemaId id : allSchemata()) p.enabled.insert(id);
  return p;
}

ExpansionPolicy ExpansionPolicy::none() { return ExpansionPolicy{}; }

std::vector<std::pair<std::string, std::string>> ExpansionPolicy::toOptions() const {
  std::string names;
  for (SchemaId id : allSchemata()) {
    if (!has(id)) continue;
    if (!names.empty()) names += ' ';
    names += schemaName(id);
  }
  if (names.empty()) names = "none";
  return {
      {"schemata", names},
      {"d_max", std::to_string(d_max)},
      {"r3_depth", std::to_string(r3_depth)},
      {"max_rounds", std::to_string(max_rounds)},
  };
}

ExpansionPolicy ExpansionPolicy::fromOptions(
    const std::vector<std::pair<std::string, std::string>>& opts,
    std::vector<std::string>* errors) {
  ExpansionPolicy p = ExpansionPolicy::all();
  auto bad = [&](const std::string& msg) {
    if (errors) errors->push_back(msg);
  };
  auto parseInt = [&](const std::string& key, const std::string& val, int lo, int& out) {
    try {
      std::size_t used = 0;
      int v = std::stoi(val, &used);
      if (used != val.size() || v < lo) throw std::invalid_argument(val);
      out = v;
    } catch (const std::exception&) {
      bad("option " + key + ": expected integer >= " + std::to_string(lo) + ", got '" + val + "'");
    }
  };
  for (const auto& [key, val] : opts) {
    if (key == "schemata") {
      p.enabled.clear();
      if (val == "none") continue;
      if (val == "all") {
        p.enabled = ExpansionPolicy::all().enabled;
        continue;
      }
      std::istringstream in(val);
      std::string tok;
      while (in >> tok) {
        auto id = schemaFromName(tok);
        if (!id) {
          bad("option schemata: unknown schema '" + tok + "'");
          continue;
        }
        p.enabled.insert(*id);
      }
    } else if (key == "d_max") {
      parseInt(key, val, 1, p.d_max);
    } else if (key == "r3_depth") {
      parseInt(key, val, 1, p.r3_depth);
    } else if (key == "max_rounds") {
      parseInt(key, val, 1, p.max_rounds);
    }
  }
  return p;
}

namespace {

FormulaPtr alphaKey(const FormulaPtr& f) { return alphaNormalize(f); }

bool eqf(const FormulaPtr& a, const FormulaPtr& b) {
  return equal(alphaNormalize(a), alphaNormalize(b));
}

void flattenAnd(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == Formula::Kind::And) {
    flattenAnd(f->sub[0], out);
    flattenAnd(f->sub[1], out);
    return;
  }
  out.push_back(f);
}

FormulaPtr curry(const std::vector<FormulaPtr>& antecedents, FormulaPtr tail) {
  FormulaPtr r = std::move(tail);
  for (auto it = antecedents.rbegin(); it != antecedents.rend(); ++it) r = mkImplies(*it, r);
  return r;
}

// Shared machinery for one applicable() pass.
struct Enumerator {
  const std::vector<FormulaPtr>& gamma;
  const ExpansionPolicy& pol;
  const Signature& sig;
  const Timeline& tl;
  const ExpandHooks* hooks;
  std::vector<std::string>* notes;

  std::map<FormulaPtr, FormulaPtr, FormulaLess> members;  // alpha key -> first member
  std::vector<FormulaPtr> occs;                           // closed occurrences, ordered
  std::vector<FormulaPtr> pool;                           // occs plus hint occurrences
  std::vector<Term> agents;
  std::vector<SchemaInstance> out;
  std::set<std::string> emitted;

  Enumerator(const std::vector<FormulaPtr>& gamma_, const ExpansionPolicy& pol_,
             const Signature& sig_, const Timeline& tl_, const ExpandHooks* hooks_,
             std::vector<std::string>* notes_)
      : gamma(gamma_), pol(pol_), sig(sig_), tl(tl_), hooks(hooks_), notes(notes_) {
    for (const FormulaPtr& m : gamma) members.emplace(alphaKey(m), m);
    std::set<FormulaPtr, FormulaLess> seen;
    auto sweep = [&](const FormulaPtr& f, std::vector<FormulaPtr>& into) {
      forEachSubformula(f, [&](const FormulaPtr& g) {
        if (!isClosed(g)) return;
        if (seen.insert(alphaKey(g)).second) into.push_back(g);
      });
    };
    for (const FormulaPtr& m : gamma) sweep(m, occs);
    pool = occs;
    if (hooks)
      for (const FormulaPtr& h : hooks->hints) sweep(h, pool);
    for (const ConstDecl& c : sig.consts())
      if (sig.subsort(c.sort, sig.agentSort())) agents.push_back(Term::constant(c.name, c.sort));
  }

  void note(const std::string& s) {
    if (notes) notes->push_back(s);
  }

  bool inGamma(const FormulaPtr& f) const { return members.count(alphaKey(f)) != 0; }

  const FormulaPtr* member(const FormulaPtr& f) const {
    auto it = members.find(alphaKey(f));
    return it == members.end() ? nullptr : &it->second;
  }

  std::string renderF(const FormulaPtr& f) const { return writeFormula(f, sig); }

  void emit(SchemaInstance inst) {
    if (inGamma(inst.conclusion)) return;
    if (modalDepth(inst.conclusion) > pol.d_max) {
      note(std::string("DepthExceeded: ") + schemaName(inst.id) + " pruned " +
           renderF(inst.conclusion));
      return;
    }
    std::string key = schemaName(inst.id);
    key += '|';
    key += renderF(alphaKey(inst.conclusion));
    for (const FormulaPtr& p : inst.premises) {
      key += '|';
      key += renderF(alphaKey(p));
    }
    if (!emitted.insert(key).second) return;
    out.push_back(std::move(inst));
  }

  // True when both times are constants the timeline can order with a <= b;
  // logs incomparable pairs once.
  bool timeLeq(const Term& a, const Term& b, const char* where) {
    if (!tl.comparable(a, b)) {
      note(std::string("incomparable times: ") + renderTerm(a) + " vs " + renderTerm(b) + " (" +
           where + ")");
      return false;
    }
    return tl.leq(a, b);
  }

  // --- closure schemata ----------------------------------------------------

  void closure(SchemaId id) {
    if (!pol.has(id) || !hooks || !hooks->discharge) return;
    const bool belief = id == SchemaId::RB;
    const Formula::Kind target = belief ? Formula::Kind::Believes : Formula::Kind::Knows;
    for (const FormulaPtr& cand : pool) {
      if (cand->kind != target || inGamma(cand)) continue;
      const Term& a = cand->terms[0];
      const Term& t2 = cand->terms[1];
      const FormulaPtr& phi = cand->sub[0];
      std::vector<FormulaPtr> premises;
      std::vector<FormulaPtr> base;
      std::vector<std::string> sides;
      std::set<FormulaPtr, FormulaLess> base_seen;
      auto admit = [&](const FormulaPtr& m, const FormulaPtr& payload, const Term& when,
                       const char* via) {
        if (!timeLeq(when, t2, schemaName(id))) return;
        if (!base_seen.insert(alphaKey(payload)).second) return;
        premises.push_back(m);
        base.push_back(payload);
        std::string s = renderTerm(when) + " <= " + renderTerm(t2);
        if (via) s += std::string(" [base via ") + via + "]";
        sides.push_back(std::move(s));
      };
      for (const FormulaPtr& m : gamma) {
        switch (m->kind) {
          case Formula::Kind::Knows:
            if (compare(m->terms[0], a) != 0) break;
            if (belief ? pol.has(SchemaId::R2) : true)
              admit(m, m->sub[0], m->terms[1], belief ? "R2" : nullptr);
            break;
          case Formula::Kind::Believes:
            if (belief && compare(m->terms[0], a) == 0) admit(m, m->sub[0], m->terms[1], nullptr);
            break;
          case Formula::Kind::Perceives:
            if (compare(m->terms[0], a) != 0) break;
            if (belief ? (pol.has(SchemaId::R1) && pol.has(SchemaId::R2)) : pol.has(SchemaId::R1))
              admit(m, m->sub[0], m->terms[1], belief ? "R1 R2" : "R1");
            break;
          case Formula::Kind::Common:
            if (belief ? (pol.has(SchemaId::R3) && pol.has(SchemaId::R2)) : pol.has(SchemaId::R3))
              admit(m, m->sub[0], m->terms[0], belief ? "R3 R2" : "R3");
            break;
          default:
            break;
        }
      }
      if (base.empty()) continue;
      std::shared_ptr<const MixedProof> sub = hooks->discharge(base, phi);
      if (!sub) continue;
      sides.push_back("base |- phi re-proved");
      SchemaInstance inst;
      inst.id = id;
      inst.premises = std::move(premises);
      inst.conclusion = cand;
      inst.binding = {{"a", renderTerm(a)}, {"t2", renderTerm(t2)}, {"phi", renderF(phi)}};
      inst.side_conditions = std::move(sides);
      inst.subproof = std::move(sub);
      emit(std::move(inst));
    }
  }

  // --- axiom generators ----------------------------------------------------

  void mintR1R2(SchemaId id) {
    if (!pol.has(id)) return;
    const bool fromPercept = id == SchemaId::R1;
    const Formula::Kind trigger = fromPercept ? Formula::Kind::Perceives : Formula::Kind::Knows;
    const Formula::Kind stronger = fromPercept ? Formula::Kind::Knows : Formula::Kind::Believes;
    for (const FormulaPtr& occ : occs) {
      if (occ->kind != trigger) continue;
      const Term& a = occ->terms[0];
      const Term& t = occ->terms[1];
      FormulaPtr concl =
          mkModal(Formula::Kind::Common, {t}, mkImplies(occ, mkModal(stronger, {a, t}, occ->sub[0])));
      SchemaInstance inst;
      inst.id = id;
      inst.conclusion = std::move(concl);
      inst.binding = {{"a", renderTerm(a)}, {"t", renderTerm(t)}, {"phi", renderF(occ->sub[0])}};
      emit(std::move(inst));
    }
  }

  void mintR3() {
    if (!pol.has(SchemaId::R3)) return;
    for (const FormulaPtr& m : gamma) {
      if (m->kind != Formula::Kind::Common) continue;
      const Term& t = m->terms[0];
      const FormulaPtr& phi = m->sub[0];
      std::vector<Term> times;
      for (const Term& tau : tl.moments())
        if (tl.comparable(t, tau) && tl.leq(t, tau)) times.push_back(tau);
      if (agents.empty() || times.empty()) continue;
      int max_n = std::min(pol.r3_depth, pol.d_max - modalDepth(phi));
      if (max_n < pol.r3_depth)
        note(std::string("DepthExceeded: R3 chains past length ") + std::to_string(max_n) +
             " pruned on " + renderF(m));
      long budget = 4096;
      for (int n = 1; n <= max_n && budget > 0; ++n) {
        // Tuple (a_1,t_1,...,a_n,t_n) in declaration-order lexicographic order.
        std::vector<std::size_t> idx(static_cast<std::size_t>(n) * 2, 0);
        const std::size_t na = agents.size(), nt = times.size();
        bool done = false;
        while (!done && budget-- > 0) {
          FormulaPtr concl = phi;
          std::vector<std::string> sides;
          for (int i = n - 1; i >= 0; --i) {
            const Term& ai = agents[idx[2 * static_cast<std::size_t>(i)]];
            const Term& ti = times[idx[2 * static_cast<std::size_t>(i) + 1]];
            concl = mkModal(Formula::Kind::Knows, {ai, ti}, concl);
            sides.push_back(renderTerm(t) + " <= " + renderTerm(ti));
          }
          std::reverse(sides.begin(), sides.end());
          SchemaInstance inst;
          inst.id = SchemaId::R3;
          inst.premises = {m};
          inst.conclusion = std::move(concl);
          inst.binding = {{"t", renderTerm(t)}, {"phi", renderF(phi)},
                          {"n", std::to_string(n)}};
          inst.side_conditions = std::move(sides);
          emit(std::move(inst));
          // Odometer over the tuple, rightmost position fastest.
          std::size_t pos = idx.size();
          while (pos > 0) {
            --pos;
            std::size_t limit = (pos % 2 == 0) ? na : nt;
            if (++idx[pos] < limit) break;
            idx[pos] = 0;
            if (pos == 0) done = true;
          }
        }
        if (budget <= 0) note("R3 instance budget exhausted on " + renderF(m));
      }
    }
  }

  void mintR4() {
    if (!pol.has(SchemaId::R4)) return;
    for (const FormulaPtr& m : gamma) {
      if (m->kind != Formula::Kind::Knows) continue;
      SchemaInstance inst;
      inst.id = SchemaId::R4;
      inst.premises = {m};
      inst.conclusion = m->sub[0];
      inst.binding = {{"a", renderTerm(m->terms[0])},
                      {"t", renderTerm(m->terms[1])},
                      {"phi", renderF(m->sub[0])}};
      emit(std::move(inst));
    }
  }

  // R5/R6/R7: common knowledge of an implication under an operator
  // distributes over that operator. The conclusion keeps the trigger
  // occurrence verbatim as its antecedent.
  void mintDistribution(SchemaId id) {
    if (!pol.has(id)) return;
    const Formula::Kind inner = id == SchemaId::R5   ? Formula::Kind::Knows
                                : id == SchemaId::R6 ? Formula::Kind::Believes
                                                     : Formula::Kind::Common;
    for (const FormulaPtr& occ : occs) {
      if (occ->kind != Formula::Kind::Common) continue;
      const FormulaPtr& wrapped = occ->sub[0];
      if (wrapped->kind != inner) continue;
      const FormulaPtr& imp = wrapped->sub[0];
      if (imp->kind != Formula::Kind::Implies) continue;
      std::vector<Term> lhs_idx = wrapped->terms;  // [a, t1] or [t1]
      FormulaPtr p1 = mkModal(inner, lhs_idx, imp->sub[0]);
      FormulaPtr p2 = mkModal(inner, lhs_idx, imp->sub[1]);
      SchemaInstance inst;
      inst.id = id;
      inst.conclusion = mkImplies(occ, mkImplies(std::move(p1), std::move(p2)));
      inst.binding = {{"phi1", renderF(imp->sub[0])}, {"phi2", renderF(imp->sub[1])}};
      emit(std::move(inst));
    }
  }

  void mintR8() {
    if (!pol.has(SchemaId::R8)) return;
    std::vector<Term> ground;
    std::set<std::string> gseen;
    for (const FormulaPtr& m : gamma)
      for (const Term& t : groundTerms(m))
        if (gseen.insert(renderTerm(t)).second) ground.push_back(t);
    for (const FormulaPtr& occ : occs) {
      if (occ->kind != Formula::Kind::Common) continue;
      const FormulaPtr& all = occ->sub[0];
      if (all->kind != Formula::Kind::Forall) continue;
      const Term& t = occ->terms[0];
      for (const Term& tau : ground) {
        if (all->var_sort != kNoSort && all->var_sort != sig.rootSort() &&
            !sig.subsort(sig.termSort(tau), all->var_sort))
          continue;
        FormulaPtr inst_body = substituteVar(all->sub[0], all->name, tau);
        SchemaInstance inst;
        inst.id = SchemaId::R8;
        inst.conclusion = mkModal(Formula::Kind::Common, {t}, mkImplies(all, inst_body));
        inst.binding = {{"x", all->name}, {"tau", renderTerm(tau)}};
        emit(std::move(inst));
      }
    }
  }

  void mintR9() {
    if (!pol.has(SchemaId::R9)) return;
    for (const FormulaPtr& occ : occs) {
      if (occ->kind != Formula::Kind::Common) continue;
      const FormulaPtr& iff = occ->sub[0];
      if (iff->kind != Formula::Kind::Iff) continue;
      FormulaPtr contra = mkImplies(mkNot(iff->sub[1]), mkNot(iff->sub[0]));
      SchemaInstance inst;
      inst.id = SchemaId::R9;
      inst.conclusion =
          mkModal(Formula::Kind::Common, {occ->terms[0]}, mkImplies(iff, std::move(contra)));
      inst.binding = {{"phi1", renderF(iff->sub[0])}, {"phi2", renderF(iff->sub[1])}};
      emit(std::move(inst));
    }
  }

  void mintR10() {
    if (!pol.has(SchemaId::R10)) return;
    for (const FormulaPtr& occ : occs) {
      if (occ->kind != Formula::Kind::Common) continue;
      const FormulaPtr& imp = occ->sub[0];
      if (imp->kind != Formula::Kind::Implies || imp->sub[0]->kind != Formula::Kind::And) continue;
      std::vector<FormulaPtr> conjuncts;
      flattenAnd(imp->sub[0], conjuncts);
      SchemaInstance inst;
      inst.id = SchemaId::R10;
      inst.conclusion = mkModal(Formula::Kind::Common, {occ->terms[0]},
                                mkImplies(imp, curry(conjuncts, imp->sub[1])));
      inst.binding = {{"n", std::to_string(conjuncts.size())}, {"phi", renderF(imp->sub[1])}};
      emit(std::move(inst));
    }
  }

  void mintR12() {
    if (!pol.has(SchemaId::R12)) return;
    for (const FormulaPtr& m : gamma) {
      if (m->kind != Formula::Kind::Says) continue;
      const Term& s = m->terms[0];
      const Term& h = m->terms[1];
      const Term& t = m->terms[2];
      FormulaPtr innerB = mkModal(Formula::Kind::Believes, {s, t}, m->sub[0]);
      SchemaInstance inst;
      inst.id = SchemaId::R12;
      inst.premises = {m};
      inst.conclusion = mkModal(Formula::Kind::Believes, {h, t}, std::move(innerB));
      inst.binding = {{"s", renderTerm(s)},
                      {"h", renderTerm(h)},
                      {"t", renderTerm(t)},
                      {"phi", renderF(m->sub[0])}};
      emit(std::move(inst));
    }
  }

  void mintR13() {
    if (!pol.has(SchemaId::R13)) return;
    for (const FormulaPtr& m : gamma) {
      if (m->kind != Formula::Kind::Intends) continue;
      const FormulaPtr& body = m->sub[0];
      if (body->kind != Formula::Kind::Atom || body->name != "happens" || body->terms.size() != 2)
        continue;
      const Term& act = body->terms[0];
      if (!act.isApp() || act.name != "action") continue;
      const Term& t = m->terms[1];
      SchemaInstance inst;
      inst.id = SchemaId::R13;
      inst.premises = {m};
      inst.conclusion =
          mkModal(Formula::Kind::Perceives, {m->terms[0], t}, mkAtom("happens", {act, t}));
      inst.binding = {{"a", renderTerm(m->terms[0])},
                      {"t", renderTerm(t)},
                      {"tprime", renderTerm(body->terms[1])}};
      emit(std::move(inst));
    }
  }

  void mintR14() {
    if (!pol.has(SchemaId::R14)) return;
    for (const FormulaPtr& m : gamma) {
      if (m->kind != Formula::Kind::Ought) continue;
      const Term& a = m->terms[0];
      const Term& t = m->terms[1];
      const FormulaPtr& phi = m->sub[0];
      const FormulaPtr& chi = m->sub[1];
      const FormulaPtr* b1 = member(mkModal(Formula::Kind::Believes, {a, t}, phi));
      const FormulaPtr* b2 = member(mkModal(Formula::Kind::Believes, {a, t}, m));
      if (!b1 || !b2) continue;
      FormulaPtr intent = mkModal(Formula::Kind::Intends, {a, t}, chi);
      SchemaInstance inst;
      inst.id = SchemaId::R14;
      inst.premises = {*b1, *b2, m};
      inst.conclusion = mkModal(Formula::Kind::Knows, {a, t}, std::move(intent));
      inst.binding = {{"a", renderTerm(a)}, {"t", renderTerm(t)}, {"chi", renderF(chi)}};
      emit(std::move(inst));
    }
  }

  void run() {
    closure(SchemaId::RK);
    closure(SchemaId::RB);
    mintR1R2(SchemaId::R1);
    mintR1R2(SchemaId::R2);
    mintR3();
    mintR4();
    mintDistribution(SchemaId::R5);
    mintDistribution(SchemaId::R6);
    mintDistribution(SchemaId::R7);
    mintR8();
    mintR9();
    mintR10();
    mintR12();
    mintR13();
    mintR14();
  }
};

}  // namespace

std::vector<SchemaInstance> applicable(const std::vector<FormulaPtr>& gamma,
                                       const ExpansionPolicy& pol, const Signature& sig,
                                       const Timeline& tl, const ExpandHooks* hooks,
                                       std::vector<std::string>* notes) {
  Enumerator e(gamma, pol, sig, tl, hooks, notes);
  e.run();
  return std::move(e.out);
}

ExpandResult expand(const std::vector<FormulaPtr>& gamma, const ExpansionPolicy& pol,
                    const Signature& sig, const Timeline& tl, const ExpandHooks* hooks) {
  ExpandResult r;
  r.gamma = gamma;
  std::vector<SchemaInstance> insts = applicable(gamma, pol, sig, tl, hooks, &r.notes);
  std::set<FormulaPtr, FormulaLess> have;
  for (const FormulaPtr& m : gamma) have.insert(alphaNormalize(m));
  for (SchemaInstance& inst : insts) {
    if (!have.insert(alphaNormalize(inst.conclusion)).second) continue;
    r.gamma.push_back(inst.conclusion);
    r.applied.push_back(std::move(inst));
    r.changed = true;
  }
  return r;
}

namespace {

InstanceCheck reject(const std::string& msg) { return {false, msg}; }

const InstanceCheck kAccept{true, ""};

bool sameTerm(const Term& a, const Term& b) { return compare(a, b) == 0; }

}  // namespace

InstanceCheck verifyInstance(const SchemaInstance& inst, const std::vector<FormulaPtr>& gamma,
                             const Signature& sig, const Timeline& tl,
                             const DischargeFn& discharge) {
  std::set<FormulaPtr, FormulaLess> members;
  for (const FormulaPtr& m : gamma) members.insert(alphaNormalize(m));
  auto inGamma = [&](const FormulaPtr& f) { return members.count(alphaNormalize(f)) != 0; };

  if (!inst.conclusion) return reject("missing conclusion");
  for (const FormulaPtr& p : inst.premises) {
    if (!p) return reject("null premise");
    if (!inGamma(p)) return reject("premise not in the premise set: " + writeFormula(p, sig));
  }

  const FormulaPtr& c = inst.conclusion;
  switch (inst.id) {
    case SchemaId::RK:
    case SchemaId::RB: {
      const bool belief = inst.id == SchemaId::RB;
      const Formula::Kind target = belief ? Formula::Kind::Believes : Formula::Kind::Knows;
      if (c->kind != target) return reject("closure conclusion has the wrong operator");
      if (inst.premises.empty()) return reject("closure instance needs premises");
      const Term& a = c->terms[0];
      const Term& t2 = c->terms[1];
      std::vector<FormulaPtr> base;
      for (const FormulaPtr& p : inst.premises) {
        Term when;
        switch (p->kind) {
          case Formula::Kind::Knows:
          case Formula::Kind::Perceives:
            if (!sameTerm(p->terms[0], a)) return reject("closure premise names another agent");
            when = p->terms[1];
            break;
          case Formula::Kind::Believes:
            if (!belief) return reject("belief premise inside a knowledge closure");
            if (!sameTerm(p->terms[0], a)) return reject("closure premise names another agent");
            when = p->terms[1];
            break;
          case Formula::Kind::Common:
            when = p->terms[0];
            break;
          default:
            return reject("closure premise of unusable shape");
        }
        if (!tl.comparable(when, t2) || !tl.leq(when, t2))
          return reject("closure premise time " + renderTerm(when) + " not <= " +
                        renderTerm(t2));
        base.push_back(p->sub[0]);
      }
      if (!discharge) return reject("no way to re-prove the closure entailment");
      if (!discharge(base, c->sub[0])) return reject("closure entailment did not re-prove");
      return kAccept;
    }

    case SchemaId::R1:
    case SchemaId::R2: {
      if (!inst.premises.empty()) return reject("axiom instance must be premise-free");
      const Formula::Kind lhs =
          inst.id == SchemaId::R1 ? Formula::Kind::Perceives : Formula::Kind::Knows;
      const Formula::Kind rhs =
          inst.id == SchemaId::R1 ? Formula::Kind::Knows : Formula::Kind::Believes;
      if (c->kind != Formula::Kind::Common) return reject("expected a common-knowledge mint");
      const FormulaPtr& imp = c->sub[0];
      if (imp->kind != Formula::Kind::Implies) return reject("mint body is not an implication");
      const FormulaPtr& l = imp->sub[0];
      const FormulaPtr& r = imp->sub[1];
      if (l->kind != lhs || r->kind != rhs) return reject("mint operators do not match the schema");
      if (!sameTerm(l->terms[0], r->terms[0])) return reject("mint agents differ");
      if (!sameTerm(l->terms[1], r->terms[1]) || !sameTerm(c->terms[0], l->terms[1]))
        return reject("mint times differ");
      if (!eqf(l->sub[0], r->sub[0])) return reject("mint payloads differ");
      return kAccept;
    }

    case SchemaId::R3: {
      if (inst.premises.size() != 1 || inst.premises[0]->kind != Formula::Kind::Common)
        return reject("R3 takes one common-knowledge premise");
      const Term& t = inst.premises[0]->terms[0];
      const FormulaPtr& phi = inst.premises[0]->sub[0];
      FormulaPtr cur = c;
      int peeled = 0;
      while (cur->kind == Formula::Kind::Knows) {
        const Term& ti = cur->terms[1];
        if (!tl.comparable(t, ti) || !tl.leq(t, ti))
          return reject("R3 chain time " + renderTerm(ti) + " not >= " + renderTerm(t));
        cur = cur->sub[0];
        ++peeled;
        if (eqf(cur, phi)) return kAccept;
      }
      return reject(peeled == 0 ? "R3 conclusion is not a knowledge chain"
                                : "R3 chain core differs from the premise payload");
    }

    case SchemaId::R4: {
      if (inst.premises.size() != 1 || inst.premises[0]->kind != Formula::Kind::Knows)
        return reject("R4 takes one knowledge premise");
      if (!eqf(c, inst.premises[0]->sub[0]))
        return reject("R4 conclusion differs from the known payload");
      return kAccept;
    }

    case SchemaId::R5:
    case SchemaId::R6:
    case SchemaId::R7: {
      if (!inst.premises.empty()) return reject("axiom instance must be premise-free");
      const Formula::Kind inner = inst.id == SchemaId::R5   ? Formula::Kind::Knows
                                  : inst.id == SchemaId::R6 ? Formula::Kind::Believes
                                                            : Formula::Kind::Common;
      if (c->kind != Formula::Kind::Implies) return reject("distribution mint is not a chain");
      const FormulaPtr& ante = c->sub[0];
      const FormulaPtr& rest = c->sub[1];
      if (ante->kind != Formula::Kind::Common || ante->sub[0]->kind != inner)
        return reject("distribution antecedent shape is wrong");
      const FormulaPtr& imp = ante->sub[0]->sub[0];
      if (imp->kind != Formula::Kind::Implies)
        return reject("distribution antecedent payload is not an implication");
      if (rest->kind != Formula::Kind::Implies) return reject("distribution chain is truncated");
      const FormulaPtr& step1 = rest->sub[0];
      const FormulaPtr& step2 = rest->sub[1];
      if (step1->kind != inner || step2->kind != inner)
        return reject("distribution consequent operators are wrong");
      if (inner != Formula::Kind::Common) {
        const Term& a = ante->sub[0]->terms[0];
        if (!sameTerm(step1->terms[0], a) || !sameTerm(step2->terms[0], a))
          return reject("distribution agents differ");
      }
      if (!eqf(step1->sub[0], imp->sub[0]) || !eqf(step2->sub[0], imp->sub[1]))
        return reject("distribution payloads differ");
      return kAccept;
    }

    case SchemaId::R8: {
      if (!inst.premises.empty()) return reject("axiom instance must be premise-free");
      if (c->kind != Formula::Kind::Common) return reject("expected a common-knowledge mint");
      const FormulaPtr& imp = c->sub[0];
      if (imp->kind != Formula::Kind::Implies || imp->sub[0]->kind != Formula::Kind::Forall)
        return reject("instantiation mint shape is wrong");
      const FormulaPtr& all = imp->sub[0];
      const FormulaPtr& body = imp->sub[1];
      if (eqf(body, all->sub[0])) return kAccept;  // variable vacuous in the body
      std::vector<Term> cands = groundTerms(body);
      for (const FormulaPtr& m : gamma)
        for (const Term& t : groundTerms(m)) cands.push_back(t);
      for (const Term& tau : cands)
        if (eqf(substituteVar(all->sub[0], all->name, tau), body)) return kAccept;
      return reject("no ground witness reproduces the instantiated body");
    }

    case SchemaId::R9: {
      if (!inst.premises.empty()) return reject("axiom instance must be premise-free");
      if (c->kind != Formula::Kind::Common) return reject("expected a common-knowledge mint");
      const FormulaPtr& imp = c->sub[0];
      if (imp->kind != Formula::Kind::Implies || imp->sub[0]->kind != Formula::Kind::Iff)
        return reject("contraposition mint shape is wrong");
      const FormulaPtr& iff = imp->sub[0];
      FormulaPtr expect = mkImplies(mkNot(iff->sub[1]), mkNot(iff->sub[0]));
      if (!eqf(imp->sub[1], expect)) return reject("contraposition consequent is wrong");
      return kAccept;
    }

    case SchemaId::R10: {
      if (!inst.premises.empty()) return reject("axiom instance must be premise-free");
      if (c->kind != Formula::Kind::Common) return reject("expected a common-knowledge mint");
      const FormulaPtr& imp = c->sub[0];
      if (imp->kind != Formula::Kind::Implies || imp->sub[0]->kind != Formula::Kind::Implies)
        return reject("currying mint shape is wrong");
      const FormulaPtr& packed = imp->sub[0];
      if (packed->sub[0]->kind != Formula::Kind::And)
        return reject("currying antecedent is not a conjunction");
      std::vector<FormulaPtr> conjuncts;
      flattenAnd(packed->sub[0], conjuncts);
      if (!eqf(imp->sub[1], curry(conjuncts, packed->sub[1])))
        return reject("curried chain differs from the packed implication");
      return kAccept;
    }

    case SchemaId::R12: {
      if (inst.premises.size() != 1 || inst.premises[0]->kind != Formula::Kind::Says)
        return reject("R12 takes one says premise");
      const FormulaPtr& m = inst.premises[0];
      FormulaPtr expect =
          mkModal(Formula::Kind::Believes, {m->terms[1], m->terms[2]},
                  mkModal(Formula::Kind::Believes, {m->terms[0], m->terms[2]}, m->sub[0]));
      if (!eqf(c, expect)) return reject("R12 conclusion shape is wrong");
      return kAccept;
    }

    case SchemaId::R13: {
      if (inst.premises.size() != 1 || inst.premises[0]->kind != Formula::Kind::Intends)
        return reject("R13 takes one intends premise");
      const FormulaPtr& m = inst.premises[0];
      const FormulaPtr& body = m->sub[0];
      if (body->kind != Formula::Kind::Atom || body->name != "happens" || body->terms.size() != 2)
        return reject("R13 premise payload is not a happens atom");
      FormulaPtr expect = mkModal(Formula::Kind::Perceives, {m->terms[0], m->terms[1]},
                                  mkAtom("happens", {body->terms[0], m->terms[1]}));
      if (!eqf(c, expect)) return reject("R13 conclusion shape is wrong");
      return kAccept;
    }

    case SchemaId::R14: {
      if (inst.premises.size() != 3) return reject("R14 takes three premises");
      const FormulaPtr& b1 = inst.premises[0];
      const FormulaPtr& b2 = inst.premises[1];
      const FormulaPtr& o = inst.premises[2];
      if (o->kind != Formula::Kind::Ought) return reject("R14 third premise must be an obligation");
      const Term& a = o->terms[0];
      const Term& t = o->terms[1];
      if (!eqf(b1, mkModal(Formula::Kind::Believes, {a, t}, o->sub[0])))
        return reject("R14 first premise must be belief in the obligation's condition");
      if (!eqf(b2, mkModal(Formula::Kind::Believes, {a, t}, o)))
        return reject("R14 second premise must be belief in the obligation itself");
      FormulaPtr expect =
          mkModal(Formula::Kind::Knows, {a, t}, mkModal(Formula::Kind::Intends, {a, t}, o->sub[1]));
      if (!eqf(c, expect)) return reject("R14 conclusion shape is wrong");
      return kAccept;
    }
  }
  return reject("unknown schema id");
}

}  // namespace sk
