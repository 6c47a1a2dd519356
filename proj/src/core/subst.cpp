#include "core/subst.hpp"

#include <set>

namespace sk {

bool Substitution::bind(const std::string& var, Term value) {
  auto [it, inserted] = map_.emplace(var, std::move(value));
  (void)it;
  return inserted;
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

Term applyTermMap(const Term& t, const std::map<std::string, Term>& m) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = m.find(t.name);
      if (it == m.end()) return t;
      return applyTermMap(it->second, m);
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      Term r = t;
      for (Term& a : r.args) a = applyTermMap(a, m);
      return r;
    }
  }
  return t;
}

Term applyTermOnce(const Term& t, const std::map<std::string, Term>& m) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = m.find(t.name);
      return it == m.end() ? t : it->second;
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      Term r = t;
      for (Term& a : r.args) a = applyTermOnce(a, m);
      return r;
    }
  }
  return t;
}

void collectFreeTermVars(const Term& t, std::set<std::string>& out) {
  if (t.isVar()) {
    out.insert(t.name);
    return;
  }
  for (const Term& a : t.args) collectFreeTermVars(a, out);
}

void collectAllVarNames(const FormulaPtr& f, std::set<std::string>& out) {
  forEachSubformula(f, [&](const FormulaPtr& g) {
    if (isQuantifier(g->kind)) out.insert(g->name);
    for (const Term& t : g->terms) collectFreeTermVars(t, out);
  });
}

// Expects a flattened map: values are final and are not re-looked-up, so a
// binder rename added mid-walk cannot leak into replacements from outer scope.
FormulaPtr applyFormulaMap(const FormulaPtr& f, std::map<std::string, Term> m) {
  if (m.empty()) return f;
  Formula g = *f;
  for (Term& t : g.terms) t = applyTermOnce(t, m);
  if (isQuantifier(g.kind)) {
    m.erase(g.name);
    std::set<std::string> range;
    for (const auto& [k, v] : m) collectFreeTermVars(v, range);
    if (range.count(g.name)) {
      std::set<std::string> used = range;
      collectAllVarNames(f->sub[0], used);
      std::string fresh = g.name;
      int i = 0;
      while (used.count(fresh)) fresh = g.name + "$r" + std::to_string(i++);
      m[g.name] = Term::var(fresh, g.var_sort);
      g.name = fresh;
    }
    g.sub = {applyFormulaMap(f->sub[0], std::move(m))};
  } else {
    g.sub.clear();
    for (const FormulaPtr& s : f->sub) g.sub.push_back(applyFormulaMap(s, m));
  }
  return std::make_shared<Formula>(std::move(g));
}

}  // namespace

Term Substitution::apply(const Term& t) const { return applyTermMap(t, map_); }

FormulaPtr Substitution::apply(const FormulaPtr& f) const {
  // Resolve chains like x -> y, y -> c first; the formula walk is one-step.
  std::map<std::string, Term> flat;
  for (const auto& [k, v] : map_) flat.emplace(k, applyTermMap(v, map_));
  return applyFormulaMap(f, std::move(flat));
}

namespace {

Term walk(Term t, const Substitution& s) {
  while (t.isVar()) {
    const Term* b = s.lookup(t.name);
    if (!b) break;
    t = *b;
  }
  return t;
}

bool occurs(const std::string& v, const Term& t, const Substitution& s) {
  Term w = walk(t, s);
  if (w.isVar()) return w.name == v;
  for (const Term& a : w.args)
    if (occurs(v, a, s)) return true;
  return false;
}

bool fitsVarSort(SortId var_sort, SortId value_sort, const Signature& sig) {
  if (var_sort == kNoSort || value_sort == kNoSort) return true;
  return sig.subsort(value_sort, var_sort);
}

bool unifyRec(const Term& a0, const Term& b0, Substitution& s, const Signature& sig) {
  Term a = walk(a0, s);
  Term b = walk(b0, s);
  if (a.isVar() && b.isVar()) {
    if (a.name == b.name) return true;
    if (a.sort == kNoSort) return s.bind(a.name, b);
    if (b.sort == kNoSort) return s.bind(b.name, a);
    // Bind toward the more specific sort so the result stays well sorted.
    if (sig.subsort(b.sort, a.sort)) return s.bind(a.name, b);
    if (sig.subsort(a.sort, b.sort)) return s.bind(b.name, a);
    return false;
  }
  if (b.isVar()) std::swap(a, b);
  if (a.isVar()) {
    if (occurs(a.name, b, s)) return false;
    if (!fitsVarSort(a.sort, sig.termSort(b), sig)) return false;
    return s.bind(a.name, b);
  }
  if (a.kind != b.kind) return false;
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unifyRec(a.args[i], b.args[i], s, sig)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, const Signature& sig,
                                  Substitution seed) {
  if (!unifyRec(a, b, seed, sig)) return std::nullopt;
  return seed;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Signature& sig) {
  return unify(a, b, sig, Substitution{});
}

std::optional<Substitution> unifyAtoms(const FormulaPtr& a, const FormulaPtr& b,
                                       const Signature& sig) {
  if (a->kind != Formula::Kind::Atom || b->kind != Formula::Kind::Atom) return std::nullopt;
  if (a->name != b->name || a->terms.size() != b->terms.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a->terms.size(); ++i)
    if (!unifyRec(a->terms[i], b->terms[i], s, sig)) return std::nullopt;
  return s;
}

namespace {

Term renameTerm(const Term& t, const std::map<std::string, std::string>& m) {
  if (t.isVar()) {
    auto it = m.find(t.name);
    if (it == m.end()) return t;
    return Term::var(it->second, t.sort);
  }
  if (t.isConst()) return t;
  Term r = t;
  for (Term& a : r.args) a = renameTerm(a, m);
  return r;
}

FormulaPtr alphaRec(const FormulaPtr& f, std::map<std::string, std::string> m, int& counter) {
  Formula g = *f;
  for (Term& t : g.terms) t = renameTerm(t, m);
  if (isQuantifier(g.kind)) {
    std::string nn = "$" + std::to_string(counter++);
    m[f->name] = nn;
    g.name = nn;
    g.sub = {alphaRec(f->sub[0], std::move(m), counter)};
  } else {
    g.sub.clear();
    for (const FormulaPtr& s : f->sub) g.sub.push_back(alphaRec(s, m, counter));
  }
  return std::make_shared<Formula>(std::move(g));
}

}  // namespace

FormulaPtr alphaNormalize(const FormulaPtr& f) {
  int counter = 0;
  return alphaRec(f, {}, counter);
}

FormulaPtr substituteVar(const FormulaPtr& f, const std::string& var, const Term& value) {
  Substitution s;
  s.bind(var, value);
  return s.apply(f);
}

}  // namespace sk
