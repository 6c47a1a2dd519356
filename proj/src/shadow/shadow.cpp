#include "shadow/shadow.hpp"

#include "core/subst.hpp"

namespace sk {

int level(const FormulaPtr& f) {
  if (isModal(f->kind)) return 2;
  int lv = 0;
  if (f->kind == Formula::Kind::Atom) {
    lv = f->terms.empty() ? 0 : 1;
  } else if (isQuantifier(f->kind)) {
    lv = 1;
  }
  for (const FormulaPtr& s : f->sub) lv = std::max(lv, level(s));
  return lv;
}

std::string ShadowMap::atomize(const FormulaPtr& f) {
  FormulaPtr norm = alphaNormalize(f);
  auto it = by_formula_.find(norm);
  if (it != by_formula_.end()) return it->second;
  std::string name = "A$" + std::to_string(counter_++);
  by_formula_.emplace(norm, name);
  entries_.emplace_back(name, std::move(norm));
  return entries_.back().first;
}

FormulaPtr ShadowMap::formulaFor(const std::string& atom) const {
  for (const auto& [name, f] : entries_)
    if (name == atom) return f;
  return nullptr;
}

ShadowMap ShadowMap::restore(const std::vector<std::pair<std::string, FormulaPtr>>& entries) {
  ShadowMap m;
  for (const auto& [name, f] : entries) {
    FormulaPtr norm = alphaNormalize(f);
    m.by_formula_.emplace(norm, name);
    m.entries_.emplace_back(name, std::move(norm));
    if (name.rfind("A$", 0) == 0) {
      long idx = -1;
      try {
        idx = std::stol(name.substr(2));
      } catch (...) {
      }
      if (idx >= m.counter_) m.counter_ = static_cast<int>(idx) + 1;
    }
  }
  return m;
}

namespace {

// Descent outcome: the rewritten formula, or nullptr when the subtree
// contains an open too-high subformula whose binder sits above us.  The
// caller closest to closing it atomizes itself.
FormulaPtr shadowRec(const FormulaPtr& f, int l, ShadowMap& m) {
  if (level(f) <= l) return f;

  bool transparent = isConnective(f->kind) || (l >= 1 && isQuantifier(f->kind));
  if (!transparent) {
    // Modal node, or at l=0 a quantifier or first-order atom.
    if (isClosed(f)) return mkAtom(m.atomize(f), {});
    return nullptr;
  }

  std::vector<FormulaPtr> kids;
  kids.reserve(f->sub.size());
  bool obstructed = false;
  for (const FormulaPtr& s : f->sub) {
    FormulaPtr k = shadowRec(s, l, m);
    if (!k) {
      obstructed = true;
      break;
    }
    kids.push_back(std::move(k));
  }
  if (obstructed) {
    if (isClosed(f)) return mkAtom(m.atomize(f), {});
    return nullptr;
  }

  auto g = std::make_shared<Formula>(*f);
  g->sub = std::move(kids);
  return g;
}

}  // namespace

FormulaPtr shadow(const FormulaPtr& f, int l, ShadowMap& m) {
  FormulaPtr r = shadowRec(f, l, m);
  if (!r) throw ModalLeakError("cannot shadow an open formula at level " + std::to_string(l));
  return r;
}

std::vector<FormulaPtr> shadowSet(const std::vector<FormulaPtr>& gamma, int l, ShadowMap& m) {
  std::vector<FormulaPtr> out;
  out.reserve(gamma.size());
  for (const FormulaPtr& f : gamma) out.push_back(shadow(f, l, m));
  return out;
}

FormulaPtr expandAtoms(const FormulaPtr& f, const ShadowMap& m) {
  if (f->kind == Formula::Kind::Atom && f->terms.empty()) {
    if (FormulaPtr hidden = m.formulaFor(f->name)) return hidden;
    return f;
  }
  auto g = std::make_shared<Formula>(*f);
  for (FormulaPtr& s : g->sub) s = expandAtoms(s, m);
  return g;
}

}  // namespace sk
