#include "fol/clausify.hpp"

#include <algorithm>

#include "core/subst.hpp"

namespace sk {

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool positive);

FormulaPtr nnfNot(const FormulaPtr& f) { return nnf(f, false); }

FormulaPtr nnf(const FormulaPtr& f, bool positive) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      return positive ? f : mkNot(f);
    case Formula::Kind::Not:
      return nnf(f->sub[0], !positive);
    case Formula::Kind::And:
      if (positive) return mkAnd(nnf(f->sub[0], true), nnf(f->sub[1], true));
      return mkOr(nnfNot(f->sub[0]), nnfNot(f->sub[1]));
    case Formula::Kind::Or:
      if (positive) return mkOr(nnf(f->sub[0], true), nnf(f->sub[1], true));
      return mkAnd(nnfNot(f->sub[0]), nnfNot(f->sub[1]));
    case Formula::Kind::Implies:
      if (positive) return mkOr(nnfNot(f->sub[0]), nnf(f->sub[1], true));
      return mkAnd(nnf(f->sub[0], true), nnfNot(f->sub[1]));
    case Formula::Kind::Iff: {
      // (a -> b) & (b -> a), negated: (a & ~b) | (b & ~a)
      const FormulaPtr& a = f->sub[0];
      const FormulaPtr& b = f->sub[1];
      if (positive)
        return mkAnd(mkOr(nnfNot(a), nnf(b, true)), mkOr(nnfNot(b), nnf(a, true)));
      return mkOr(mkAnd(nnf(a, true), nnfNot(b)), mkAnd(nnf(b, true), nnfNot(a)));
    }
    case Formula::Kind::Forall:
      return positive ? mkForall(f->name, f->var_sort, nnf(f->sub[0], true))
                      : mkExists(f->name, f->var_sort, nnfNot(f->sub[0]));
    case Formula::Kind::Exists:
      return positive ? mkExists(f->name, f->var_sort, nnf(f->sub[0], true))
                      : mkForall(f->name, f->var_sort, nnfNot(f->sub[0]));
    default:
      throw ModalLeakError("modal operator reached the clausifier: " +
                           std::string(kindName(f->kind)));
  }
}

std::string guardName(const Signature& sig, SortId s) { return "s$" + sig.sort(s).name; }

}  // namespace

std::vector<Clause> Clausifier::clausify(const FormulaPtr& f) {
  forEachSubformula(f, [](const FormulaPtr& g) {
    if (isModal(g->kind))
      throw ModalLeakError("modal operator reached the clausifier: " +
                           std::string(kindName(g->kind)));
  });

  FormulaPtr n = nnf(f, true);

  // Relativize sorted binders and skolemize in one descent.  Universal
  // variables in scope are collected for skolem arguments; every bound
  // variable is renamed fresh so clauses are standardized apart.
  std::vector<std::vector<Literal>> cnf;
  struct Walker {
    Clausifier& cl;
    std::vector<Term> uvars;

    // Returns the matrix with binders eliminated.
    FormulaPtr go(const FormulaPtr& f) {
      switch (f->kind) {
        case Formula::Kind::Forall: {
          Term fresh = Term::var("v$" + std::to_string(cl.var_++), kNoSort);
          FormulaPtr body = substituteVar(f->sub[0], f->name, fresh);
          uvars.push_back(fresh);
          FormulaPtr inner = go(body);
          uvars.pop_back();
          if (f->var_sort != kNoSort && f->var_sort != cl.sig_.rootSort()) {
            cl.guards_used_ = true;
            FormulaPtr guard = mkAtom(guardName(cl.sig_, f->var_sort), {fresh});
            return mkOr(mkNot(std::move(guard)), std::move(inner));
          }
          return inner;
        }
        case Formula::Kind::Exists: {
          std::string name = "sk$" + std::to_string(cl.skolem_++);
          Term sk = uvars.empty() ? Term::constant(name, kNoSort)
                                  : Term::app(name, kNoSort, uvars);
          FormulaPtr body = substituteVar(f->sub[0], f->name, sk);
          FormulaPtr inner = go(body);
          if (f->var_sort != kNoSort && f->var_sort != cl.sig_.rootSort()) {
            cl.guards_used_ = true;
            FormulaPtr guard = mkAtom(guardName(cl.sig_, f->var_sort), {sk});
            return mkAnd(std::move(guard), std::move(inner));
          }
          return inner;
        }
        case Formula::Kind::And:
          return mkAnd(go(f->sub[0]), go(f->sub[1]));
        case Formula::Kind::Or:
          return mkOr(go(f->sub[0]), go(f->sub[1]));
        default:
          return f;  // literal
      }
    }
  };
  Walker w{*this, {}};
  FormulaPtr matrix = w.go(n);

  // Distribute to CNF.
  struct Dist {
    static std::vector<std::vector<Literal>> go(const FormulaPtr& f) {
      if (f->kind == Formula::Kind::And) {
        auto a = go(f->sub[0]);
        auto b = go(f->sub[1]);
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
      if (f->kind == Formula::Kind::Or) {
        auto a = go(f->sub[0]);
        auto b = go(f->sub[1]);
        std::vector<std::vector<Literal>> out;
        for (const auto& ci : a)
          for (const auto& dj : b) {
            std::vector<Literal> u = ci;
            u.insert(u.end(), dj.begin(), dj.end());
            out.push_back(std::move(u));
          }
        return out;
      }
      bool pos = f->kind != Formula::Kind::Not;
      const Formula* atom = pos ? f.get() : f->sub[0].get();
      return {{Literal{pos, atom->name, atom->terms}}};
    }
  };

  std::vector<Clause> out;
  for (auto& lits : Dist::go(matrix)) {
    Clause c = normalizeClause(Clause{std::move(lits)});
    if (isTautology(c)) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<LabelledClause> Clausifier::guardTheory() const {
  std::vector<LabelledClause> out;
  auto add = [&](Clause c) { out.push_back({"$sorts", normalizeClause(std::move(c))}); };
  const SortId root = sig_.rootSort();

  for (SortId s = 1; s < static_cast<SortId>(sig_.sortCount()); ++s) {
    SortId parent = sig_.sort(s).parent;
    if (parent == kNoSort || parent == root) continue;
    Term x = Term::var("v$0", kNoSort);
    add({{Literal{false, guardName(sig_, s), {x}}, Literal{true, guardName(sig_, parent), {x}}}});
  }

  std::vector<bool> inhabited(sig_.sortCount(), false);
  for (const ConstDecl& c : sig_.consts()) {
    if (c.sort == root || c.sort == kNoSort) continue;
    add({{Literal{true, guardName(sig_, c.sort), {Term::constant(c.name, c.sort)}}}});
    // A constant inhabits its sort and every ancestor.
    for (SortId s = c.sort; s != kNoSort && s != root; s = sig_.sort(s).parent) inhabited[s] = true;
  }

  for (const FuncDecl& f : sig_.funcs()) {
    if (f.result_sort == root || f.result_sort == kNoSort) continue;
    std::vector<Literal> lits;
    std::vector<Term> args;
    for (std::size_t i = 0; i < f.arg_sorts.size(); ++i)
      args.push_back(Term::var("v$" + std::to_string(i), kNoSort));
    for (std::size_t i = 0; i < f.arg_sorts.size(); ++i) {
      if (f.arg_sorts[i] == root || f.arg_sorts[i] == kNoSort) continue;
      lits.push_back(Literal{false, guardName(sig_, f.arg_sorts[i]), {args[i]}});
    }
    lits.push_back(Literal{true, guardName(sig_, f.result_sort),
                           {Term::app(f.name, f.result_sort, args)}});
    add({std::move(lits)});
  }

  for (SortId s = 1; s < static_cast<SortId>(sig_.sortCount()); ++s) {
    if (inhabited[s]) continue;
    add({{Literal{true, guardName(sig_, s),
                  {Term::constant("w$" + sig_.sort(s).name, s)}}}});
  }
  return out;
}

std::vector<LabelledClause> Clausifier::run(const std::vector<LabelledFormula>& formulas) {
  std::vector<LabelledClause> out;
  auto seen = [&](const Clause& c) {
    for (const LabelledClause& lc : out)
      if (lc.clause == c) return true;
    return false;
  };
  for (const LabelledFormula& lf : formulas) {
    for (Clause& c : clausify(lf.formula)) {
      if (seen(c)) continue;
      out.push_back({lf.label, std::move(c)});
    }
  }
  if (guards_used_) {
    for (LabelledClause& lc : guardTheory()) {
      if (seen(lc.clause)) continue;
      out.push_back(std::move(lc));
    }
  }
  return out;
}

}  // namespace sk
