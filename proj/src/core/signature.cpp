#include "core/signature.hpp"

#include <sstream>

namespace sk {

std::string renderTerm(const Term& t) {
  if (t.args.empty()) return t.name;
  std::ostringstream os;
  os << "(" << t.name;
  for (const Term& a : t.args) os << " " << renderTerm(a);
  os << ")";
  return os.str();
}

bool Signature::isReservedName(const std::string& name) {
  return name.empty() || name.find('$') != std::string::npos;
}

Signature::Signature() {
  sorts_.push_back({"$i", kNoSort});
  root_ = 0;
  agent_ = addSort("Agent", root_);
  moment_ = addSort("Moment", root_);
  event_ = addSort("Event", root_);
  action_type_ = addSort("ActionType", root_);
  action_ = addSort("Action", event_);
  fluent_ = addSort("Fluent", root_);
  boolean_ = addSort("Boolean", root_);

  addFunc("action", {agent_, action_type_}, action_);
  addFunc("initially", {fluent_}, boolean_);
  addPred("holds", {fluent_, moment_});
  addPred("happens", {event_, moment_});
  addPred("clipped", {moment_, fluent_, moment_});
  addFunc("initiates", {event_, fluent_, moment_}, boolean_);
  addFunc("terminates", {event_, fluent_, moment_}, boolean_);
  addPred("prior", {moment_, moment_});

  builtin_sorts_ = sorts_.size();
  builtin_consts_ = consts_.size();
  builtin_funcs_ = funcs_.size();
  builtin_preds_ = preds_.size();
}

SortId Signature::addSort(const std::string& name, SortId parent) {
  if (auto existing = findSort(name)) {
    if (sorts_[*existing].parent != parent)
      throw SkError("sort '" + name + "' redeclared with a different parent");
    return *existing;
  }
  if (parent >= sorts_.size()) throw SkError("unknown parent sort for '" + name + "'");
  sorts_.push_back({name, parent});
  return static_cast<SortId>(sorts_.size() - 1);
}

void Signature::addConst(const std::string& name, SortId sort) {
  if (const ConstDecl* c = findConst(name)) {
    if (c->sort != sort) throw SkError("constant '" + name + "' redeclared with a different sort");
    return;
  }
  if (findFunc(name)) throw SkError("'" + name + "' already declared as a function");
  consts_.push_back({name, sort});
}

void Signature::addFunc(const std::string& name, std::vector<SortId> arg_sorts, SortId result_sort) {
  if (const FuncDecl* f = findFunc(name)) {
    if (f->arg_sorts != arg_sorts || f->result_sort != result_sort)
      throw SkError("function '" + name + "' redeclared with a different signature");
    return;
  }
  if (findConst(name)) throw SkError("'" + name + "' already declared as a constant");
  funcs_.push_back({name, std::move(arg_sorts), result_sort});
}

void Signature::addPred(const std::string& name, std::vector<SortId> arg_sorts) {
  if (const PredDecl* p = findPred(name)) {
    if (p->arg_sorts != arg_sorts)
      throw SkError("predicate '" + name + "' redeclared with a different signature");
    return;
  }
  preds_.push_back({name, std::move(arg_sorts)});
}

std::optional<SortId> Signature::findSort(const std::string& name) const {
  for (std::size_t i = 0; i < sorts_.size(); ++i)
    if (sorts_[i].name == name) return static_cast<SortId>(i);
  // Time is the surface spelling of the builtin Moment sort.
  if (name == "Time") return moment_;
  return std::nullopt;
}

const ConstDecl* Signature::findConst(const std::string& name) const {
  for (const ConstDecl& c : consts_)
    if (c.name == name) return &c;
  return nullptr;
}

const FuncDecl* Signature::findFunc(const std::string& name) const {
  for (const FuncDecl& f : funcs_)
    if (f.name == name) return &f;
  return nullptr;
}

const PredDecl* Signature::findPred(const std::string& name) const {
  for (const PredDecl& p : preds_)
    if (p.name == name) return &p;
  return nullptr;
}

bool Signature::subsort(SortId a, SortId b) const {
  if (a == kNoSort || b == kNoSort) return a == b;
  while (true) {
    if (a == b) return true;
    SortId p = sorts_[a].parent;
    if (p == kNoSort) return false;
    a = p;
  }
}

std::optional<SortId> Signature::meet(SortId a, SortId b) const {
  if (subsort(a, b)) return a;
  if (subsort(b, a)) return b;
  return std::nullopt;
}

SortId Signature::termSort(const Term& t) const {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.sort;
    case Term::Kind::Const: {
      if (const ConstDecl* c = findConst(t.name)) return c->sort;
      return t.sort;
    }
    case Term::Kind::App: {
      if (const FuncDecl* f = findFunc(t.name)) return f->result_sort;
      return t.sort;
    }
  }
  return kNoSort;
}

std::string Signature::sortName(SortId id) const {
  if (id == kNoSort) return "<none>";
  return sorts_[id].name;
}

void Signature::checkTerm(const Term& t, SortId expected, std::vector<SortViolation>& out) {
  SortId actual = kNoSort;
  switch (t.kind) {
    case Term::Kind::Var:
      actual = t.sort;
      break;
    case Term::Kind::Const: {
      const ConstDecl* c = findConst(t.name);
      if (!c) {
        out.push_back({renderTerm(t), "undeclared constant '" + t.name + "'"});
        return;
      }
      actual = c->sort;
      break;
    }
    case Term::Kind::App: {
      const FuncDecl* f = findFunc(t.name);
      if (!f) {
        out.push_back({renderTerm(t), "undeclared function '" + t.name + "'"});
        return;
      }
      if (f->arg_sorts.size() != t.args.size()) {
        std::ostringstream os;
        os << "function '" << t.name << "' expects " << f->arg_sorts.size() << " arguments, got "
           << t.args.size();
        out.push_back({renderTerm(t), os.str()});
        return;
      }
      for (std::size_t i = 0; i < t.args.size(); ++i) checkTerm(t.args[i], f->arg_sorts[i], out);
      actual = f->result_sort;
      break;
    }
  }
  if (expected != kNoSort && actual != kNoSort && !subsort(actual, expected)) {
    out.push_back({renderTerm(t), "expected sort " + sortName(expected) + ", got " + sortName(actual)});
  }
}

void Signature::adoptUnseen(const FormulaPtr& f) {
  forEachSubformula(f, [&](const FormulaPtr& g) {
    if (g->kind == Formula::Kind::Atom && !findPred(g->name) && !g->name.empty() &&
        g->name.find('$') == std::string::npos) {
      preds_.push_back({g->name, std::vector<SortId>(g->terms.size(), root_)});
    }
    std::function<void(const Term&)> walk = [&](const Term& t) {
      if (t.isConst() && !findConst(t.name) && t.name.find('$') == std::string::npos) {
        consts_.push_back({t.name, t.sort == kNoSort ? root_ : t.sort});
      }
      if (t.isApp() && !findFunc(t.name) && t.name.find('$') == std::string::npos) {
        funcs_.push_back({t.name, std::vector<SortId>(t.args.size(), root_), root_});
      }
      for (const Term& a : t.args) walk(a);
    };
    for (const Term& t : g->terms) walk(t);
  });
}

void Signature::checkFormula(const FormulaPtr& f, std::vector<SortViolation>& out) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      const PredDecl* p = findPred(f->name);
      if (!p) {
        out.push_back({f->name, "undeclared predicate '" + f->name + "'"});
        return;
      }
      if (p->arg_sorts.size() != f->terms.size()) {
        std::ostringstream os;
        os << "predicate '" << f->name << "' expects " << p->arg_sorts.size() << " arguments, got "
           << f->terms.size();
        out.push_back({f->name, os.str()});
        return;
      }
      for (std::size_t i = 0; i < f->terms.size(); ++i) checkTerm(f->terms[i], p->arg_sorts[i], out);
      return;
    }
    case Formula::Kind::Perceives:
    case Formula::Kind::Knows:
    case Formula::Kind::Believes:
      checkTerm(f->terms[0], agent_, out);
      checkTerm(f->terms[1], moment_, out);
      break;
    case Formula::Kind::Common:
      checkTerm(f->terms[0], moment_, out);
      break;
    case Formula::Kind::Says:
      checkTerm(f->terms[0], agent_, out);
      checkTerm(f->terms[1], agent_, out);
      checkTerm(f->terms[2], moment_, out);
      break;
    case Formula::Kind::SaysPub:
    case Formula::Kind::Desires:
    case Formula::Kind::Intends:
    case Formula::Kind::Ought:
      checkTerm(f->terms[0], agent_, out);
      checkTerm(f->terms[1], moment_, out);
      break;
    default:
      break;
  }
  for (const FormulaPtr& s : f->sub) checkFormula(s, out);
}

std::vector<SortViolation> Signature::wellSorted(const FormulaPtr& f) {
  if (implicit_) adoptUnseen(f);
  std::vector<SortViolation> out;
  checkFormula(f, out);
  return out;
}

}  // namespace sk
