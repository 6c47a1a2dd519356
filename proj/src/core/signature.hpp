#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/ast.hpp"

namespace sk {

// Declared symbol kinds, kept in insertion order for stable output.
struct SortDecl {
  std::string name;
  SortId parent;  // kNoSort only for the internal root
};

struct ConstDecl {
  std::string name;
  SortId sort;
};

struct FuncDecl {
  std::string name;
  std::vector<SortId> arg_sorts;
  SortId result_sort;
};

struct PredDecl {
  std::string name;
  std::vector<SortId> arg_sorts;
};

struct SortViolation {
  std::string where;    // rendering of the offending term or atom
  std::string message;  // what went wrong
};

// Sort forest plus constant/function/predicate tables.  All user-visible
// sorts descend from an internal root "$i"; quantifiers over $i get no
// relativization guard.  Names containing '$' are reserved for generated
// symbols and rejected in user declarations.
class Signature {
 public:
  Signature();

  // Builtins installed by the constructor.
  SortId rootSort() const { return root_; }
  SortId agentSort() const { return agent_; }
  SortId momentSort() const { return moment_; }
  SortId eventSort() const { return event_; }
  SortId actionTypeSort() const { return action_type_; }
  SortId actionSort() const { return action_; }
  SortId fluentSort() const { return fluent_; }
  SortId booleanSort() const { return boolean_; }

  SortId addSort(const std::string& name, SortId parent);
  SortId addSort(const std::string& name) { return addSort(name, root_); }
  void addConst(const std::string& name, SortId sort);
  void addFunc(const std::string& name, std::vector<SortId> arg_sorts, SortId result_sort);
  void addPred(const std::string& name, std::vector<SortId> arg_sorts);

  std::optional<SortId> findSort(const std::string& name) const;
  const SortDecl& sort(SortId id) const { return sorts_[id]; }
  std::size_t sortCount() const { return sorts_.size(); }
  const ConstDecl* findConst(const std::string& name) const;
  const FuncDecl* findFunc(const std::string& name) const;
  const PredDecl* findPred(const std::string& name) const;
  const std::vector<ConstDecl>& consts() const { return consts_; }
  const std::vector<FuncDecl>& funcs() const { return funcs_; }
  const std::vector<PredDecl>& preds() const { return preds_; }

  // Everything below these indices was installed by the constructor.
  std::size_t builtinSortCount() const { return builtin_sorts_; }
  std::size_t builtinConstCount() const { return builtin_consts_; }
  std::size_t builtinFuncCount() const { return builtin_funcs_; }
  std::size_t builtinPredCount() const { return builtin_preds_; }

  // True when a is b or a descendant of b.
  bool subsort(SortId a, SortId b) const;
  // Most specific common ancestor, or nullopt when the sorts only meet at
  // the internal root and neither side is rooted there explicitly.
  std::optional<SortId> meet(SortId a, SortId b) const;

  // When set, atoms over undeclared predicates and undeclared constants are
  // adopted with root-sorted argument positions instead of reported.
  void setImplicitDecls(bool on) { implicit_ = on; }
  bool implicitDecls() const { return implicit_; }

  // Checks every atom and term of f against the tables.  Returns all
  // violations found, empty when f is well sorted.  Adopts unseen symbols
  // first when implicit mode is on.
  std::vector<SortViolation> wellSorted(const FormulaPtr& f);
  // Infers the sort of a ground or declared-variable term; kNoSort when
  // the head symbol is unknown.
  SortId termSort(const Term& t) const;

  std::string sortName(SortId id) const;

  // '$' marks generated symbols; declarations read from user input must not
  // use it.  The parser enforces this, the tables themselves do not.
  static bool isReservedName(const std::string& name);

 private:
  void checkTerm(const Term& t, SortId expected, std::vector<SortViolation>& out);
  void checkFormula(const FormulaPtr& f, std::vector<SortViolation>& out);
  void adoptUnseen(const FormulaPtr& f);

  std::vector<SortDecl> sorts_;
  std::vector<ConstDecl> consts_;
  std::vector<FuncDecl> funcs_;
  std::vector<PredDecl> preds_;
  std::size_t builtin_sorts_ = 0, builtin_consts_ = 0, builtin_funcs_ = 0, builtin_preds_ = 0;
  bool implicit_ = false;

  SortId root_, agent_, moment_, event_, action_type_, action_, fluent_, boolean_;
};

std::string renderTerm(const Term& t);

}  // namespace sk
