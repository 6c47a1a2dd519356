#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sk {

// Sorts are interned in a Signature; formulas and terms carry ids only.
using SortId = std::uint32_t;
inline constexpr SortId kNoSort = 0xffffffffu;

struct SkError : std::runtime_error {
  explicit SkError(const std::string& what) : std::runtime_error(what) {}
};
struct SortMismatchError : SkError {
  using SkError::SkError;
};
struct ModalLeakError : SkError {
  using SkError::SkError;
};

// ---------------------------------------------------------------------------
// Terms

struct Term {
  enum class Kind : std::uint8_t { Var, Const, App };

  Kind kind = Kind::Const;
  std::string name;        // variable name, constant name, or function symbol
  SortId sort = kNoSort;   // Var/Const: declared sort; App: result sort
  std::vector<Term> args;  // nonempty only for App

  static Term var(std::string name, SortId sort);
  static Term constant(std::string name, SortId sort);
  static Term app(std::string fn, SortId result_sort, std::vector<Term> args);

  bool isVar() const { return kind == Kind::Var; }
  bool isConst() const { return kind == Kind::Const; }
  bool isApp() const { return kind == Kind::App; }
};

int compare(const Term& a, const Term& b);
inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Formulas
//
// Immutable shared trees. `terms` holds the non-formula slots:
//   Atom              predicate arguments
//   Perceives/Knows/Believes/Desires/Intends   [agent, time]
//   Common            [time]
//   Says              [speaker, hearer, time]
//   SaysPub           [agent, time]   (public announcement form)
//   Ought             [agent, time]; sub = [proposition, happens-literal]

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind : std::uint8_t {
    Atom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
    Perceives,
    Knows,
    Believes,
    Common,
    Says,
    SaysPub,
    Desires,
    Intends,
    Ought,
  };

  Kind kind = Kind::Atom;
  std::string name;          // Atom: predicate; Forall/Exists: bound variable
  SortId var_sort = kNoSort; // quantifier variable sort
  std::vector<Term> terms;
  std::vector<FormulaPtr> sub;
};

bool isModal(Formula::Kind k);
bool isQuantifier(Formula::Kind k);
bool isConnective(Formula::Kind k);
const char* kindName(Formula::Kind k);

FormulaPtr mkAtom(std::string pred, std::vector<Term> args = {});
FormulaPtr mkNot(FormulaPtr f);
FormulaPtr mkAnd(FormulaPtr a, FormulaPtr b);
FormulaPtr mkOr(FormulaPtr a, FormulaPtr b);
FormulaPtr mkImplies(FormulaPtr a, FormulaPtr b);
FormulaPtr mkIff(FormulaPtr a, FormulaPtr b);
FormulaPtr mkForall(std::string var, SortId sort, FormulaPtr body);
FormulaPtr mkExists(std::string var, SortId sort, FormulaPtr body);
FormulaPtr mkModal(Formula::Kind k, std::vector<Term> idx, FormulaPtr body);
FormulaPtr mkOught(Term agent, Term time, FormulaPtr prop, FormulaPtr happens_lit);

int compare(const Formula& a, const Formula& b);
int compare(const FormulaPtr& a, const FormulaPtr& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

// Free variables in first-occurrence order (name, sort).
std::vector<std::pair<std::string, SortId>> freeVars(const FormulaPtr& f);
std::vector<std::pair<std::string, SortId>> freeVars(const Term& t);
bool isClosed(const FormulaPtr& f);

// Maximum nesting depth of modal operators (0 for extensional formulas).
int modalDepth(const FormulaPtr& f);

// Calls fn on every subformula, outermost first (includes f itself).
void forEachSubformula(const FormulaPtr& f, const std::function<void(const FormulaPtr&)>& fn);

// Ground (variable-free) terms occurring anywhere in f, deduplicated, in
// first-occurrence order.
std::vector<Term> groundTerms(const FormulaPtr& f);

}  // namespace sk
