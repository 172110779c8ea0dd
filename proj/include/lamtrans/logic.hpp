#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lamtrans/errors.hpp"
#include "lamtrans/structures.hpp"

namespace lamtrans {

// Monadic second-order formulas over a relational vocabulary.  Element
// variables start with a lowercase letter, set variables with an uppercase
// one.  Nodes are immutable and shared; builders may reuse subtrees freely.

enum class FormulaKind {
  RelAtom,     // (rel NAME x ...)
  PredAtom,    // (pred NAME X)
  Member,      // (in x X)
  ElemEq,      // (= x y)
  SetEq,       // (seteq X Y)
  Subset,      // (subset X Y)
  Not,
  And,
  Or,
  Implies,
  Iff,
  ExistsElem,  // (exists x f)
  ForallElem,  // (forall x f)
  ExistsSet,   // (existsSet X f)
  ForallSet,   // (forallSet X f)
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string symbol;                  // RelAtom / PredAtom symbol name
  std::vector<std::string> elem_args;  // RelAtom args; Member [x]; ElemEq [x,y]
  std::vector<std::string> set_args;   // PredAtom [X]; Member [X]; SetEq/Subset [X,Y]
  std::string bound;                   // quantifier variable
  std::vector<FormulaPtr> children;

  // Free variables, cached at construction, each list sorted.
  std::vector<std::string> free_elems;
  std::vector<std::string> free_sets;
};

bool is_set_var(const std::string& v);
bool is_elem_var(const std::string& v);

// Node builders.  All validate variable casing.
FormulaPtr f_rel(std::string symbol, std::vector<std::string> elem_args);
FormulaPtr f_pred(std::string symbol, std::string set_arg);
FormulaPtr f_in(std::string elem, std::string set);
FormulaPtr f_eq(std::string a, std::string b);
FormulaPtr f_seteq(std::string a, std::string b);
FormulaPtr f_subset(std::string a, std::string b);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> fs);
FormulaPtr f_or(std::vector<FormulaPtr> fs);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string v, FormulaPtr body);
FormulaPtr f_forall(std::string v, FormulaPtr body);
FormulaPtr f_exists_set(std::string v, FormulaPtr body);
FormulaPtr f_forall_set(std::string v, FormulaPtr body);

// Canonical s-expression printer; parse(print(f)) reproduces f.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

// Parses the s-expression grammar.  When a vocabulary is supplied, rel/pred
// atoms are checked against it (symbol kind and arity).  SyntaxError carries
// the byte offset of the offending token.
FormulaPtr parse_formula(const std::string& text, const Vocabulary* voc = nullptr);

struct FreeVariables {
  std::vector<std::string> elems;
  std::vector<std::string> sets;
};
FreeVariables free_variables(const Formula& f);

// Variable assignment for evaluation.
struct Assignment {
  std::map<std::string, std::string> elems;
  std::map<std::string, std::vector<std::string>> sets;
};

}  // namespace lamtrans
