#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lamtrans/laminar.hpp"
#include "lamtrans/logic.hpp"

namespace lamtrans {

// Builders for the formula families used by the set-system-to-tree
// transduction: derived tree predicates over set systems ({SET}) and trees
// ({desc}), branch-classification predicates, representative-set and leader
// predicates over coloured set systems, the filter sentence chi, and the
// bounded-degree counting formulas.
//
// Built formulas follow two naming rules.  Free variables are supplied by the
// caller (or default to the documented names) and must not start with 'q' or
// 'Q'.  All internally bound variables start with 'q' (element) or 'Q' (set),
// so a built formula never captures a caller-supplied free variable.

enum class CountingKind { Countkids, Oddkids, Evenleaf };

struct FormulaLibraryConfig {
  // Number of thin-partition parts p.  Colour predicates are named
  // A1..Ap and B1..Bp; copy relations copy0..copyp.
  int part_count = 16;
};

class FormulaLibrary {
 public:
  explicit FormulaLibrary(FormulaLibraryConfig config = {});

  const FormulaLibraryConfig& config() const { return config_; }

  // Predicate/relation names.  colour_a/colour_b take 1-based part indices;
  // copy_name takes 0..part_count.  IndexOutOfRange otherwise.
  std::string colour_a(int i) const;
  std::string colour_b(int i) const;
  std::string copy_name(int i) const;

  // Vocabularies for the pipeline stages.
  Vocabulary base_vocabulary() const;      // {SET}
  Vocabulary coloured_vocabulary() const;  // {SET, A1..Ap, B1..Bp}
  Vocabulary copied_vocabulary() const;    // coloured + copy0..copyp
  Vocabulary tree_vocabulary() const;      // {desc}
  Vocabulary overlay_vocabulary() const;   // {desc, SET}

  // Derived predicates.  Uppercase names are {SET}-formulas on set
  // variables: ROOT, LEAF, LEAF_A (needs a colour), DESC, ANC, PARENT,
  // CHILD.  Lowercase names are {desc}-formulas on element variables:
  // root, leaf, child.  Binary predicates read "first argument is a
  // descendant/ancestor/parent/child of the second".  Default variable
  // names: X for unary, (X, Y) for binary; lowercase x / (x, y).
  // UnknownPredicateName for any other name; UsageError if LEAF_A is
  // requested without a colour.
  FormulaPtr derived_predicate(const std::string& name,
                               const std::string& colour = "") const;
  FormulaPtr derived_predicate_named(const std::string& name,
                                     const std::vector<std::string>& args,
                                     const std::string& colour = "") const;

  // Sentence over {SET} characterizing laminar set systems.  corrected=false
  // builds a variant with misplaced connectives that turns out to be
  // vacuously satisfiable (its singleton clause can witness itself), kept
  // for comparison; corrected=true is the intended characterization.
  FormulaPtr laminarity_sentence(bool corrected) const;

  // Branch classification of the node X by the elements satisfying the
  // unary predicate `colour`: fully / single / missed branched.  Free set
  // variable X (or `arg`).  UsageError for BranchKind::Partial, which has
  // no defining formula.
  FormulaPtr branch_formula(BranchKind kind, const std::string& colour) const;
  FormulaPtr branch_formula_named(BranchKind kind, const std::string& colour,
                                  const std::string& arg) const;

  // Representative-set predicate REP (starred=false) / REP* (starred=true)
  // with free variables (R, X): R is the candidate representative set, X the
  // set whose tree node it should represent.  `colour` is the unary
  // predicate bounding R.
  FormulaPtr rep_formula(const std::string& colour, bool starred) const;
  FormulaPtr rep_formula_named(const std::string& colour, bool starred,
                               const std::string& rep_var,
                               const std::string& set_var) const;

  // leader_i(r, X): element r is the designated leader of set X via part i.
  // i = 0 handles singleton sets; 1 <= i <= part_count uses REP* over
  // colour A_i with tie to B_i.  IndexOutOfRange otherwise.
  FormulaPtr leader_formula(int i) const;
  FormulaPtr leader_formula_named(int i, const std::string& elem_var,
                                  const std::string& set_var) const;

  // Filter sentence chi over the coloured vocabulary: every set has exactly
  // one leader index and one leader element, and within each part leaders of
  // distinct sets are distinct.
  FormulaPtr chi_sentence() const;

  // Counting formulas over {desc}.  Countkids(l): free (v, S), node v has
  // exactly l children in S (param l >= 0).  Oddkids(k): free (v, S), v has
  // an odd number, at most k, of children in S (param k >= 1).  Evenleaf(k):
  // free (X), in a tree of maximum down-degree k the leaf set X has even
  // cardinality (param k >= 1).  RangeError on bad params.
  FormulaPtr counting_formula(CountingKind kind, int param) const;
  FormulaPtr counting_formula_named(CountingKind kind, int param,
                                    const std::vector<std::string>& args) const;

 private:
  FormulaLibraryConfig config_;
  mutable std::map<std::string, FormulaPtr> cache_;

  FormulaPtr memo(const std::string& key,
                  const std::function<FormulaPtr()>& build) const;
  FormulaPtr leader_raw(int i, const std::string& elem_var,
                        const std::string& set_var) const;
};

}  // namespace lamtrans
