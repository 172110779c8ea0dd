#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lamtrans/eval.hpp"
#include "lamtrans/formulas.hpp"
#include "lamtrans/laminar.hpp"
#include "lamtrans/logic.hpp"
#include "lamtrans/structures.hpp"

namespace lamtrans {

// Atomic transduction steps.  A step maps one structure to a finite set of
// structures; a pipeline composes steps by fanning out.

struct ColouringStep {
  // New unary relation names, in declaration order.
  std::vector<std::string> names;
  enum class Policy { Provided, Enumerate } policy = Policy::Provided;
  // Provided policy: interpretation per colour name; omitted names are empty.
  std::map<std::string, std::vector<std::string>> provided;
  // Enumerate policy emits all 2^(names * universe) colourings; refused when
  // the exponent exceeds this cap.
  std::size_t enumerate_bit_cap = 16;
};

struct CopyingStep {
  // Adds `copies` fresh copies of every element.  Element e becomes "0#e" and
  // its i-th copy "i#e"; relations copy0 (identity on originals) through
  // copy{copies} are added, existing interpretations move to the originals.
  int copies = 1;
};

struct FilteringStep {
  FormulaPtr sentence;  // closed formula; structure passes iff it holds
};

struct InterpretationOutput {
  // Free variable names of psi in symbol-argument order: element variables
  // for a relation, one set variable for a set predicate.
  std::vector<std::string> args;
  FormulaPtr psi;
};

struct InterpretationStep {
  std::string domain_var;
  FormulaPtr domain;  // one free element variable: which elements survive
  Vocabulary output_vocabulary;
  std::map<std::string, InterpretationOutput> outputs;
};

using TransductionStep =
    std::variant<ColouringStep, CopyingStep, FilteringStep, InterpretationStep>;

struct Pipeline {
  std::vector<TransductionStep> steps;
};

// Applies one atomic step.  Colouring/Copying/Interpretation emit exactly one
// structure (Colouring under Enumerate emits many); Filtering emits zero or
// one.
std::vector<Structure> apply_step(const Structure& s, const TransductionStep& step,
                                  const EvalOptions& opts = default_eval_options());

// Applies the steps in order to every intermediate structure.  When
// trace_json is given it receives a JSON array describing each step's
// fan-out (step kind, output count, universe sizes, filter verdicts).
std::vector<Structure> apply_pipeline(const Structure& s, const Pipeline& pl,
                                      const EvalOptions& opts = default_eval_options(),
                                      std::string* trace_json = nullptr);

enum class ColouringPolicy { Witness, Enumerate };

struct LaminarToTreeOptions {
  ColouringPolicy policy = ColouringPolicy::Witness;
  int part_count = 16;
  // Drop the SET overlay with a trailing interpretation, leaving pure {desc}.
  bool strip_set = false;
  EvalOptions eval = default_eval_options();
};

// The four-step pipeline turning a {SET}-structure of a laminar set system
// into the {desc, SET} overlay of its laminar tree: 2p-colouring (witness
// policy injects the natively computed identifying colouring), filtering by
// chi, p-copying, and the realization interpretation.  Nonempty thin-partition
// slots are packed into colour indices 1..p; more nonempty slots than p is a
// RangeError.  NotLaminar when the input is not laminar.
Pipeline main_pipeline(const Structure& sys, const LaminarToTreeOptions& opt = {});

// Runs main_pipeline and returns the first output.  FilterRejectedWitness if
// filtering leaves nothing (for the witness policy this would contradict the
// construction and indicates an internal inconsistency).
Structure laminar_to_tree(const Structure& sys, const LaminarToTreeOptions& opt = {},
                          std::string* trace_json = nullptr);

// Interprets a rooted tree back into the set system whose sets are the leaf
// sets below each node.  Universe: the leaves; SET(X) iff X is the full leaf
// set under some node.  NotATree when desc is not a reflexive partial order
// shaping a rooted tree.
Structure tree_to_setsystem(const Structure& tree,
                            const EvalOptions& opts = default_eval_options());

// Rooted tree with canonical-form support.  Labels: leaves carry their
// element id with any copy prefix (through the first '#') removed; inner
// nodes carry the empty label.
struct RootedTree {
  int root = -1;
  std::vector<std::vector<int>> children;
  std::vector<std::string> labels;
};

RootedTree rooted_tree_from_desc(const Structure& s);
RootedTree rooted_tree_from_laminar(const LaminarTree& t);

// Canonical string: equal exactly for trees isomorphic by a root-preserving,
// leaf-label-respecting isomorphism.
std::string rooted_tree_canon(const RootedTree& t);

bool rooted_tree_iso(const RootedTree& a, const RootedTree& b);
bool rooted_tree_iso(const LaminarTree& a, const Structure& b);
bool rooted_tree_iso(const Structure& a, const Structure& b);

}  // namespace lamtrans
