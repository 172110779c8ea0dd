#pragma once
// Generators, exhaustive enumerators, and brute-force oracles that turn the
// library's structural claims into runnable checks.  Every oracle here is
// implemented independently of the formula library (sharing only the
// structure and laminar-tree primitives), so agreement between formulas and
// oracles is evidence rather than tautology.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lamtrans/eval.hpp"
#include "lamtrans/laminar.hpp"

namespace lamtrans {

// A named collection of set systems with provenance, reproducible
// deterministically (exhaustive corpora from the leaf count, random corpora
// from the seed).
struct Corpus {
  std::string name;
  std::string provenance;
  std::vector<SetSystem> systems;
};

// All laminar systems on the fixed universe e1..en that arise from rooted
// trees with n labelled leaves in which every inner node has at least two
// children.  Requires 1 <= n <= 8 (RangeError otherwise).
Corpus enumerate_laminar(int n);

// How many systems enumerate_laminar(n) yields, computed by an independent
// counting recurrence instead of enumeration.
std::uint64_t count_laminar(int n);

// Random laminar system on n labelled leaves, built from a random rooted
// tree with at least two children per inner node.  Deterministic per
// (seed, n, arity_bias); a larger bias favours higher-arity inner nodes.
SetSystem gen_laminar(std::uint64_t seed, int n, double arity_bias = 0.35);

struct CheckResult {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t passes = 0;
  bool skipped = false;  // aborted for resources; never counts as a pass
  std::string detail;    // counterexamples, warnings, or the skip reason
  double seconds = 0.0;

  bool ok() const { return !skipped && instances == passes; }
};

struct VerificationReport {
  std::vector<CheckResult> checks;  // sorted by check name

  bool all_ok() const;
  std::string to_json() const;
  std::string to_text() const;
};

// Native evaluation of the representative-set conditions for a candidate
// leaf set B and node s against a colour A given as a leaf set (the union
// of one thin part's representative sets):
//   (i)   B is contained in A,
//   (ii)  s is the tip of B (the parent of the least common ancestor),
//   (iii) every child of a fully-branched descendant of s is single-branched
//         or a leaf in B,
//   (iv)  every single-branched descendant of s has exactly one child that
//         is fully-branched or a leaf in B, all of its other children having
//         subtrees disjoint from B, and
//   (v)   no proper superset of B satisfies (i)-(iv) with any node.
// "Descendant" includes the node itself in (iii) and (iv).  Works on trees
// with at most 16 leaves (ResourceLimitExceeded beyond that).
class RepOracle {
 public:
  RepOracle(const LaminarTree& tree, const Bits& colour);

  bool conditions_i_iv(std::uint32_t B, int node) const;
  bool condition_v(std::uint32_t B) const;
  bool verdict(std::uint32_t B, int node) const;  // (i)-(v)

 private:
  const LaminarTree& tree_;
  std::uint32_t colour_ = 0;
  std::vector<std::uint32_t> node_elems_;
  std::vector<char> any_i_iv_;  // per leaf mask: some node satisfies (i)-(iv)
};

// Enumerates every B over the leaves and every node s, compares the oracle
// verdict with "s is in S and B equals A_s", and reports the equivalence as
// a single-check report.
VerificationReport oracle_unique_rep(const LaminarTree& tree,
                                     const std::vector<int>& S,
                                     const RepAssignment& rep);

struct VerifyConfig {
  int e2e_max_leaves = 6;       // end-to-end transduction corpus bound
  int lemma_max_leaves = 5;     // oracle / filter / formula-agreement bound
  int random_systems = 500;     // random corpus size for native tree checks
  int random_max_leaves = 12;
  int random_structures = 200;  // random structures for evaluator agreement
  int tree_max_nodes = 8;       // counting-simulation tree size bound
  int part_count = 16;
  std::uint64_t seed = 0x5eed5eedULL;
  std::vector<std::string> checks;  // empty = run all; else filter by name
  EvalOptions eval = default_eval_options();
};

// The check names run_verification_suite knows, in report order.
const std::vector<std::string>& verification_check_names();

// Runs every check (or the configured subset).  Deterministic given the
// config; a check that hits a resource limit is reported as skipped with a
// reason, which all_ok() treats as failure.
VerificationReport run_verification_suite(const VerifyConfig& cfg = {});

}  // namespace lamtrans
