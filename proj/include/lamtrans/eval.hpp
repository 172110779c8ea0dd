#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lamtrans/bits.hpp"
#include "lamtrans/logic.hpp"
#include "lamtrans/structures.hpp"

namespace lamtrans {

struct EvalOptions {
  // Restrict set quantifier ranges when the body syntactically guards the
  // variable (see Evaluator): by a set-predicate atom, or by a subset bound
  // against a unary relation.  Semantics-preserving; on by default.
  bool guarded = true;
  // Set quantifiers without a family guard enumerate all subsets of a base
  // domain; beyond this many base elements evaluation refuses to run.
  std::size_t max_subset_universe = 16;
};

// Integer-indexed view of a Structure used by the evaluator.  Element ids are
// mapped to dense indices following their sorted order; set-predicate members
// are kept in canonical (cardinality, lexicographic) order.
class IndexedStructure {
 public:
  explicit IndexedStructure(const Structure& s);

  const Structure& source() const { return *src_; }
  int size() const { return int(elems_.size()); }
  const std::vector<std::string>& elements() const { return elems_; }
  int index_of(const std::string& id) const;  // -1 when absent

  struct Relation {
    int arity = 0;
    Bits unary;                                // arity 1
    std::unordered_set<std::uint64_t> binary;  // arity 2, packed (a << 32) | b
    std::vector<std::vector<int>> tuples;      // any arity, sorted
  };
  struct Predicate {
    std::vector<Bits> members;  // canonical order
    std::unordered_set<Bits, BitsHash> lookup;
  };

  const Relation* relation(const std::string& name) const;
  const Predicate* predicate(const std::string& name) const;

  Bits set_to_bits(const std::vector<std::string>& ids) const;
  std::vector<std::string> bits_to_ids(const Bits& b) const;

 private:
  const Structure* src_;
  std::vector<std::string> elems_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<std::string, Relation> rels_;
  std::unordered_map<std::string, Predicate> preds_;
};

// Exact recursive MSO evaluation with memoization on shared subformulas.
// Set quantifiers enumerate candidate sets in (cardinality, lexicographic)
// order; element quantifiers follow ascending element index.  An Evaluator is
// bound to one structure and accumulates memo entries across calls, so
// sweeping many formulas or assignments over the same structure is cheap.
class Evaluator {
 public:
  explicit Evaluator(const IndexedStructure& s, EvalOptions opts = {});

  bool eval(const FormulaPtr& f, const Assignment& a = {});

  // Pre-indexed bindings, used by the transduction pipeline sweeps.
  struct Binding {
    std::vector<std::pair<std::string, int>> elems;
    std::vector<std::pair<std::string, Bits>> sets;
  };
  bool eval_indexed(const FormulaPtr& f, const Binding& b);

  const EvalOptions& options() const { return opts_; }

 private:
  struct EnvElem {
    const std::string* name;
    int value;
  };
  struct EnvSet {
    const std::string* name;
    const Bits* value;
  };
  struct Env {
    std::vector<EnvElem> elems;
    std::vector<EnvSet> sets;
  };

  enum class GuardKind { None, Family, SubsetOfUnary };
  struct NodeInfo {
    bool memo = false;
    GuardKind guard = GuardKind::None;
    const std::vector<Bits>* family = nullptr;
    const Bits* unary = nullptr;
  };

  struct MemoKey {
    const Formula* node = nullptr;
    std::array<std::uint64_t, 6> payload{};
    std::uint8_t len = 0;
    friend bool operator==(const MemoKey&, const MemoKey&) = default;
  };
  struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
      std::uint64_t h = 1469598103934665603ull ^ reinterpret_cast<std::uintptr_t>(k.node);
      for (std::uint8_t i = 0; i < k.len; ++i) {
        h ^= k.payload[i];
        h *= 1099511628211ull;
      }
      return std::size_t(h);
    }
  };

  bool ev(const Formula& f, Env& env);
  bool ev_quant_set(const Formula& f, Env& env);
  int lookup_elem(const Env& env, const std::string& v) const;
  const Bits* lookup_set(const Env& env, const std::string& v) const;
  const NodeInfo& info(const Formula& f);
  bool build_key(const Formula& f, const Env& env, MemoKey& out) const;

  const IndexedStructure& s_;
  EvalOptions opts_;
  std::unordered_map<const Formula*, NodeInfo> infos_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
};

// Convenience wrapper building the index for a single evaluation.
bool eval(const Structure& s, const FormulaPtr& f, const Assignment& a = {},
          EvalOptions opts = {});

// Reads the cap override from the environment (LAMTRANS_MAX_SUBSET_UNIVERSE)
// and applies it to the returned options.
EvalOptions default_eval_options();

}  // namespace lamtrans
