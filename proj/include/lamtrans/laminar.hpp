#pragma once

#include <array>
#include <string>
#include <vector>

#include "lamtrans/bits.hpp"
#include "lamtrans/errors.hpp"
#include "lamtrans/structures.hpp"

namespace lamtrans {

// Native combinatorics for laminar set systems: the tree a laminar family
// induces, branching classification against a leaf set, representative
// trees/sets, thin partitions of the inner nodes, and the identifying
// colouring assembled from them.

struct SetSystem {
  std::vector<std::string> universe;             // sorted element ids
  std::vector<std::vector<std::string>> sets;    // each sorted; family sorted + deduplicated

  friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

// Validates membership (every set ⊆ universe, universe nonempty) and brings
// both levels into canonical sorted order.
SetSystem make_set_system(std::vector<std::string> universe,
                          std::vector<std::vector<std::string>> sets);

std::string setsystem_to_json(const SetSystem& sys);
SetSystem setsystem_from_json(const std::string& text);

// A set system as a structure over the one-symbol vocabulary {SET/1}, and
// back.  The reverse direction requires a unary set predicate named SET.
Structure system_to_structure(const SetSystem& sys);
SetSystem structure_to_setsystem(const Structure& s);

// True iff the family contains the whole universe and every singleton, and
// every two members are disjoint or nested.  On failure an optional reason
// string describes the first violation found.
bool check_laminar(const SetSystem& sys, std::string* reason = nullptr);

struct LaminarTree {
  struct Node {
    int id = 0;
    int parent = -1;                 // -1 for the root
    std::vector<int> children;       // ordered by minimum leaf element index
    Bits elems;                      // leaf elements below this node
    int depth = 0;
  };

  std::vector<std::string> universe;  // sorted element ids
  std::vector<Node> nodes;            // indexed by node id; breadth-first from root 0
  std::vector<int> leaf_of;           // element index -> leaf node id

  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes.size()); }
  bool is_leaf(int v) const { return nodes[v].children.empty(); }
  bool is_inner(int v) const { return !nodes[v].children.empty(); }
  int depth_label(int v) const { return nodes[v].depth % 4; }
  int leaf_count() const { return static_cast<int>(universe.size()); }

  // Node whose leafset equals the given set, or -1.
  int node_with_elems(const Bits& elems) const;
  std::vector<int> inner_nodes() const;
  std::vector<std::string> elem_ids(const Bits& elems) const;
  Bits elems_from_ids(const std::vector<std::string>& ids) const;
};

// Builds the unique tree whose node leafsets are exactly the family members,
// parent = minimal strict superset.  Node ids are breadth-first with sibling
// order by minimum leaf element.  Rejects non-laminar systems and families
// containing the empty set (it corresponds to no node).
LaminarTree build_laminar_tree(const SetSystem& sys);

std::string tree_to_json(const LaminarTree& tree);
std::string tree_to_dot(const LaminarTree& tree);

struct TipResult {
  int tip = -1;
  std::vector<int> uptree;  // nodes on the paths from tip down to each leaf of B
};

// tip = parent of the least common ancestor of the leaves of B; the up-tree
// is the minimal subtree containing the tip and B's leaves.  Undefined when
// the lca is the root (or B is empty).
TipResult tip_and_uptree(const LaminarTree& tree, const Bits& B);
TipResult tip_and_uptree(const LaminarTree& tree, const std::vector<std::string>& B);

enum class BranchKind { Fully, Single, Missed, Partial };

struct BranchClass {
  BranchKind kind = BranchKind::Missed;
  int branched_child = -1;  // for Single: the unique child whose subtree meets B

  friend bool operator==(const BranchClass&, const BranchClass&) = default;
};

// Classifies an inner node against leaf set B: fully (every child subtree
// meets B), single (exactly one does), or missed (none does).  Partial marks
// the remaining case (more than one child but not all), which cannot arise
// for the leaf sets the representative machinery produces but keeps the
// classification total for arbitrary B.
BranchClass classify_branch(const LaminarTree& tree, const Bits& B, int node);

// Representative-tree test: s roots H; nodes of H whose depth parity equals
// s's have exactly one child in H (unless leaves), all others have all their
// children in H.  H must induce a connected subtree.
bool is_representative_tree(const LaminarTree& tree, int s, const std::vector<int>& H);

// Thin-set test: all nodes share one depth label; every non-root member has
// a sibling outside S; every member below depth 1 has an uncle none of whose
// children lies in S.  Members must be inner nodes.
bool is_thin(const LaminarTree& tree, const std::vector<int>& S);

struct ThinPartition {
  std::array<std::vector<int>, 16> parts;  // parts[4*i + c]: depth class i, slot c

  static int part_label(int part_index) { return part_index / 4; }
};

// Partitions the inner nodes into 16 thin sets: per depth class, first-child
// versus later-children under each parent, refined by first versus later
// parent groups under each grandparent, with the stated root special cases.
ThinPartition thin_partition(const LaminarTree& tree);

struct RepEntry {
  int s = -1;
  std::vector<int> tree_nodes;  // H_s, sorted
  Bits rep_elems;               // A_s: leaf elements of H_s
};

struct RepAssignment {
  std::vector<RepEntry> entries;  // one per s in S, in ascending node order
};

// Level-by-level representative trees for a thin set: relative to the depth
// label i shared by S, a level whose nodes carry label i keeps one child
// (first in sibling order), label i+1 keeps all children, label i+2 keeps one
// child that is not a parent of an S-node, label i+3 keeps all children.
RepAssignment build_representative_sets(const LaminarTree& tree, const std::vector<int>& S);

struct IdentifyingColouring {
  std::array<Bits, 16> A;  // A[i] = union of rep sets of part i
  std::array<Bits, 16> B;  // minimum element of each rep set
  std::array<RepAssignment, 16> reps;
};

IdentifyingColouring identifying_colouring(const LaminarTree& tree, const ThinPartition& tp);

}  // namespace lamtrans
