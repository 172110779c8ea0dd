#include "lamtrans/laminar.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace lamtrans {

using nlohmann::ordered_json;

SetSystem make_set_system(std::vector<std::string> universe,
                          std::vector<std::vector<std::string>> sets) {
  SetSystem sys;
  sys.universe = sorted_unique(std::move(universe));
  if (sys.universe.empty()) fail(ErrorKind::EmptyUniverse, "set system needs a nonempty universe");
  for (auto& set : sets) {
    set = sorted_unique(std::move(set));
    for (const auto& id : set) {
      if (!std::binary_search(sys.universe.begin(), sys.universe.end(), id))
        fail(ErrorKind::ElementOutOfUniverse, "set member '" + id + "' is not in the universe");
    }
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  sys.sets = std::move(sets);
  return sys;
}

std::string setsystem_to_json(const SetSystem& sys) {
  ordered_json j;
  j["universe"] = sys.universe;
  j["sets"] = sys.sets;
  return j.dump(2) + "\n";
}

SetSystem setsystem_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::SyntaxError, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::SyntaxError, "set system document must be an object");
  if (!j.contains("universe") || !j["universe"].is_array())
    fail(ErrorKind::SyntaxError, "missing or malformed 'universe'");
  if (!j.contains("sets") || !j["sets"].is_array())
    fail(ErrorKind::SyntaxError, "missing or malformed 'sets'");
  std::vector<std::string> universe;
  for (const auto& e : j["universe"]) {
    if (!e.is_string()) fail(ErrorKind::SyntaxError, "universe entries must be strings");
    universe.push_back(e.get<std::string>());
  }
  std::vector<std::vector<std::string>> sets;
  for (const auto& arr : j["sets"]) {
    if (!arr.is_array()) fail(ErrorKind::SyntaxError, "'sets' entries must be arrays");
    std::vector<std::string> set;
    for (const auto& e : arr) {
      if (!e.is_string()) fail(ErrorKind::SyntaxError, "set entries must be strings");
      set.push_back(e.get<std::string>());
    }
    sets.push_back(std::move(set));
  }
  return make_set_system(std::move(universe), std::move(sets));
}

Structure system_to_structure(const SetSystem& sys) {
  Vocabulary voc;
  voc.symbols.push_back(Symbol{"SET", SymbolKind::SetPredicate, 1});
  std::map<std::string, std::vector<ElementSet>> preds;
  preds["SET"] = sys.sets;
  return make_structure(std::move(voc), sys.universe, {}, std::move(preds));
}

SetSystem structure_to_setsystem(const Structure& s) {
  const Symbol* sym = s.vocabulary.find("SET");
  if (sym == nullptr || sym->kind != SymbolKind::SetPredicate || sym->arity != 1)
    fail(ErrorKind::VocabularyMismatch, "structure lacks a unary set predicate named SET");
  return make_set_system(s.universe, s.set_predicates.at("SET"));
}

namespace {

std::string set_to_text(const std::vector<std::string>& set) {
  std::string out = "{";
  for (size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += ",";
    out += set[i];
  }
  return out + "}";
}

Bits ids_to_bits(const std::vector<std::string>& universe, const std::vector<std::string>& ids) {
  Bits b(universe.size());
  for (const auto& id : ids) {
    auto it = std::lower_bound(universe.begin(), universe.end(), id);
    if (it == universe.end() || *it != id)
      fail(ErrorKind::ElementOutOfUniverse, "element '" + id + "' is not in the universe");
    b.set(static_cast<size_t>(it - universe.begin()));
  }
  return b;
}

}  // namespace

bool check_laminar(const SetSystem& sys, std::string* reason) {
  auto explain = [&](const std::string& why) {
    if (reason != nullptr) *reason = why;
    return false;
  };
  if (!std::binary_search(sys.sets.begin(), sys.sets.end(), sys.universe))
    return explain("the universe is not a member of the family");
  for (const auto& id : sys.universe) {
    std::vector<std::string> singleton{id};
    if (!std::binary_search(sys.sets.begin(), sys.sets.end(), singleton))
      return explain("the singleton {" + id + "} is missing from the family");
  }
  std::vector<Bits> bits;
  bits.reserve(sys.sets.size());
  for (const auto& set : sys.sets) bits.push_back(ids_to_bits(sys.universe, set));
  for (size_t a = 0; a < bits.size(); ++a) {
    for (size_t b = a + 1; b < bits.size(); ++b) {
      if (!bits[a].intersects(bits[b])) continue;
      if (bits[a].subset_of(bits[b]) || bits[b].subset_of(bits[a])) continue;
      return explain("sets " + set_to_text(sys.sets[a]) + " and " + set_to_text(sys.sets[b]) +
                     " cross");
    }
  }
  if (reason != nullptr) reason->clear();
  return true;
}

LaminarTree build_laminar_tree(const SetSystem& sys) {
  std::string reason;
  if (!check_laminar(sys, &reason)) fail(ErrorKind::NotLaminar, reason);
  for (const auto& set : sys.sets) {
    if (set.empty())
      fail(ErrorKind::NotLaminar, "the empty set is a member but corresponds to no tree node");
  }

  const size_t m = sys.sets.size();
  std::vector<Bits> bits;
  bits.reserve(m);
  for (const auto& set : sys.sets) bits.push_back(ids_to_bits(sys.universe, set));

  // Parent = strict superset of minimum cardinality (supersets form a chain).
  std::vector<int> parent(m, -1);
  int root_ix = -1;
  for (size_t a = 0; a < m; ++a) {
    if (bits[a].count() == sys.universe.size()) root_ix = static_cast<int>(a);
    int best = -1;
    for (size_t b = 0; b < m; ++b) {
      if (a == b || bits[a].count() >= bits[b].count()) continue;
      if (!bits[a].subset_of(bits[b])) continue;
      if (best < 0 || bits[b].count() < bits[best].count()) best = static_cast<int>(b);
    }
    parent[a] = best;
  }

  std::vector<std::vector<int>> children(m);
  for (size_t a = 0; a < m; ++a) {
    if (parent[a] >= 0) children[parent[a]].push_back(static_cast<int>(a));
  }
  for (auto& ch : children) {
    std::sort(ch.begin(), ch.end(),
              [&](int x, int y) { return bits[x].lowest() < bits[y].lowest(); });
  }

  LaminarTree tree;
  tree.universe = sys.universe;
  tree.nodes.resize(m);
  tree.leaf_of.assign(sys.universe.size(), -1);

  std::vector<int> id_of(m, -1);
  std::queue<int> queue;
  queue.push(root_ix);
  id_of[root_ix] = 0;
  int next_id = 1;
  std::vector<int> bfs_order;
  while (!queue.empty()) {
    int ix = queue.front();
    queue.pop();
    bfs_order.push_back(ix);
    for (int ch : children[ix]) {
      id_of[ch] = next_id++;
      queue.push(ch);
    }
  }
  for (int ix : bfs_order) {
    LaminarTree::Node& node = tree.nodes[id_of[ix]];
    node.id = id_of[ix];
    node.parent = parent[ix] < 0 ? -1 : id_of[parent[ix]];
    node.elems = bits[ix];
    node.depth = node.parent < 0 ? 0 : tree.nodes[node.parent].depth + 1;
    for (int ch : children[ix]) node.children.push_back(id_of[ch]);
    if (node.children.empty()) tree.leaf_of[node.elems.lowest()] = node.id;
  }
  return tree;
}

int LaminarTree::node_with_elems(const Bits& elems) const {
  for (const Node& node : nodes) {
    if (node.elems == elems) return node.id;
  }
  return -1;
}

std::vector<int> LaminarTree::inner_nodes() const {
  std::vector<int> out;
  for (const Node& node : nodes) {
    if (!node.children.empty()) out.push_back(node.id);
  }
  return out;
}

std::vector<std::string> LaminarTree::elem_ids(const Bits& elems) const {
  std::vector<std::string> out;
  for (int ix : elems.indices()) out.push_back(universe[ix]);
  return out;
}

Bits LaminarTree::elems_from_ids(const std::vector<std::string>& ids) const {
  return ids_to_bits(universe, ids);
}

std::string tree_to_json(const LaminarTree& tree) {
  ordered_json j;
  j["root"] = tree.root();
  ordered_json nodes = ordered_json::array();
  for (const auto& node : tree.nodes) {
    ordered_json n;
    n["id"] = node.id;
    if (node.parent < 0) {
      n["parent"] = nullptr;
    } else {
      n["parent"] = node.parent;
    }
    n["leaves"] = tree.elem_ids(node.elems);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

std::string tree_to_dot(const LaminarTree& tree) {
  std::ostringstream out;
  out << "digraph laminar {\n";
  out << "  node [shape=box];\n";
  for (const auto& node : tree.nodes) {
    std::string label;
    if (node.children.empty()) {
      label = tree.universe[node.elems.lowest()];
    } else {
      label = set_to_text(tree.elem_ids(node.elems));
    }
    out << "  n" << node.id << " [label=\"" << label << "\"];\n";
  }
  for (const auto& node : tree.nodes) {
    for (int ch : node.children) out << "  n" << node.id << " -> n" << ch << ";\n";
  }
  out << "}\n";
  return out.str();
}

TipResult tip_and_uptree(const LaminarTree& tree, const Bits& B) {
  if (B.empty()) fail(ErrorKind::TipUndefined, "the leaf set is empty");
  int lca = tree.leaf_of[B.lowest()];
  while (!B.subset_of(tree.nodes[lca].elems)) lca = tree.nodes[lca].parent;
  if (lca == tree.root())
    fail(ErrorKind::TipUndefined, "the least common ancestor is the root, so it has no parent");
  TipResult result;
  result.tip = tree.nodes[lca].parent;
  std::vector<char> seen(tree.nodes.size(), 0);
  seen[result.tip] = 1;
  for (int ix : B.indices()) {
    int v = tree.leaf_of[ix];
    while (seen[v] == 0) {
      seen[v] = 1;
      v = tree.nodes[v].parent;
    }
  }
  for (size_t v = 0; v < seen.size(); ++v) {
    if (seen[v] != 0) result.uptree.push_back(static_cast<int>(v));
  }
  return result;
}

TipResult tip_and_uptree(const LaminarTree& tree, const std::vector<std::string>& B) {
  return tip_and_uptree(tree, tree.elems_from_ids(B));
}

BranchClass classify_branch(const LaminarTree& tree, const Bits& B, int node) {
  if (node < 0 || node >= tree.size())
    fail(ErrorKind::IndexOutOfRange, "node id out of range");
  if (tree.is_leaf(node)) fail(ErrorKind::NotInnerNode, "branch classes apply to inner nodes only");
  int hits = 0;
  int branched = -1;
  for (int ch : tree.nodes[node].children) {
    if (tree.nodes[ch].elems.intersects(B)) {
      ++hits;
      branched = ch;
    }
  }
  BranchClass out;
  if (hits == 0) {
    out.kind = BranchKind::Missed;
  } else if (hits == static_cast<int>(tree.nodes[node].children.size())) {
    out.kind = BranchKind::Fully;
  } else if (hits == 1) {
    out.kind = BranchKind::Single;
    out.branched_child = branched;
  } else {
    out.kind = BranchKind::Partial;
  }
  return out;
}

bool is_representative_tree(const LaminarTree& tree, int s, const std::vector<int>& H) {
  if (s < 0 || s >= tree.size()) fail(ErrorKind::IndexOutOfRange, "node id out of range");
  std::vector<char> in_h(tree.nodes.size(), 0);
  for (int v : H) {
    if (v < 0 || v >= tree.size()) fail(ErrorKind::IndexOutOfRange, "node id out of range");
    in_h[v] = 1;
  }
  int h_root = -1;
  int root_count = 0;
  for (int v = 0; v < tree.size(); ++v) {
    if (in_h[v] == 0) continue;
    int p = tree.nodes[v].parent;
    if (p < 0 || in_h[p] == 0) {
      h_root = v;
      ++root_count;
    }
  }
  if (root_count != 1)
    fail(ErrorKind::NotASubtree, "the node set does not induce a connected subtree");
  if (h_root != s) return false;
  for (int v = 0; v < tree.size(); ++v) {
    if (in_h[v] == 0 || tree.is_leaf(v)) continue;
    int kept = 0;
    for (int ch : tree.nodes[v].children) kept += in_h[ch];
    bool parity_equal = (tree.nodes[v].depth % 2) == (tree.nodes[s].depth % 2);
    if (parity_equal) {
      if (kept != 1) return false;
    } else {
      if (kept != static_cast<int>(tree.nodes[v].children.size())) return false;
    }
  }
  return true;
}

bool is_thin(const LaminarTree& tree, const std::vector<int>& S) {
  std::vector<char> in_s(tree.nodes.size(), 0);
  for (int v : S) {
    if (v < 0 || v >= tree.size()) fail(ErrorKind::IndexOutOfRange, "node id out of range");
    if (tree.is_leaf(v)) fail(ErrorKind::ContainsLeaf, "thin sets contain inner nodes only");
    in_s[v] = 1;
  }
  if (S.empty()) return true;
  int label = tree.depth_label(S.front());
  for (int v : S) {
    if (tree.depth_label(v) != label) return false;
  }
  for (int v : S) {
    int p = tree.nodes[v].parent;
    if (p < 0) continue;  // the root has no siblings
    bool has_free_sibling = false;
    for (int sib : tree.nodes[p].children) {
      if (sib != v && in_s[sib] == 0) {
        has_free_sibling = true;
        break;
      }
    }
    if (!has_free_sibling) return false;
  }
  for (int v : S) {
    int p = tree.nodes[v].parent;
    if (p < 0) continue;
    int g = tree.nodes[p].parent;
    if (g < 0) continue;  // children of the root are exempt
    bool has_free_uncle = false;
    for (int uncle : tree.nodes[g].children) {
      if (uncle == p) continue;
      bool child_in_s = false;
      for (int ch : tree.nodes[uncle].children) {
        if (in_s[ch] != 0) {
          child_in_s = true;
          break;
        }
      }
      if (!child_in_s) {
        has_free_uncle = true;
        break;
      }
    }
    if (!has_free_uncle) return false;
  }
  return true;
}

ThinPartition thin_partition(const LaminarTree& tree) {
  ThinPartition tp;
  for (int i = 0; i < 4; ++i) {
    std::vector<char> in_vi(tree.nodes.size(), 0);
    for (int v : tree.inner_nodes()) {
      if (tree.depth_label(v) == i) in_vi[v] = 1;
    }
    // First split: under each parent, the first depth-class-i child (in
    // sibling order) goes to slot P1, later ones to P2; an inner root of
    // class i stands alone and goes to P1.
    std::vector<char> in_p1(tree.nodes.size(), 0);
    if (in_vi[tree.root()] != 0) in_p1[tree.root()] = 1;
    for (int p = 0; p < tree.size(); ++p) {
      bool first = true;
      for (int ch : tree.nodes[p].children) {
        if (in_vi[ch] == 0) continue;
        if (first) in_p1[ch] = 1;
        first = false;
      }
    }
    // Refinement: under each grandparent, members whose parent is the first
    // child (in sibling order) with class-i children keep their slot (S1/S2),
    // members under later such children move to S3/S4.  The root and the
    // root's children have no grandparent and stay in S1/S2.
    for (int v = 0; v < tree.size(); ++v) {
      if (in_vi[v] == 0) continue;
      int slot;
      int p = tree.nodes[v].parent;
      int g = p < 0 ? -1 : tree.nodes[p].parent;
      if (g < 0) {
        slot = in_p1[v] != 0 ? 0 : 1;
      } else {
        int first_parent = -1;
        for (int cand : tree.nodes[g].children) {
          bool has_vi_child = false;
          for (int ch : tree.nodes[cand].children) {
            if (in_vi[ch] != 0) {
              has_vi_child = true;
              break;
            }
          }
          if (has_vi_child) {
            first_parent = cand;
            break;
          }
        }
        if (p == first_parent) {
          slot = in_p1[v] != 0 ? 0 : 1;
        } else {
          slot = in_p1[v] != 0 ? 2 : 3;
        }
      }
      tp.parts[4 * i + slot].push_back(v);
    }
  }
  for (auto& part : tp.parts) std::sort(part.begin(), part.end());
  return tp;
}

RepAssignment build_representative_sets(const LaminarTree& tree, const std::vector<int>& S) {
  if (!is_thin(tree, S)) fail(ErrorKind::NotThin, "representative sets require a thin node set");
  RepAssignment out;
  if (S.empty()) return out;

  std::vector<char> in_p(tree.nodes.size(), 0);
  for (int s : S) {
    if (tree.nodes[s].parent >= 0) in_p[tree.nodes[s].parent] = 1;
  }

  std::vector<int> sorted_s = S;
  std::sort(sorted_s.begin(), sorted_s.end());
  for (int s : sorted_s) {
    RepEntry entry;
    entry.s = s;
    entry.rep_elems = Bits(tree.universe.size());
    std::vector<int> level{s};
    int rel = 0;
    while (!level.empty()) {
      std::vector<int> next;
      for (int t : level) {
        entry.tree_nodes.push_back(t);
        if (tree.is_leaf(t)) {
          entry.rep_elems.set(tree.nodes[t].elems.lowest());
          continue;
        }
        switch (rel) {
          case 0:
            next.push_back(tree.nodes[t].children.front());
            break;
          case 1:
          case 3:
            for (int ch : tree.nodes[t].children) next.push_back(ch);
            break;
          case 2: {
            int pick = -1;
            for (int ch : tree.nodes[t].children) {
              if (in_p[ch] == 0) {
                pick = ch;
                break;
              }
            }
            if (pick < 0)
              fail(ErrorKind::NotThin, "every child is a parent of the thin set");
            next.push_back(pick);
            break;
          }
          default:
            break;
        }
      }
      level = std::move(next);
      rel = (rel + 1) % 4;
    }
    std::sort(entry.tree_nodes.begin(), entry.tree_nodes.end());
    out.entries.push_back(std::move(entry));
  }
  return out;
}

IdentifyingColouring identifying_colouring(const LaminarTree& tree, const ThinPartition& tp) {
  IdentifyingColouring col;
  for (int i = 0; i < 16; ++i) {
    col.A[i] = Bits(tree.universe.size());
    col.B[i] = Bits(tree.universe.size());
    col.reps[i] = build_representative_sets(tree, tp.parts[i]);
    for (const RepEntry& entry : col.reps[i].entries) {
      col.A[i] |= entry.rep_elems;
      col.B[i].set(entry.rep_elems.lowest());
    }
  }
  return col;
}

}  // namespace lamtrans
