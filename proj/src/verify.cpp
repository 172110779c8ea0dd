#include "lamtrans/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "lamtrans/errors.hpp"
#include "lamtrans/formulas.hpp"
#include "lamtrans/logic.hpp"
#include "lamtrans/transduction.hpp"

namespace lamtrans {
namespace {

using Mask = std::uint32_t;
using OrderedJson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small shared helpers.

std::vector<std::string> element_names(int n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

std::vector<std::string> mask_to_ids(Mask m, const std::vector<std::string>& universe) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (m & (Mask(1) << i)) out.push_back(universe[i]);
  }
  return out;
}

Mask bits_to_mask(const Bits& b) {
  Mask m = 0;
  for (int i : b.indices()) m |= Mask(1) << i;
  return m;
}

Bits mask_to_bits(Mask m, int n) {
  Bits b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (m & (Mask(1) << i)) b.set(static_cast<std::size_t>(i));
  }
  return b;
}

std::string mask_label(Mask m, const std::vector<std::string>& universe) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (m & (Mask(1) << i)) {
      if (!first) out += ",";
      out += universe[i];
      first = false;
    }
  }
  return out + "}";
}

std::string system_label(const SetSystem& sys) {
  std::string out;
  for (const auto& s : sys.sets) {
    out += "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += s[i];
    }
    out += "}";
    if (out.size() > 110) return out + "...";
  }
  return out;
}

// Collects at most three failure messages into a check's detail field; the
// instance/pass counters carry the full totals.
struct FailureLog {
  CheckResult* r;
  int shown = 0;

  void operator()(const std::string& msg) {
    if (shown < 3) {
      if (!r->detail.empty()) r->detail += "\n";
      r->detail += msg;
    } else if (shown == 3) {
      r->detail += "\n(more failures suppressed)";
    }
    ++shown;
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool eval_closed(const Structure& st, const FormulaPtr& f, const EvalOptions& o) {
  IndexedStructure idx(st);
  Evaluator ev(idx, o);
  return ev.eval_indexed(f, Evaluator::Binding{});
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of laminar systems: every rooted tree with the given
// labelled leaves and at least two children per inner node, represented by
// the family of leaf sets of its nodes.

// All partitions of `mask` into nonempty blocks; the block containing the
// lowest bit is enumerated over submasks, then the remainder recursively.
void partitions_rec(Mask mask, std::vector<Mask>& acc,
                    std::vector<std::vector<Mask>>& out) {
  if (mask == 0) {
    out.push_back(acc);
    return;
  }
  const Mask low = mask & (~mask + 1);
  const Mask others = mask ^ low;
  Mask sub = 0;
  while (true) {
    const Mask block = low | sub;
    acc.push_back(block);
    partitions_rec(mask ^ block, acc, out);
    acc.pop_back();
    if (sub == others) break;
    sub = (sub - others) & others;  // next submask of `others`, ascending
  }
}

std::vector<std::vector<Mask>> trees_on(Mask mask);

void trees_product(const std::vector<std::vector<std::vector<Mask>>>& choices,
                   std::size_t i, std::vector<Mask>& acc, Mask root_mask,
                   std::vector<std::vector<Mask>>& out) {
  if (i == choices.size()) {
    std::vector<Mask> tree;
    tree.reserve(acc.size() + 1);
    tree.push_back(root_mask);
    tree.insert(tree.end(), acc.begin(), acc.end());
    out.push_back(std::move(tree));
    return;
  }
  for (const auto& sub : choices[i]) {
    const std::size_t before = acc.size();
    acc.insert(acc.end(), sub.begin(), sub.end());
    trees_product(choices, i + 1, acc, root_mask, out);
    acc.resize(before);
  }
}

std::vector<std::vector<Mask>> trees_on(Mask mask) {
  if (std::popcount(mask) == 1) return {{mask}};
  std::vector<std::vector<Mask>> out;
  std::vector<std::vector<Mask>> partitions;
  std::vector<Mask> acc;
  partitions_rec(mask, acc, partitions);
  for (const auto& blocks : partitions) {
    if (blocks.size() < 2) continue;  // an inner node needs >= 2 children
    std::vector<std::vector<std::vector<Mask>>> choices;
    choices.reserve(blocks.size());
    for (Mask b : blocks) choices.push_back(trees_on(b));
    std::vector<Mask> prod_acc;
    trees_product(choices, 0, prod_acc, mask, out);
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rooted-tree helpers shared by the counting checks: trees given as parent
// arrays (node 0 the root, parent[i] < i), turned into reflexive-transitive
// descendant structures over {desc}.

std::vector<std::vector<int>> children_of(const std::vector<int>& parent) {
  std::vector<std::vector<int>> ch(parent.size());
  for (std::size_t i = 1; i < parent.size(); ++i) {
    ch[static_cast<std::size_t>(parent[i])].push_back(static_cast<int>(i));
  }
  return ch;
}

Structure desc_structure_from_parents(const std::vector<int>& parent,
                                      const std::vector<std::string>& names) {
  Vocabulary voc;
  voc.symbols = {Symbol{"desc", SymbolKind::Relation, 2}};
  std::vector<Tuple> desc;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    int a = static_cast<int>(v);
    while (a >= 0) {
      desc.push_back({names[v], names[static_cast<std::size_t>(a)]});
      a = parent[static_cast<std::size_t>(a)];
    }
  }
  return make_structure(voc, names, {{"desc", desc}}, {});
}

// Enumerates parent arrays for every rooted tree with `n` nodes; `fn` sees
// each array once (shapes repeat across arrays; callers dedupe by canon).
void for_each_parent_array(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      fn(parent);
      return;
    }
    for (int p = 0; p < i; ++p) {
      parent[static_cast<std::size_t>(i)] = p;
      rec(i + 1);
    }
  };
  if (n >= 1) rec(1);
}

RootedTree rooted_from_parents(const std::vector<int>& parent) {
  RootedTree rt;
  rt.root = 0;
  rt.children = children_of(parent);
  rt.labels.assign(parent.size(), "");
  return rt;
}

// ---------------------------------------------------------------------------
// Witness-colouring plumbing shared by the filter and agreement checks.

struct WitnessData {
  LaminarTree tree;
  ThinPartition tp;
  IdentifyingColouring col;
  std::vector<int> slots;  // nonempty part indices ascending; colour = pos+1
};

WitnessData witness_data(const SetSystem& sys) {
  WitnessData wd;
  wd.tree = build_laminar_tree(sys);
  wd.tp = thin_partition(wd.tree);
  wd.col = identifying_colouring(wd.tree, wd.tp);
  for (int j = 0; j < 16; ++j) {
    if (!wd.tp.parts[static_cast<std::size_t>(j)].empty()) wd.slots.push_back(j);
  }
  return wd;
}

const ColouringStep& pipeline_colouring(const Pipeline& pl) {
  return std::get<ColouringStep>(pl.steps.front());
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpora.

Corpus enumerate_laminar(int n) {
  if (n < 1 || n > 8) {
    fail(ErrorKind::RangeError,
         "exhaustive enumeration supports 1..8 leaves, got " + std::to_string(n));
  }
  Corpus c;
  c.name = "exhaustive-n" + std::to_string(n);
  c.provenance = "all rooted trees with " + std::to_string(n) +
                 " labelled leaves and at least two children per inner node";
  const std::vector<std::string> universe = element_names(n);
  const Mask full = (n == 32) ? ~Mask(0) : ((Mask(1) << n) - 1);
  for (const auto& tree : trees_on(full)) {
    std::vector<std::vector<std::string>> sets;
    sets.reserve(tree.size());
    for (Mask m : tree) sets.push_back(mask_to_ids(m, universe));
    c.systems.push_back(make_set_system(universe, std::move(sets)));
  }
  return c;
}

std::uint64_t count_laminar(int n) {
  if (n < 1 || n > 16) {
    fail(ErrorKind::RangeError,
         "counting recurrence supports 1..16 leaves, got " + std::to_string(n));
  }
  // t(m): trees on m labelled leaves, every inner node with >= 2 children.
  // w(m): forests of >= 1 such trees on m labelled leaves (w(0) = 1), where a
  // single tree in the forest may also be a bare leaf; h folds the two cases.
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> t(nn + 1, 0), h(nn + 1, 0), w(nn + 1, 0);
  w[0] = 1;
  for (int m = 1; m <= n; ++m) {
    const std::size_t mm = static_cast<std::size_t>(m);
    if (m == 1) {
      t[1] = 1;
    } else {
      std::uint64_t sum = 0;
      for (int j = 1; j <= m - 1; ++j) {
        sum += binomial(m - 1, j - 1) * h[static_cast<std::size_t>(j)] *
               w[static_cast<std::size_t>(m - j)];
      }
      t[mm] = sum;
    }
    h[mm] = (m == 1) ? 1 : t[mm];
    std::uint64_t sum = 0;
    for (int j = 1; j <= m; ++j) {
      sum += binomial(m - 1, j - 1) * h[static_cast<std::size_t>(j)] *
             w[static_cast<std::size_t>(m - j)];
    }
    w[mm] = sum;
  }
  return t[nn];
}

SetSystem gen_laminar(std::uint64_t seed, int n, double arity_bias) {
  if (n < 1) {
    fail(ErrorKind::RangeError, "a random system needs at least one leaf");
  }
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n + 1));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::vector<std::string> universe = element_names(n);
  std::vector<std::vector<std::string>> sets;

  std::function<void(std::vector<int>)> rec = [&](std::vector<int> ids) {
    std::vector<int> sorted_ids = ids;
    std::sort(sorted_ids.begin(), sorted_ids.end());
    std::vector<std::string> set_ids;
    set_ids.reserve(sorted_ids.size());
    for (int i : sorted_ids) set_ids.push_back(universe[static_cast<std::size_t>(i)]);
    sets.push_back(std::move(set_ids));
    const int size = static_cast<int>(ids.size());
    if (size == 1) return;
    int k = 2;
    while (k < size && coin(rng) < arity_bias) ++k;
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<int> gaps(static_cast<std::size_t>(size - 1));
    for (int i = 0; i < size - 1; ++i) gaps[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(gaps.begin(), gaps.end(), rng);
    std::vector<int> cuts(gaps.begin(), gaps.begin() + (k - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(size);
    int start = 0;
    for (int cut : cuts) {
      rec(std::vector<int>(ids.begin() + start, ids.begin() + cut));
      start = cut;
    }
  };

  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  rec(std::move(all));
  return make_set_system(universe, std::move(sets));
}

// ---------------------------------------------------------------------------
// Representative-set oracle.

RepOracle::RepOracle(const LaminarTree& tree, const Bits& colour) : tree_(tree) {
  const int n = tree.leaf_count();
  if (n > 16) {
    fail(ErrorKind::ResourceLimitExceeded,
         "the representative oracle enumerates leaf subsets; " + std::to_string(n) +
             " leaves exceed its 16-leaf bound");
  }
  colour_ = bits_to_mask(colour);
  node_elems_.reserve(tree.nodes.size());
  for (const auto& node : tree.nodes) node_elems_.push_back(bits_to_mask(node.elems));
  const Mask limit = Mask(1) << n;
  any_i_iv_.assign(static_cast<std::size_t>(limit), 0);
  for (Mask b = 0; b < limit; ++b) {
    for (int s = 0; s < tree.size(); ++s) {
      if (conditions_i_iv(b, s)) {
        any_i_iv_[b] = 1;
        break;
      }
    }
  }
}

bool RepOracle::conditions_i_iv(std::uint32_t B, int node) const {
  // (i) inside the colour.
  if ((B & ~colour_) != 0) return false;
  if (B == 0) return false;
  // (ii) `node` is the tip: the parent of the least common ancestor.
  int cur = tree_.leaf_of[static_cast<std::size_t>(std::countr_zero(B))];
  while ((B & ~node_elems_[static_cast<std::size_t>(cur)]) != 0) {
    cur = tree_.nodes[static_cast<std::size_t>(cur)].parent;
  }
  if (cur == tree_.root()) return false;  // tip undefined at the root
  if (tree_.nodes[static_cast<std::size_t>(cur)].parent != node) return false;
  // (iii)/(iv) over the descendants of `node`, node itself included.
  const Mask selems = node_elems_[static_cast<std::size_t>(node)];
  const auto hits = [&](int v) {
    int h = 0;
    for (int c : tree_.nodes[static_cast<std::size_t>(v)].children) {
      if (node_elems_[static_cast<std::size_t>(c)] & B) ++h;
    }
    return h;
  };
  for (int t = 0; t < tree_.size(); ++t) {
    if (!tree_.is_inner(t)) continue;
    const Mask telems = node_elems_[static_cast<std::size_t>(t)];
    if ((telems & ~selems) != 0) continue;  // not a descendant of `node`
    const auto& kids = tree_.nodes[static_cast<std::size_t>(t)].children;
    const int h = hits(t);
    if (h == static_cast<int>(kids.size())) {
      // (iii) fully branched: every inner child must be single-branched
      // (its hit leaf children are exactly the leaves in B).
      for (int c : kids) {
        if (tree_.is_inner(c) && hits(c) != 1) return false;
      }
    } else if (h == 1) {
      // (iv) single-branched: the one hit child is a leaf in B or a fully
      // branched inner node; the rest are untouched by construction of h.
      for (int c : kids) {
        if ((node_elems_[static_cast<std::size_t>(c)] & B) == 0) continue;
        if (tree_.is_inner(c) &&
            hits(c) != static_cast<int>(
                            tree_.nodes[static_cast<std::size_t>(c)].children.size())) {
          return false;
        }
      }
    }
  }
  return true;
}

bool RepOracle::condition_v(std::uint32_t B) const {
  const int n = tree_.leaf_count();
  const Mask full = (Mask(1) << n) - 1;
  const Mask rest = full & ~B;
  for (Mask s = rest; s != 0; s = (s - 1) & rest) {
    if (any_i_iv_[B | s]) return false;
  }
  return true;
}

bool RepOracle::verdict(std::uint32_t B, int node) const {
  return conditions_i_iv(B, node) && condition_v(B);
}

VerificationReport oracle_unique_rep(const LaminarTree& tree, const std::vector<int>& S,
                                     const RepAssignment& rep) {
  const int n = tree.leaf_count();
  Bits colour(static_cast<std::size_t>(n));
  std::map<int, Mask> expected;
  for (const auto& e : rep.entries) {
    for (int i : e.rep_elems.indices()) colour.set(static_cast<std::size_t>(i));
    expected[e.s] = bits_to_mask(e.rep_elems);
  }
  std::set<int> members(S.begin(), S.end());

  CheckResult r;
  r.name = "unique-representative-oracle";
  FailureLog log{&r};
  RepOracle oracle(tree, colour);
  const Mask limit = Mask(1) << n;
  for (Mask b = 0; b < limit; ++b) {
    for (int s = 0; s < tree.size(); ++s) {
      ++r.instances;
      const bool got = oracle.verdict(b, s);
      const auto it = expected.find(s);
      const bool want = members.count(s) != 0 && it != expected.end() && it->second == b;
      if (got == want) {
        ++r.passes;
      } else {
        log("B=" + mask_label(b, tree.universe) + " node=" + std::to_string(s) +
            ": oracle says " + (got ? "representative" : "not representative") +
            ", construction says the opposite");
      }
    }
  }
  if (rep.entries.empty()) {
    r.detail += (r.detail.empty() ? "" : "\n");
    r.detail += "warning: empty colour, so every candidate fails (ii) for every node";
  }
  VerificationReport report;
  report.checks.push_back(std::move(r));
  return report;
}

// ---------------------------------------------------------------------------
// Report rendering.

bool VerificationReport::all_ok() const {
  for (const auto& c : checks) {
    if (!c.ok()) return false;
  }
  return true;
}

std::string VerificationReport::to_json() const {
  OrderedJson doc;
  doc["ok"] = all_ok();
  doc["checks"] = OrderedJson::array();
  for (const auto& c : checks) {
    OrderedJson jc;
    jc["name"] = c.name;
    jc["instances"] = c.instances;
    jc["passes"] = c.passes;
    jc["skipped"] = c.skipped;
    jc["ok"] = c.ok();
    jc["seconds"] = c.seconds;
    jc["detail"] = c.detail;
    doc["checks"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    const char* tag = c.skipped ? "SKIP" : (c.ok() ? "PASS" : "FAIL");
    char secs[32];
    std::snprintf(secs, sizeof(secs), "%.2f", c.seconds);
    out << tag << " " << c.name << ": " << c.passes << "/" << c.instances
        << " (" << secs << "s)\n";
    if (!c.detail.empty()) {
      std::istringstream lines(c.detail);
      std::string line;
      while (std::getline(lines, line)) out << "  " << line << "\n";
    }
  }
  out << (all_ok() ? "OK" : "FAILED") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// The verification suite.

namespace {

struct Corpora {
  const VerifyConfig* cfg = nullptr;
  std::map<int, Corpus> exhaustive_cache;
  bool random_built = false;
  Corpus random_cache;

  const Corpus& exhaustive(int n) {
    auto it = exhaustive_cache.find(n);
    if (it == exhaustive_cache.end()) {
      it = exhaustive_cache.emplace(n, enumerate_laminar(n)).first;
    }
    return it->second;
  }

  const Corpus& random_corpus() {
    if (!random_built) {
      random_cache.name = "random-systems";
      random_cache.provenance =
          "seed=" + std::to_string(cfg->seed) + " count=" + std::to_string(cfg->random_systems) +
          " max_leaves=" + std::to_string(cfg->random_max_leaves);
      std::mt19937_64 rng(cfg->seed * 0x9e3779b97f4a7c15ULL + 1);
      for (int i = 0; i < cfg->random_systems; ++i) {
        const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                       cfg->random_max_leaves));
        random_cache.systems.push_back(gen_laminar(rng(), n));
      }
      random_built = true;
    }
    return random_cache;
  }
};

// Check: the witness pipeline reproduces the natively built laminar tree on
// every exhaustively enumerated system, and the corpus sizes match the
// independent counting recurrence.
void check_end_to_end(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  LaminarToTreeOptions opt;
  opt.policy = ColouringPolicy::Witness;
  opt.part_count = cfg.part_count;
  opt.eval = cfg.eval;
  for (int n = 1; n <= cfg.e2e_max_leaves; ++n) {
    const Corpus& corpus = corp.exhaustive(n);
    ++r.instances;
    if (count_laminar(n) == corpus.systems.size()) {
      ++r.passes;
    } else {
      log("enumeration for " + std::to_string(n) +
          " leaves disagrees with the counting recurrence");
    }
    for (const SetSystem& sys : corpus.systems) {
      ++r.instances;
      try {
        const Structure out = laminar_to_tree(system_to_structure(sys), opt);
        if (rooted_tree_iso(build_laminar_tree(sys), out)) {
          ++r.passes;
        } else {
          log("transduced tree not isomorphic to the native tree: " + system_label(sys));
        }
      } catch (const Error& e) {
        if (e.kind == ErrorKind::ResourceLimitExceeded) throw;
        log(std::string("pipeline error on ") + system_label(sys) + ": " + e.what());
      }
    }
  }
}

// Check: over every small system and every nonempty thin part, a leaf set B
// and node s pass the oracle conditions exactly when s is a part member and
// B is its constructed representative set.
void check_unique_rep(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  for (int n = 1; n <= cfg.lemma_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) {
      const WitnessData wd = witness_data(sys);
      for (int j : wd.slots) {
        const VerificationReport sub = oracle_unique_rep(
            wd.tree, wd.tp.parts[static_cast<std::size_t>(j)],
            wd.col.reps[static_cast<std::size_t>(j)]);
        const CheckResult& c = sub.checks.front();
        r.instances += c.instances;
        r.passes += c.passes;
        if (!c.ok()) {
          log(system_label(sys) + " part " + std::to_string(j) + ": " +
              c.detail.substr(0, c.detail.find('\n')));
        }
      }
    }
  }
}

// Check: the thin partition covers the inner nodes exactly, with disjoint
// parts whose nonempty members pass the native thin-set test and sit in the
// right depth class.
void check_thin_partition(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  const auto run_system = [&](const SetSystem& sys) {
    ++r.instances;
    const LaminarTree tree = build_laminar_tree(sys);
    const ThinPartition tp = thin_partition(tree);
    std::vector<int> all;
    for (int j = 0; j < 16; ++j) {
      const auto& part = tp.parts[static_cast<std::size_t>(j)];
      for (int v : part) {
        if (!tree.is_inner(v)) {
          log(system_label(sys) + ": part " + std::to_string(j) + " holds leaf node " +
              std::to_string(v));
          return;
        }
        if (tree.depth_label(v) != ThinPartition::part_label(j)) {
          log(system_label(sys) + ": node " + std::to_string(v) +
              " sits in a part of the wrong depth class");
          return;
        }
        all.push_back(v);
      }
      if (!part.empty() && !is_thin(tree, part)) {
        log(system_label(sys) + ": part " + std::to_string(j) + " is not thin");
        return;
      }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      log(system_label(sys) + ": parts overlap");
      return;
    }
    if (all != tree.inner_nodes()) {
      log(system_label(sys) + ": parts do not cover the inner nodes exactly");
      return;
    }
    ++r.passes;
  };
  for (int n = 1; n <= cfg.e2e_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) run_system(sys);
  }
  for (const SetSystem& sys : corp.random_corpus().systems) run_system(sys);
}

// Check: each representative set has the right shape (rooted connected
// subtree, alternating one-child/all-children levels, tree leaves at the
// bottom), its leaf set tips at its node with the same up-tree, trees within
// a part are pairwise disjoint, and none touches a parent of a part member.
void check_rep_trees(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  const auto run_system = [&](const SetSystem& sys) {
    const LaminarTree tree = build_laminar_tree(sys);
    const ThinPartition tp = thin_partition(tree);
    for (int j = 0; j < 16; ++j) {
      const auto& part = tp.parts[static_cast<std::size_t>(j)];
      if (part.empty()) continue;
      const RepAssignment rep = build_representative_sets(tree, part);
      const std::string where = system_label(sys) + " part " + std::to_string(j);

      ++r.instances;
      std::vector<int> ss;
      for (const auto& e : rep.entries) ss.push_back(e.s);
      std::vector<int> part_sorted = part;
      std::sort(part_sorted.begin(), part_sorted.end());
      if (ss == part_sorted) {
        ++r.passes;
      } else {
        log(where + ": entries do not match the part members");
      }

      std::set<int> parents;
      for (int s : part) {
        const int p = tree.nodes[static_cast<std::size_t>(s)].parent;
        if (p >= 0) parents.insert(p);
      }

      std::set<int> seen;
      bool disjoint = true;
      for (const auto& e : rep.entries) {
        ++r.instances;
        std::string why;
        const std::set<int> h(e.tree_nodes.begin(), e.tree_nodes.end());
        const int sdepth = tree.nodes[static_cast<std::size_t>(e.s)].depth;
        Bits leaves(static_cast<std::size_t>(tree.leaf_count()));
        if (h.count(e.s) == 0) why = "its node is missing from its tree";
        for (int v : e.tree_nodes) {
          if (!why.empty()) break;
          const auto& node = tree.nodes[static_cast<std::size_t>(v)];
          if (node.depth < sdepth) {
            why = "a tree node sits above the root node";
            break;
          }
          if (v != e.s && h.count(node.parent) == 0) {
            why = "the tree is not connected to its root node";
            break;
          }
          if (tree.is_leaf(v)) {
            leaves.set(static_cast<std::size_t>(node.elems.lowest()));
            continue;
          }
          int kept = 0;
          for (int c : node.children) kept += h.count(c) ? 1 : 0;
          const int rel = (node.depth - sdepth) % 2;
          if (kept == 0) {
            why = "an inner tree node keeps no child";
          } else if (rel == 0 && kept != 1) {
            why = "an even level keeps more than one child";
          } else if (rel == 1 && kept != static_cast<int>(node.children.size())) {
            why = "an odd level drops a child";
          }
        }
        if (why.empty() && !(leaves == e.rep_elems)) {
          why = "the recorded leaf set differs from the tree's leaves";
        }
        if (why.empty()) {
          try {
            TipResult tr = tip_and_uptree(tree, e.rep_elems);
            std::sort(tr.uptree.begin(), tr.uptree.end());
            std::vector<int> hs(h.begin(), h.end());
            if (tr.tip != e.s) {
              why = "the leaf set tips at a different node";
            } else if (tr.uptree != hs) {
              why = "the up-tree of the leaf set differs from the stored tree";
            }
          } catch (const Error& e2) {
            why = std::string("tip computation failed: ") + e2.what();
          }
        }
        if (why.empty()) {
          for (int v : e.tree_nodes) {
            if (parents.count(v)) {
              why = "the tree touches a parent of a part member";
              break;
            }
          }
        }
        if (why.empty()) {
          ++r.passes;
        } else {
          log(where + " node " + std::to_string(e.s) + ": " + why);
        }
        for (int v : e.tree_nodes) {
          if (!seen.insert(v).second) disjoint = false;
        }
      }
      ++r.instances;
      if (disjoint) {
        ++r.passes;
      } else {
        log(where + ": representative trees overlap");
      }
    }
  };
  for (int n = 1; n <= cfg.e2e_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) run_system(sys);
  }
  for (const SetSystem& sys : corp.random_corpus().systems) run_system(sys);
}

// Mutations of a witness colouring that each provably break the filter
// sentence: removing or relocating a leader, clearing a colour, adding a
// second leader inside one representative set, or injecting a foreign leaf
// that spawns a competing leader (in a used or an unused colour index).
std::vector<std::map<std::string, std::vector<std::string>>> build_mutants(
    const WitnessData& wd, const std::map<std::string, std::vector<std::string>>& base,
    const FormulaLibrary& lib, int part_count, std::size_t cap) {
  std::vector<std::map<std::string, std::vector<std::string>>> out;
  std::set<std::string> seen;
  const auto add = [&](std::map<std::string, std::vector<std::string>> m) {
    if (out.size() >= cap) return;
    std::string key;
    for (const auto& [k, v] : m) {
      key += k + "=";
      for (const auto& id : v) key += id + ",";
      key += ";";
    }
    if (seen.insert(std::move(key)).second) out.push_back(std::move(m));
  };
  const auto minus = [](std::vector<std::string> v, const std::string& id) {
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
    return v;
  };
  const auto plus = [](std::vector<std::string> v, const std::string& id) {
    v.push_back(id);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const std::vector<std::string>& universe = wd.tree.universe;

  for (std::size_t pos = 0; pos < wd.slots.size(); ++pos) {
    const int j = wd.slots[pos];
    const int t = static_cast<int>(pos) + 1;
    const std::string an = lib.colour_a(t);
    const std::string bn = lib.colour_b(t);
    const std::vector<std::string>& a_ids = base.at(an);
    const std::vector<std::string>& b_ids = base.at(bn);
    const RepAssignment& rep = wd.col.reps[static_cast<std::size_t>(j)];
    const RepEntry& first = rep.entries.front();
    const std::string leader = universe[static_cast<std::size_t>(first.rep_elems.lowest())];

    // Drop one leader: its set keeps no leader in any colour.
    auto m1 = base;
    m1[bn] = minus(b_ids, leader);
    add(std::move(m1));

    // Promote a second member of some representative set to leader: its set
    // gains two leaders in the same colour.
    for (const auto& e : rep.entries) {
      const auto idxs = e.rep_elems.indices();
      if (idxs.size() >= 2) {
        auto m2 = base;
        m2[bn] = plus(b_ids, universe[static_cast<std::size_t>(idxs[1])]);
        add(std::move(m2));
        break;
      }
    }

    // Clear the whole colour / only its sets / only its leaders: the sets
    // represented in this colour lose their only leaders.
    auto m3 = base;
    m3[an] = {};
    m3[bn] = {};
    add(std::move(m3));
    auto m11 = base;
    m11[an] = {};
    add(std::move(m11));
    auto m12 = base;
    m12[bn] = {};
    add(std::move(m12));

    // A leaf outside the colour: moving a leader onto it orphans the leader's
    // set; adding it to both colour halves spawns a competing leader for a
    // set that already has one.
    std::string foreign;
    std::set<std::string> a_set(a_ids.begin(), a_ids.end());
    for (const auto& id : universe) {
      if (!a_set.count(id)) {
        foreign = id;
        break;
      }
    }
    if (!foreign.empty()) {
      auto m4 = base;
      m4[bn] = plus(minus(b_ids, leader), foreign);
      add(std::move(m4));
      auto m7 = base;
      m7[an] = plus(a_ids, foreign);
      m7[bn] = plus(b_ids, foreign);
      add(std::move(m7));
    }
  }

  // Unused colour indices: colouring a single leaf there always creates a
  // second leader for the set just above that leaf.
  for (int t = static_cast<int>(wd.slots.size()) + 1; t <= part_count; ++t) {
    for (const auto& id : universe) {
      auto m = base;
      m[lib.colour_a(t)] = {id};
      m[lib.colour_b(t)] = {id};
      add(std::move(m));
      if (out.size() >= cap) return out;
    }
  }
  return out;
}

// Check: the filter sentence accepts the witness colouring of every small
// system and rejects a catalogue of mutated colourings.
void check_filter_mutants(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  const FormulaLibrary lib({cfg.part_count});
  const FormulaPtr chi = lib.chi_sentence();
  LaminarToTreeOptions opt;
  opt.policy = ColouringPolicy::Witness;
  opt.part_count = cfg.part_count;
  opt.eval = cfg.eval;
  bool trivial_noted = false;

  for (int n = 1; n <= cfg.lemma_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) {
      const Structure st = system_to_structure(sys);
      const Pipeline pl = main_pipeline(st, opt);
      const ColouringStep& cstep = pipeline_colouring(pl);

      ++r.instances;
      const Structure coloured = apply_step(st, cstep, cfg.eval).front();
      if (eval_closed(coloured, chi, cfg.eval)) {
        ++r.passes;
      } else {
        log("witness colouring rejected: " + system_label(sys));
        continue;
      }

      const WitnessData wd = witness_data(sys);
      if (wd.slots.empty()) {
        // A one-leaf system has no inner node: every colouring satisfies the
        // filter, so no rejecting mutant exists.
        if (!trivial_noted) {
          r.detail += (r.detail.empty() ? "" : "\n");
          r.detail += "note: one-leaf systems admit no rejecting mutant; mutants skipped there";
          trivial_noted = true;
        }
        continue;
      }

      const auto mutants = build_mutants(wd, cstep.provided, lib, cfg.part_count, 40);
      const std::size_t required = cfg.part_count >= 16 ? 20 : 1;
      ++r.instances;
      if (mutants.size() >= required) {
        ++r.passes;
      } else {
        log(system_label(sys) + ": only " + std::to_string(mutants.size()) +
            " mutants generated");
      }
      for (const auto& provided : mutants) {
        ++r.instances;
        ColouringStep mstep = cstep;
        mstep.provided = provided;
        const Structure mutated = apply_step(st, mstep, cfg.eval).front();
        if (!eval_closed(mutated, chi, cfg.eval)) {
          ++r.passes;
        } else {
          log(system_label(sys) + ": a mutated colouring slipped through the filter");
        }
      }
    }
  }
}

// Check: interpreting a native laminar tree back into a set system recovers
// the original system and an isomorphic tree.
void check_tree_roundtrip(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  const auto run_system = [&](const SetSystem& sys) {
    ++r.instances;
    const LaminarTree tree = build_laminar_tree(sys);
    std::vector<std::string> names;
    std::vector<int> parent;
    names.reserve(tree.nodes.size());
    parent.reserve(tree.nodes.size());
    for (const auto& node : tree.nodes) {
      names.push_back(tree.is_leaf(node.id) ? tree.universe[static_cast<std::size_t>(
                                                  node.elems.lowest())]
                                            : "n#" + std::to_string(node.id));
      parent.push_back(node.parent);
    }
    const Structure ds = desc_structure_from_parents(parent, names);
    try {
      const Structure back = tree_to_setsystem(ds, cfg.eval);
      const SetSystem sys2 = structure_to_setsystem(back);
      if (!(sys2 == sys)) {
        log(system_label(sys) + ": recovered system differs");
      } else if (!rooted_tree_iso(build_laminar_tree(sys2), ds)) {
        log(system_label(sys) + ": recovered tree not isomorphic");
      } else {
        ++r.passes;
      }
    } catch (const Error& e) {
      if (e.kind == ErrorKind::ResourceLimitExceeded) throw;
      log(std::string("roundtrip error on ") + system_label(sys) + ": " + e.what());
    }
  };
  for (int n = 1; n <= cfg.e2e_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) run_system(sys);
  }
  for (const SetSystem& sys : corp.random_corpus().systems) run_system(sys);
}

// Check: formulas evaluated over witness-coloured structures agree with the
// native graph computations they are meant to define.
void check_formula_native(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  const FormulaLibrary lib({cfg.part_count});
  LaminarToTreeOptions opt;
  opt.policy = ColouringPolicy::Witness;
  opt.part_count = cfg.part_count;
  opt.eval = cfg.eval;

  for (int n = 1; n <= cfg.lemma_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) {
      const WitnessData wd = witness_data(sys);
      const LaminarTree& tree = wd.tree;
      const Structure st = system_to_structure(sys);
      const Pipeline pl = main_pipeline(st, opt);
      const Structure coloured = apply_step(st, pipeline_colouring(pl), cfg.eval).front();
      IndexedStructure idx(coloured);
      Evaluator ev(idx, cfg.eval);

      // Element index i of the tree universe inside the coloured structure.
      std::vector<int> pos;
      pos.reserve(tree.universe.size());
      for (const auto& id : tree.universe) pos.push_back(idx.index_of(id));
      const auto set_bits = [&](Mask m) {
        Bits b(static_cast<std::size_t>(coloured.universe.size()));
        for (int i = 0; i < n; ++i) {
          if (m & (Mask(1) << i)) b.set(static_cast<std::size_t>(pos[static_cast<std::size_t>(i)]));
        }
        return b;
      };
      const auto eval1 = [&](const FormulaPtr& f, const std::string& var, Mask x) {
        Evaluator::Binding b;
        b.sets = {{var, set_bits(x)}};
        return ev.eval_indexed(f, b);
      };
      const auto eval2 = [&](const FormulaPtr& f, const std::string& v1, Mask x1,
                             const std::string& v2, Mask x2) {
        Evaluator::Binding b;
        b.sets = {{v1, set_bits(x1)}, {v2, set_bits(x2)}};
        return ev.eval_indexed(f, b);
      };
      const auto check = [&](bool native, bool formula, const std::string& what) {
        ++r.instances;
        if (native == formula) {
          ++r.passes;
        } else {
          log(system_label(sys) + " " + what + ": formula " +
              (formula ? "true" : "false") + ", native " + (native ? "true" : "false"));
        }
      };

      const Mask limit = Mask(1) << n;
      std::vector<Mask> family;
      for (const auto& node : tree.nodes) family.push_back(bits_to_mask(node.elems));
      std::vector<Mask> samples = family;
      samples.push_back(0);
      for (Mask m = 1; m < limit && samples.size() < family.size() + 4; ++m) {
        if (tree.node_with_elems(mask_to_bits(m, n)) < 0) samples.push_back(m);
      }

      const auto node_of = [&](Mask m) { return tree.node_with_elems(mask_to_bits(m, n)); };

      // Unary structural predicates.
      const FormulaPtr f_root = lib.derived_predicate("ROOT");
      const FormulaPtr f_leaf = lib.derived_predicate("LEAF");
      for (Mask x = 0; x < limit; ++x) {
        const int nx = node_of(x);
        check(nx == tree.root(), eval1(f_root, "X", x), "ROOT " + mask_label(x, tree.universe));
        check(nx >= 0 && tree.is_leaf(nx), eval1(f_leaf, "X", x),
              "LEAF " + mask_label(x, tree.universe));
      }

      // Binary structural predicates.
      const FormulaPtr f_desc = lib.derived_predicate("DESC");
      const FormulaPtr f_anc = lib.derived_predicate("ANC");
      const FormulaPtr f_child = lib.derived_predicate("CHILD");
      const FormulaPtr f_parent = lib.derived_predicate("PARENT");
      for (Mask x = 0; x < limit; ++x) {
        const int nx = node_of(x);
        for (Mask y = 0; y < limit; ++y) {
          const int ny = node_of(y);
          const bool both = nx >= 0 && ny >= 0;
          const std::string at =
              mask_label(x, tree.universe) + "," + mask_label(y, tree.universe);
          check(both && (x & ~y) == 0, eval2(f_desc, "X", x, "Y", y), "DESC " + at);
          check(both && (y & ~x) == 0, eval2(f_anc, "X", x, "Y", y), "ANC " + at);
          check(both && tree.nodes[static_cast<std::size_t>(nx)].parent == ny,
                eval2(f_child, "X", x, "Y", y), "CHILD " + at);
          check(both && tree.nodes[static_cast<std::size_t>(ny)].parent == nx,
                eval2(f_parent, "X", x, "Y", y), "PARENT " + at);
        }
      }

      // Per-colour predicates against the witness colouring.
      for (std::size_t posn = 0; posn < wd.slots.size(); ++posn) {
        const int j = wd.slots[posn];
        const int t = static_cast<int>(posn) + 1;
        const std::string an = lib.colour_a(t);
        const Bits& abits = wd.col.A[static_cast<std::size_t>(j)];
        const Mask amask = bits_to_mask(abits);
        const RepOracle oracle(tree, abits);

        const FormulaPtr f_leaf_a = lib.derived_predicate("LEAF_A", an);
        for (Mask x = 0; x < limit; ++x) {
          const int nx = node_of(x);
          check(nx >= 0 && tree.is_leaf(nx) && (x & amask) != 0, eval1(f_leaf_a, "X", x),
                an + " LEAF_A " + mask_label(x, tree.universe));
        }

        const std::pair<BranchKind, const char*> kinds[] = {
            {BranchKind::Fully, "fully"},
            {BranchKind::Single, "single"},
            {BranchKind::Missed, "missed"}};
        for (const auto& [kind, kname] : kinds) {
          const FormulaPtr f_branch = lib.branch_formula(kind, an);
          for (Mask x = 0; x < limit; ++x) {
            const int nx = node_of(x);
            const bool native =
                nx >= 0 && tree.is_inner(nx) && classify_branch(tree, abits, nx).kind == kind;
            check(native, eval1(f_branch, "X", x),
                  an + " " + kname + " " + mask_label(x, tree.universe));
          }
        }

        const FormulaPtr f_rep = lib.rep_formula(an, false);
        const FormulaPtr f_rep_star = lib.rep_formula(an, true);
        for (Mask b = 0; b < limit; ++b) {
          for (Mask x : samples) {
            const int nx = node_of(x);
            const std::string at = an + " R=" + mask_label(b, tree.universe) + " X=" +
                                   mask_label(x, tree.universe);
            check(nx >= 0 && oracle.conditions_i_iv(b, nx), eval2(f_rep, "R", b, "X", x),
                  "REP " + at);
            check(nx >= 0 && oracle.verdict(b, nx), eval2(f_rep_star, "R", b, "X", x),
                  "REP* " + at);
          }
        }
      }

      // Leader formulas, colour 0 (leaf sets) and each used colour.
      for (int i = 0; i <= static_cast<int>(wd.slots.size()); ++i) {
        const FormulaPtr f_lead = lib.leader_formula(i);
        for (int e = 0; e < n; ++e) {
          for (Mask x : samples) {
            const int nx = node_of(x);
            bool native = false;
            if (i == 0) {
              native = nx >= 0 && tree.is_leaf(nx) && ((x >> e) & 1) != 0;
            } else {
              const int j = wd.slots[static_cast<std::size_t>(i - 1)];
              const Bits& bbits = wd.col.B[static_cast<std::size_t>(j)];
              if (nx >= 0 && bbits.test(static_cast<std::size_t>(e))) {
                const RepOracle oracle(tree, wd.col.A[static_cast<std::size_t>(j)]);
                for (Mask b = 0; b < limit && !native; ++b) {
                  if (((b >> e) & 1) != 0 && oracle.verdict(b, nx)) native = true;
                }
              }
            }
            Evaluator::Binding bind;
            bind.elems = {{"r", pos[static_cast<std::size_t>(e)]}};
            bind.sets = {{"X", set_bits(x)}};
            check(native, ev.eval_indexed(f_lead, bind),
                  "leader" + std::to_string(i) + " r=" + tree.universe[static_cast<std::size_t>(e)] +
                      " X=" + mask_label(x, tree.universe));
          }
        }
      }

      // Lowercase predicates over the tree's own descendant structure.
      std::vector<std::string> names;
      std::vector<int> parent;
      for (const auto& node : tree.nodes) {
        names.push_back(tree.is_leaf(node.id)
                            ? tree.universe[static_cast<std::size_t>(node.elems.lowest())]
                            : "n#" + std::to_string(node.id));
        parent.push_back(node.parent);
      }
      const Structure ds = desc_structure_from_parents(parent, names);
      IndexedStructure dsx(ds);
      Evaluator dev(dsx, cfg.eval);
      const FormulaPtr g_root = lib.derived_predicate("root");
      const FormulaPtr g_leaf = lib.derived_predicate("leaf");
      const FormulaPtr g_child = lib.derived_predicate("child");
      for (int v = 0; v < tree.size(); ++v) {
        Evaluator::Binding b1;
        b1.elems = {{"x", dsx.index_of(names[static_cast<std::size_t>(v)])}};
        check(v == tree.root(), dev.eval_indexed(g_root, b1),
              "root node " + std::to_string(v));
        check(tree.is_leaf(v), dev.eval_indexed(g_leaf, b1),
              "leaf node " + std::to_string(v));
        for (int u = 0; u < tree.size(); ++u) {
          Evaluator::Binding b2;
          b2.elems = {{"x", dsx.index_of(names[static_cast<std::size_t>(v)])},
                      {"y", dsx.index_of(names[static_cast<std::size_t>(u)])}};
          check(tree.nodes[static_cast<std::size_t>(v)].parent == u,
                dev.eval_indexed(g_child, b2),
                "child nodes " + std::to_string(v) + "," + std::to_string(u));
        }
      }
    }
  }
}

// Check: the even-leaf counting formula matches leaf-set parity on every
// rooted tree shape within the degree bound, and its degree bound is sharp.
void check_even_leaf(const VerifyConfig& cfg, Corpora&, CheckResult& r) {
  FailureLog log{&r};
  const FormulaLibrary lib({1});
  std::set<std::string> seen;

  for (int n = 1; n <= cfg.tree_max_nodes; ++n) {
    for_each_parent_array(n, [&](const std::vector<int>& parent) {
      const RootedTree rt = rooted_from_parents(parent);
      if (!seen.insert(rooted_tree_canon(rt)).second) return;
      int maxdeg = 0;
      for (const auto& ch : rt.children) maxdeg = std::max(maxdeg, static_cast<int>(ch.size()));
      std::vector<int> leaves;
      for (int v = 0; v < n; ++v) {
        if (rt.children[static_cast<std::size_t>(v)].empty()) leaves.push_back(v);
      }
      std::vector<std::string> names;
      for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
      const Structure ds = desc_structure_from_parents(parent, names);
      IndexedStructure idx(ds);
      for (int k = std::max(1, maxdeg); k <= 3; ++k) {
        Evaluator ev(idx, cfg.eval);
        const FormulaPtr f = lib.counting_formula(CountingKind::Evenleaf, k);
        const std::size_t subsets = std::size_t(1) << leaves.size();
        for (std::size_t m = 0; m < subsets; ++m) {
          Bits x(static_cast<std::size_t>(n));
          int count = 0;
          for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (m & (std::size_t(1) << i)) {
              x.set(static_cast<std::size_t>(
                  idx.index_of(names[static_cast<std::size_t>(leaves[i])])));
              ++count;
            }
          }
          Evaluator::Binding b;
          b.sets = {{"X", x}};
          ++r.instances;
          if (ev.eval_indexed(f, b) == (count % 2 == 0)) {
            ++r.passes;
          } else {
            log("evenleaf_" + std::to_string(k) + " wrong on a " + std::to_string(n) +
                "-node tree with |X|=" + std::to_string(count));
          }
        }
      }
    });
  }

  // Sharpness: past the degree bound the formula miscounts.  On a three-leaf
  // star, the bound-1 formula calls the full odd leaf set even.
  const std::vector<int> star{-1, 0, 0, 0};
  const std::vector<std::string> names{"v0", "v1", "v2", "v3"};
  const Structure ds = desc_structure_from_parents(star, names);
  IndexedStructure idx(ds);
  Evaluator ev(idx, cfg.eval);
  Bits x(4);
  for (int v = 1; v <= 3; ++v) {
    x.set(static_cast<std::size_t>(idx.index_of(names[static_cast<std::size_t>(v)])));
  }
  Evaluator::Binding b;
  b.sets = {{"X", x}};
  ++r.instances;
  if (ev.eval_indexed(lib.counting_formula(CountingKind::Evenleaf, 1), b)) {
    ++r.passes;
  } else {
    log("degree-1 formula unexpectedly exact on the three-leaf star");
  }
}

// One formula plus the names of its free variables, for pairing guarded and
// unguarded evaluation over the same assignments.
struct BatteryFormula {
  FormulaPtr f;
  std::vector<std::string> set_vars;
  std::vector<std::string> elem_vars;
  std::string label;
};

std::vector<BatteryFormula> full_battery(const FormulaLibrary& lib) {
  const std::string a1 = lib.colour_a(1);
  std::vector<BatteryFormula> fs;
  fs.push_back({lib.laminarity_sentence(true), {}, {}, "laminarity"});
  fs.push_back({lib.laminarity_sentence(false), {}, {}, "laminarity-verbatim"});
  fs.push_back({lib.chi_sentence(), {}, {}, "chi"});
  fs.push_back({lib.derived_predicate("ROOT"), {"X"}, {}, "ROOT"});
  fs.push_back({lib.derived_predicate("LEAF"), {"X"}, {}, "LEAF"});
  fs.push_back({lib.derived_predicate("LEAF_A", a1), {"X"}, {}, "LEAF_A"});
  fs.push_back({lib.branch_formula(BranchKind::Fully, a1), {"X"}, {}, "fully"});
  fs.push_back({lib.branch_formula(BranchKind::Single, a1), {"X"}, {}, "single"});
  fs.push_back({lib.branch_formula(BranchKind::Missed, a1), {"X"}, {}, "missed"});
  fs.push_back({lib.derived_predicate("DESC"), {"X", "Y"}, {}, "DESC"});
  fs.push_back({lib.derived_predicate("ANC"), {"X", "Y"}, {}, "ANC"});
  fs.push_back({lib.derived_predicate("CHILD"), {"X", "Y"}, {}, "CHILD"});
  fs.push_back({lib.derived_predicate("PARENT"), {"X", "Y"}, {}, "PARENT"});
  fs.push_back({lib.rep_formula(a1, false), {"R", "X"}, {}, "REP"});
  fs.push_back({lib.rep_formula(a1, true), {"R", "X"}, {}, "REP*"});
  fs.push_back({lib.leader_formula(0), {"X"}, {"r"}, "leader0"});
  fs.push_back({lib.leader_formula(1), {"X"}, {"r"}, "leader1"});
  return fs;
}

// Quantifier-heavy formulas get expensive without guards on larger
// universes; they are compared only while the subset space stays small.
bool battery_formula_cheap(const BatteryFormula& bf) {
  return bf.label != "chi" && bf.label != "REP" && bf.label != "REP*" &&
         bf.label != "leader1";
}

void compare_guarded_unguarded(const Structure& st, const std::vector<BatteryFormula>& fs,
                               int sampled_pairs, std::mt19937_64* rng,
                               const VerifyConfig& cfg, CheckResult& r, FailureLog& log,
                               const std::string& where) {
  EvalOptions unguarded = cfg.eval;
  unguarded.guarded = false;
  EvalOptions guarded = cfg.eval;
  guarded.guarded = true;
  IndexedStructure idx(st);
  Evaluator evg(idx, guarded);
  Evaluator evu(idx, unguarded);
  const int n = static_cast<int>(st.universe.size());
  const Mask limit = Mask(1) << n;

  const auto compare = [&](const BatteryFormula& bf, const Evaluator::Binding& b) {
    ++r.instances;
    const bool g = evg.eval_indexed(bf.f, b);
    const bool u = evu.eval_indexed(bf.f, b);
    if (g == u) {
      ++r.passes;
    } else {
      log(where + " " + bf.label + ": guarded " + (g ? "true" : "false") +
          ", unguarded " + (u ? "true" : "false"));
    }
  };

  for (const auto& bf : fs) {
    if (n > 5 && !battery_formula_cheap(bf)) continue;
    if (bf.set_vars.empty() && bf.elem_vars.empty()) {
      compare(bf, Evaluator::Binding{});
    } else if (bf.set_vars.size() == 1 && bf.elem_vars.empty()) {
      for (Mask x = 0; x < limit; ++x) {
        Evaluator::Binding b;
        b.sets = {{bf.set_vars[0], mask_to_bits(x, n)}};
        compare(bf, b);
      }
    } else if (bf.set_vars.size() == 2) {
      const auto run_pair = [&](Mask x1, Mask x2) {
        Evaluator::Binding b;
        b.sets = {{bf.set_vars[0], mask_to_bits(x1, n)},
                  {bf.set_vars[1], mask_to_bits(x2, n)}};
        compare(bf, b);
      };
      if (rng == nullptr) {
        for (Mask x1 = 0; x1 < limit; ++x1) {
          for (Mask x2 = 0; x2 < limit; ++x2) run_pair(x1, x2);
        }
      } else {
        for (int i = 0; i < sampled_pairs; ++i) {
          run_pair(static_cast<Mask>((*rng)() % limit), static_cast<Mask>((*rng)() % limit));
        }
      }
    } else {
      const auto run_pair = [&](int e, Mask x) {
        Evaluator::Binding b;
        b.elems = {{bf.elem_vars[0], e}};
        b.sets = {{bf.set_vars[0], mask_to_bits(x, n)}};
        compare(bf, b);
      };
      if (rng == nullptr) {
        for (int e = 0; e < n; ++e) {
          for (Mask x = 0; x < limit; ++x) run_pair(e, x);
        }
      } else {
        for (int i = 0; i < sampled_pairs; ++i) {
          run_pair(static_cast<int>((*rng)() % static_cast<std::uint64_t>(n)),
                   static_cast<Mask>((*rng)() % limit));
        }
      }
    }
  }
}

Structure coloured_family_structure(const Vocabulary& voc,
                                    const std::vector<std::string>& universe, Mask fam_bits,
                                    Mask a1, Mask b1, const FormulaLibrary& lib) {
  std::vector<ElementSet> sets;
  const Mask masks = Mask(1) << universe.size();
  for (Mask m = 0; m < masks; ++m) {
    if (fam_bits & (Mask(1) << m)) sets.push_back(mask_to_ids(m, universe));
  }
  std::vector<Tuple> at, bt;
  for (const auto& id : mask_to_ids(a1, universe)) at.push_back({id});
  for (const auto& id : mask_to_ids(b1, universe)) bt.push_back({id});
  return make_structure(voc, universe,
                        {{lib.colour_a(1), std::move(at)}, {lib.colour_b(1), std::move(bt)}},
                        {{"SET", std::move(sets)}});
}

// Check: guarded and unguarded evaluation agree, exhaustively on small
// universes and on random structures and trees beyond that.
void check_guarded_unguarded(const VerifyConfig& cfg, Corpora&, CheckResult& r) {
  FailureLog log{&r};
  const FormulaLibrary lib({1});
  const Vocabulary voc = lib.coloured_vocabulary();
  const std::vector<BatteryFormula> battery = full_battery(lib);

  // Every family and every one-colour pair on one and two elements.
  for (int n = 1; n <= 2; ++n) {
    const auto universe = element_names(n);
    const Mask masks = Mask(1) << n;
    const Mask fams = Mask(1) << masks;
    for (Mask fam = 0; fam < fams; ++fam) {
      for (Mask a1 = 0; a1 < masks; ++a1) {
        for (Mask b1 = 0; b1 < masks; ++b1) {
          const Structure st = coloured_family_structure(voc, universe, fam, a1, b1, lib);
          compare_guarded_unguarded(st, battery, 0, nullptr, cfg, r, log,
                                    "n=" + std::to_string(n));
        }
      }
    }
  }

  // Every family on three elements with two fixed colourings.
  {
    const auto universe = element_names(3);
    const std::pair<Mask, Mask> colourings[] = {{0b101, 0b001}, {0b111, 0b010}};
    for (Mask fam = 0; fam < (Mask(1) << 8); ++fam) {
      for (const auto& [a1, b1] : colourings) {
        const Structure st = coloured_family_structure(voc, universe, fam, a1, b1, lib);
        compare_guarded_unguarded(st, battery, 0, nullptr, cfg, r, log, "n=3");
      }
    }
  }

  // Every family on four elements with the cheap formulas.
  {
    const auto universe = element_names(4);
    std::vector<BatteryFormula> light;
    light.push_back({lib.laminarity_sentence(true), {}, {}, "laminarity"});
    light.push_back({lib.laminarity_sentence(false), {}, {}, "laminarity-verbatim"});
    light.push_back({lib.derived_predicate("ROOT"), {"X"}, {}, "ROOT"});
    light.push_back({lib.derived_predicate("LEAF"), {"X"}, {}, "LEAF"});
    for (std::uint64_t fam = 0; fam < (std::uint64_t(1) << 16); ++fam) {
      const Structure st =
          coloured_family_structure(voc, universe, static_cast<Mask>(fam), 0, 0, lib);
      compare_guarded_unguarded(st, light, 0, nullptr, cfg, r, log, "n=4");
    }
  }

  // Random structures on up to six elements, full battery with sampled
  // assignments for the binary formulas.
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 2);
  for (int i = 0; i < cfg.random_structures; ++i) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto universe = element_names(n);
    const Mask masks = Mask(1) << n;
    Mask fam = 0;
    for (Mask m = 0; m < masks; ++m) {
      if (rng() & 1) fam |= Mask(1) << m;
    }
    const Mask a1 = static_cast<Mask>(rng() % masks);
    const Mask b1 = static_cast<Mask>(rng() % masks);
    const Structure st = coloured_family_structure(voc, universe, fam, a1, b1, lib);
    compare_guarded_unguarded(st, battery, 16, &rng, cfg, r, log,
                              "random#" + std::to_string(i));
  }

  // Counting formulas over random rooted trees.
  std::vector<BatteryFormula> counting;
  for (int l = 0; l <= 3; ++l) {
    counting.push_back({lib.counting_formula(CountingKind::Countkids, l),
                        {"S"},
                        {"v"},
                        "countkids" + std::to_string(l)});
  }
  for (int k = 1; k <= 3; ++k) {
    counting.push_back({lib.counting_formula(CountingKind::Oddkids, k),
                        {"S"},
                        {"v"},
                        "oddkids" + std::to_string(k)});
    counting.push_back({lib.counting_formula(CountingKind::Evenleaf, k),
                        {"X"},
                        {},
                        "evenleaf" + std::to_string(k)});
  }
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int v = 1; v < n; ++v) {
      parent[static_cast<std::size_t>(v)] =
          static_cast<int>(rng() % static_cast<std::uint64_t>(v));
    }
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    const Structure ds = desc_structure_from_parents(parent, names);
    compare_guarded_unguarded(ds, counting, 10, &rng, cfg, r, log,
                              "tree#" + std::to_string(i));
  }
}

// Check: JSON serialization of systems and structures round-trips and stays
// byte-stable, the system/structure conversions invert each other, and
// formula printing and parsing are mutually inverse.
void check_serialization(const VerifyConfig& cfg, Corpora& corp, CheckResult& r) {
  FailureLog log{&r};
  const auto run_system = [&](const SetSystem& sys) {
    ++r.instances;
    const std::string j1 = setsystem_to_json(sys);
    if (!(setsystem_from_json(j1) == sys) || setsystem_to_json(setsystem_from_json(j1)) != j1) {
      log("set-system JSON roundtrip failed: " + system_label(sys));
      return;
    }
    const Structure st = system_to_structure(sys);
    const std::string j2 = structure_to_json(st);
    if (!(structure_from_json(j2) == st) || structure_to_json(structure_from_json(j2)) != j2) {
      log("structure JSON roundtrip failed: " + system_label(sys));
      return;
    }
    if (!(structure_to_setsystem(st) == sys)) {
      log("system/structure conversion not inverse: " + system_label(sys));
      return;
    }
    ++r.passes;
  };
  for (int n = 1; n <= cfg.e2e_max_leaves; ++n) {
    for (const SetSystem& sys : corp.exhaustive(n).systems) run_system(sys);
  }
  for (const SetSystem& sys : corp.random_corpus().systems) run_system(sys);

  const FormulaLibrary lib({2});
  std::vector<std::pair<std::string, FormulaPtr>> formulas = {
      {"laminarity", lib.laminarity_sentence(true)},
      {"laminarity-verbatim", lib.laminarity_sentence(false)},
      {"chi", lib.chi_sentence()},
      {"ROOT", lib.derived_predicate("ROOT")},
      {"LEAF", lib.derived_predicate("LEAF")},
      {"LEAF_A", lib.derived_predicate("LEAF_A", lib.colour_a(1))},
      {"DESC", lib.derived_predicate("DESC")},
      {"ANC", lib.derived_predicate("ANC")},
      {"CHILD", lib.derived_predicate("CHILD")},
      {"PARENT", lib.derived_predicate("PARENT")},
      {"root", lib.derived_predicate("root")},
      {"leaf", lib.derived_predicate("leaf")},
      {"child", lib.derived_predicate("child")},
      {"fully", lib.branch_formula(BranchKind::Fully, lib.colour_a(1))},
      {"single", lib.branch_formula(BranchKind::Single, lib.colour_a(2))},
      {"missed", lib.branch_formula(BranchKind::Missed, lib.colour_a(1))},
      {"REP", lib.rep_formula(lib.colour_a(1), false)},
      {"REP*", lib.rep_formula(lib.colour_a(2), true)},
      {"leader0", lib.leader_formula(0)},
      {"leader1", lib.leader_formula(1)},
      {"leader2", lib.leader_formula(2)},
      {"countkids2", lib.counting_formula(CountingKind::Countkids, 2)},
      {"oddkids2", lib.counting_formula(CountingKind::Oddkids, 2)},
      {"evenleaf2", lib.counting_formula(CountingKind::Evenleaf, 2)},
  };
  for (const auto& [name, f] : formulas) {
    ++r.instances;
    try {
      const std::string text = print_formula(f);
      const FormulaPtr parsed = parse_formula(text);
      if (print_formula(parsed) == text) {
        ++r.passes;
      } else {
        log("formula text roundtrip not idempotent: " + name);
      }
    } catch (const Error& e) {
      log("formula text roundtrip failed for " + name + ": " + e.what());
    }
  }
}

using CheckFn = void (*)(const VerifyConfig&, Corpora&, CheckResult&);

struct CheckSpec {
  const char* name;
  CheckFn fn;
};

constexpr CheckSpec kChecks[] = {
    {"end-to-end-transduction", check_end_to_end},
    {"even-leaf-counting", check_even_leaf},
    {"filter-witness-and-mutants", check_filter_mutants},
    {"formula-native-agreement", check_formula_native},
    {"guarded-unguarded-agreement", check_guarded_unguarded},
    {"representative-tree-properties", check_rep_trees},
    {"serialization-roundtrip", check_serialization},
    {"thin-partition-properties", check_thin_partition},
    {"tree-system-roundtrip", check_tree_roundtrip},
    {"unique-representative-oracle", check_unique_rep},
};

}  // namespace

const std::vector<std::string>& verification_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : kChecks) out.push_back(c.name);
    return out;
  }();
  return names;
}

VerificationReport run_verification_suite(const VerifyConfig& cfg) {
  for (const auto& requested : cfg.checks) {
    const auto& known = verification_check_names();
    if (std::find(known.begin(), known.end(), requested) == known.end()) {
      fail(ErrorKind::UsageError, "unknown check name '" + requested + "'");
    }
  }
  Corpora corp;
  corp.cfg = &cfg;
  VerificationReport report;
  for (const auto& spec : kChecks) {
    if (!cfg.checks.empty() &&
        std::find(cfg.checks.begin(), cfg.checks.end(), spec.name) == cfg.checks.end()) {
      continue;
    }
    CheckResult r;
    r.name = spec.name;
    Timer timer;
    try {
      spec.fn(cfg, corp, r);
    } catch (const Error& e) {
      if (e.kind == ErrorKind::ResourceLimitExceeded) {
        r.skipped = true;
        r.detail += (r.detail.empty() ? "" : "\n");
        r.detail += std::string("skipped: ") + e.what();
      } else {
        r.detail += (r.detail.empty() ? "" : "\n");
        r.detail += std::string("error: ") + e.what();
        ++r.instances;  // the aborted run counts as a failing instance
      }
    }
    r.seconds = timer.elapsed();
    if (!r.skipped && r.instances == 0) {
      r.detail += (r.detail.empty() ? "" : "\n");
      r.detail += "warning: vacuous configuration, no instances ran";
    }
    report.checks.push_back(std::move(r));
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return report;
}

}  // namespace lamtrans
