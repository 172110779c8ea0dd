#include "lamtrans/transduction.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace lamtrans {
namespace {

using OrderedJson = nlohmann::ordered_json;
using F = FormulaPtr;
using V = std::vector<FormulaPtr>;

void collect_conjuncts(const Formula* f, std::vector<const Formula*>& out) {
  if (f->kind == FormulaKind::And) {
    for (const auto& c : f->children) collect_conjuncts(c.get(), out);
  } else {
    out.push_back(f);
  }
}

Vocabulary extend_vocabulary(const Vocabulary& base, const std::vector<Symbol>& extra) {
  Vocabulary voc = base;
  for (const auto& sym : extra) {
    if (voc.has(sym.name)) {
      fail(ErrorKind::VocabularyMismatch,
           "symbol '" + sym.name + "' already exists in the input vocabulary");
    }
    voc.symbols.push_back(sym);
  }
  std::sort(voc.symbols.begin(), voc.symbols.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  return voc;
}

std::vector<Structure> apply_colouring(const Structure& s, const ColouringStep& step) {
  std::vector<Symbol> extra;
  for (const auto& name : step.names) {
    extra.push_back({name, SymbolKind::Relation, 1});
  }
  Vocabulary voc = extend_vocabulary(s.vocabulary, extra);

  auto with_colours =
      [&](const std::map<std::string, std::vector<std::string>>& colours) {
        std::map<std::string, std::vector<Tuple>> rels = s.relations;
        for (const auto& name : step.names) rels[name] = {};
        for (const auto& [name, elems] : colours) {
          std::vector<Tuple> tuples;
          for (const auto& e : elems) tuples.push_back({e});
          rels[name] = std::move(tuples);
        }
        return make_structure(voc, s.universe, std::move(rels), s.set_predicates);
      };

  if (step.policy == ColouringStep::Policy::Provided) {
    for (const auto& [name, elems] : step.provided) {
      (void)elems;
      if (std::find(step.names.begin(), step.names.end(), name) == step.names.end()) {
        fail(ErrorKind::UsageError,
             "provided colour '" + name + "' is not declared by the colouring step");
      }
    }
    return {with_colours(step.provided)};
  }

  std::size_t bits = step.names.size() * s.universe.size();
  if (bits > step.enumerate_bit_cap) {
    fail(ErrorKind::ResourceLimitExceeded,
         "enumerating " + std::to_string(step.names.size()) + " colours over " +
             std::to_string(s.universe.size()) + " elements needs 2^" +
             std::to_string(bits) + " structures, above the cap of 2^" +
             std::to_string(step.enumerate_bit_cap));
  }
  std::vector<Structure> out;
  std::size_t total = std::size_t(1) << bits;
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::map<std::string, std::vector<std::string>> colours;
    for (std::size_t c = 0; c < step.names.size(); ++c) {
      std::vector<std::string> elems;
      for (std::size_t e = 0; e < s.universe.size(); ++e) {
        if (mask & (std::size_t(1) << (c * s.universe.size() + e))) {
          elems.push_back(s.universe[e]);
        }
      }
      colours[step.names[c]] = std::move(elems);
    }
    out.push_back(with_colours(colours));
  }
  return out;
}

std::string copy_id(int i, const std::string& e) {
  return std::to_string(i) + "#" + e;
}

std::vector<Structure> apply_copying(const Structure& s, const CopyingStep& step) {
  if (step.copies < 0) {
    fail(ErrorKind::RangeError, "copy count must be nonnegative");
  }
  std::vector<Symbol> extra;
  for (int i = 0; i <= step.copies; ++i) {
    extra.push_back({"copy" + std::to_string(i), SymbolKind::Relation, 2});
  }
  Vocabulary voc = extend_vocabulary(s.vocabulary, extra);

  std::vector<std::string> universe;
  for (int i = 0; i <= step.copies; ++i) {
    for (const auto& e : s.universe) universe.push_back(copy_id(i, e));
  }
  std::map<std::string, std::vector<Tuple>> rels;
  for (const auto& [name, tuples] : s.relations) {
    std::vector<Tuple> moved;
    for (const auto& t : tuples) {
      Tuple nt;
      for (const auto& e : t) nt.push_back(copy_id(0, e));
      moved.push_back(std::move(nt));
    }
    rels[name] = std::move(moved);
  }
  for (int i = 0; i <= step.copies; ++i) {
    std::vector<Tuple> links;
    for (const auto& e : s.universe) links.push_back({copy_id(i, e), copy_id(0, e)});
    rels["copy" + std::to_string(i)] = std::move(links);
  }
  std::map<std::string, std::vector<ElementSet>> preds;
  for (const auto& [name, sets] : s.set_predicates) {
    std::vector<ElementSet> moved;
    for (const auto& m : sets) {
      ElementSet nm;
      for (const auto& e : m) nm.push_back(copy_id(0, e));
      moved.push_back(std::move(nm));
    }
    preds[name] = std::move(moved);
  }
  return {make_structure(std::move(voc), std::move(universe), std::move(rels),
                         std::move(preds))};
}

std::vector<Structure> apply_filtering(const Structure& s, const FilteringStep& step,
                                       const EvalOptions& opts) {
  if (!step.sentence) {
    fail(ErrorKind::UsageError, "filtering step has no sentence");
  }
  if (!step.sentence->free_elems.empty() || !step.sentence->free_sets.empty()) {
    fail(ErrorKind::UsageError, "filtering sentence must be closed");
  }
  if (eval(s, step.sentence, {}, opts)) return {s};
  return {};
}

std::vector<Structure> apply_interpretation(const Structure& s,
                                            const InterpretationStep& step,
                                            const EvalOptions& opts) {
  if (!step.domain) {
    fail(ErrorKind::UsageError, "interpretation step has no domain formula");
  }
  if (step.domain->free_sets.size() != 0 || step.domain->free_elems.size() != 1 ||
      step.domain->free_elems[0] != step.domain_var) {
    fail(ErrorKind::UsageError,
         "domain formula must have exactly the one free element variable '" +
             step.domain_var + "'");
  }
  for (const auto& sym : step.output_vocabulary.symbols) {
    auto it = step.outputs.find(sym.name);
    if (it == step.outputs.end()) {
      fail(ErrorKind::VocabularyMismatch,
           "output symbol '" + sym.name + "' has no defining formula");
    }
    const InterpretationOutput& def = it->second;
    if (sym.kind == SymbolKind::SetPredicate) {
      if (def.args.size() != 1 || !is_set_var(def.args[0])) {
        fail(ErrorKind::VocabularyMismatch,
             "set predicate '" + sym.name + "' needs one set variable argument");
      }
    } else {
      if (int(def.args.size()) != sym.arity) {
        fail(ErrorKind::VocabularyMismatch,
             "relation '" + sym.name + "' has arity " + std::to_string(sym.arity) +
                 " but " + std::to_string(def.args.size()) + " argument names");
      }
      for (const auto& a : def.args) {
        if (!is_elem_var(a)) {
          fail(ErrorKind::VocabularyMismatch,
               "relation '" + sym.name + "' arguments must be element variables");
        }
      }
    }
  }
  for (const auto& [name, def] : step.outputs) {
    (void)def;
    if (!step.output_vocabulary.has(name)) {
      fail(ErrorKind::VocabularyMismatch,
           "defining formula for '" + name + "' has no output symbol");
    }
  }

  IndexedStructure idx(s);
  Evaluator ev(idx, opts);

  std::vector<std::string> universe;
  for (const auto& e : s.universe) {
    Evaluator::Binding b;
    b.elems.emplace_back(step.domain_var, idx.index_of(e));
    if (ev.eval_indexed(step.domain, b)) universe.push_back(e);
  }

  std::map<std::string, std::vector<Tuple>> rels;
  std::map<std::string, std::vector<ElementSet>> preds;
  for (const auto& sym : step.output_vocabulary.symbols) {
    const InterpretationOutput& def = step.outputs.at(sym.name);
    if (sym.kind == SymbolKind::Relation) {
      std::vector<Tuple> tuples;
      Tuple current(def.args.size());
      std::function<void(std::size_t)> walk = [&](std::size_t pos) {
        if (pos == def.args.size()) {
          Evaluator::Binding b;
          for (std::size_t i = 0; i < def.args.size(); ++i) {
            b.elems.emplace_back(def.args[i], idx.index_of(current[i]));
          }
          if (ev.eval_indexed(def.psi, b)) tuples.push_back(current);
          return;
        }
        for (const auto& e : universe) {
          current[pos] = e;
          walk(pos + 1);
        }
      };
      walk(0);
      rels[sym.name] = std::move(tuples);
    } else {
      // Candidate sets: a conjunct P(X) confines X to P's interpretation; a
      // conjunct (forall v (implies (in v X) (rel A v))) to subsets of the
      // unary relation A; otherwise all subsets of the restricted universe.
      std::vector<const Formula*> cs;
      collect_conjuncts(def.psi.get(), cs);
      const std::string& var = def.args[0];
      std::vector<std::vector<std::string>> candidates;
      bool found = false;
      for (const Formula* c : cs) {
        if (c->kind == FormulaKind::PredAtom && c->set_args[0] == var) {
          if (const auto* p = idx.predicate(c->symbol)) {
            for (const auto& bits : p->members) candidates.push_back(idx.bits_to_ids(bits));
            found = true;
            break;
          }
        }
      }
      if (!found) {
        std::vector<std::string> base;
        for (const Formula* c : cs) {
          if (c->kind != FormulaKind::ForallElem) continue;
          const Formula& inner = *c->children[0];
          if (inner.kind != FormulaKind::Implies) continue;
          const Formula& ant = *inner.children[0];
          const Formula& con = *inner.children[1];
          if (ant.kind == FormulaKind::Member && ant.set_args[0] == var &&
              ant.elem_args[0] == c->bound && con.kind == FormulaKind::RelAtom &&
              con.elem_args.size() == 1 && con.elem_args[0] == c->bound) {
            if (const auto* r = idx.relation(con.symbol); r && r->arity == 1) {
              base = idx.bits_to_ids(r->unary);
              found = true;
              break;
            }
          }
        }
        if (!found) base = universe;
        if (base.size() > opts.max_subset_universe) {
          fail(ErrorKind::ResourceLimitExceeded,
               "set predicate '" + sym.name + "' would enumerate 2^" +
                   std::to_string(base.size()) + " candidate sets (cap " +
                   std::to_string(opts.max_subset_universe) + ")");
        }
        for (std::size_t mask = 0; mask < (std::size_t(1) << base.size()); ++mask) {
          std::vector<std::string> m;
          for (std::size_t i = 0; i < base.size(); ++i) {
            if (mask & (std::size_t(1) << i)) m.push_back(base[i]);
          }
          candidates.push_back(std::move(m));
        }
      }
      std::set<std::string> allowed(universe.begin(), universe.end());
      std::set<std::vector<std::string>> seen;
      std::vector<ElementSet> members;
      for (auto& cand : candidates) {
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        if (!seen.insert(cand).second) continue;
        bool inside = std::all_of(cand.begin(), cand.end(),
                                  [&](const std::string& e) { return allowed.count(e); });
        if (!inside) continue;
        Evaluator::Binding b;
        b.sets.emplace_back(var, idx.set_to_bits(cand));
        if (ev.eval_indexed(def.psi, b)) members.push_back(cand);
      }
      preds[sym.name] = std::move(members);
    }
  }
  return {make_structure(step.output_vocabulary, std::move(universe), std::move(rels),
                         std::move(preds))};
}

const char* step_name(const TransductionStep& step) {
  if (std::holds_alternative<ColouringStep>(step)) return "colouring";
  if (std::holds_alternative<CopyingStep>(step)) return "copying";
  if (std::holds_alternative<FilteringStep>(step)) return "filtering";
  return "interpretation";
}

}  // namespace

std::vector<Structure> apply_step(const Structure& s, const TransductionStep& step,
                                  const EvalOptions& opts) {
  if (const auto* c = std::get_if<ColouringStep>(&step)) return apply_colouring(s, *c);
  if (const auto* c = std::get_if<CopyingStep>(&step)) return apply_copying(s, *c);
  if (const auto* c = std::get_if<FilteringStep>(&step)) return apply_filtering(s, *c, opts);
  return apply_interpretation(s, std::get<InterpretationStep>(step), opts);
}

std::vector<Structure> apply_pipeline(const Structure& s, const Pipeline& pl,
                                      const EvalOptions& opts, std::string* trace_json) {
  std::vector<Structure> current = {s};
  OrderedJson trace = OrderedJson::array();
  for (const auto& step : pl.steps) {
    std::vector<Structure> next;
    OrderedJson entry;
    entry["step"] = step_name(step);
    entry["inputs"] = current.size();
    if (const auto* f = std::get_if<FilteringStep>(&step)) {
      (void)f;
      OrderedJson verdicts = OrderedJson::array();
      for (const auto& in : current) {
        auto outs = apply_step(in, step, opts);
        verdicts.push_back(!outs.empty());
        for (auto& o : outs) next.push_back(std::move(o));
      }
      entry["verdicts"] = std::move(verdicts);
    } else {
      for (const auto& in : current) {
        auto outs = apply_step(in, step, opts);
        for (auto& o : outs) next.push_back(std::move(o));
      }
    }
    entry["outputs"] = next.size();
    if (!next.empty()) {
      entry["universe_size"] = next.front().universe.size();
      OrderedJson names = OrderedJson::array();
      for (const auto& sym : next.front().vocabulary.symbols) names.push_back(sym.name);
      entry["vocabulary"] = std::move(names);
    }
    trace.push_back(std::move(entry));
    current = std::move(next);
  }
  if (trace_json) *trace_json = trace.dump(2) + "\n";
  return current;
}

namespace {

// real(x, X): x is the copy that realizes the family set X, i.e. the i-th
// copy of X's part-i leader.
F realization(const FormulaLibrary& lib, const std::string& x, const std::string& X) {
  V alts;
  for (int i = 0; i <= lib.config().part_count; ++i) {
    alts.push_back(f_and({f_rel(lib.copy_name(i), {x, "e0"}),
                          lib.leader_formula_named(i, "e0", X)}));
  }
  return f_and({f_pred("SET", X), f_exists("e0", f_or(std::move(alts)))});
}

InterpretationStep realization_interpretation(const FormulaLibrary& lib) {
  InterpretationStep step;
  step.domain_var = "x";
  step.domain = f_exists_set("Y0", realization(lib, "x", "Y0"));
  step.output_vocabulary = lib.overlay_vocabulary();
  // First argument of desc is the descendant: its realized set is contained
  // in the other one.
  step.outputs["desc"] = InterpretationOutput{
      {"x", "y"},
      f_exists_set(
          "Y0",
          f_and({realization(lib, "x", "Y0"),
                 f_exists_set("Y1", f_and({realization(lib, "y", "Y1"),
                                           f_subset("Y0", "Y1")}))}))};
  step.outputs["SET"] = InterpretationOutput{{"X"}, f_pred("SET", "X")};
  return step;
}

InterpretationStep strip_set_interpretation(const FormulaLibrary& lib) {
  InterpretationStep step;
  step.domain_var = "x";
  step.domain = f_eq("x", "x");
  step.output_vocabulary = lib.tree_vocabulary();
  step.outputs["desc"] = InterpretationOutput{{"x", "y"}, f_rel("desc", {"x", "y"})};
  return step;
}

}  // namespace

Pipeline main_pipeline(const Structure& sys, const LaminarToTreeOptions& opt) {
  if (opt.part_count < 1) {
    fail(ErrorKind::RangeError, "part count must be at least 1");
  }
  SetSystem system = structure_to_setsystem(sys);
  std::string reason;
  if (!check_laminar(system, &reason)) {
    fail(ErrorKind::NotLaminar, reason);
  }
  FormulaLibrary lib({opt.part_count});

  ColouringStep colouring;
  for (int i = 1; i <= opt.part_count; ++i) colouring.names.push_back(lib.colour_a(i));
  for (int i = 1; i <= opt.part_count; ++i) colouring.names.push_back(lib.colour_b(i));

  if (opt.policy == ColouringPolicy::Witness) {
    colouring.policy = ColouringStep::Policy::Provided;
    LaminarTree tree = build_laminar_tree(system);
    ThinPartition tp = thin_partition(tree);
    IdentifyingColouring col = identifying_colouring(tree, tp);
    int next = 0;
    for (int j = 0; j < 16; ++j) {
      if (tp.parts[std::size_t(j)].empty()) continue;
      ++next;
      if (next > opt.part_count) {
        fail(ErrorKind::RangeError,
             "the thin partition uses more nonempty parts than the requested "
             "part count " +
                 std::to_string(opt.part_count));
      }
      colouring.provided[lib.colour_a(next)] = tree.elem_ids(col.A[std::size_t(j)]);
      colouring.provided[lib.colour_b(next)] = tree.elem_ids(col.B[std::size_t(j)]);
    }
  } else {
    colouring.policy = ColouringStep::Policy::Enumerate;
  }

  Pipeline pl;
  pl.steps.push_back(std::move(colouring));
  pl.steps.push_back(FilteringStep{lib.chi_sentence()});
  pl.steps.push_back(CopyingStep{opt.part_count});
  pl.steps.push_back(realization_interpretation(lib));
  if (opt.strip_set) {
    pl.steps.push_back(strip_set_interpretation(lib));
  }
  return pl;
}

Structure laminar_to_tree(const Structure& sys, const LaminarToTreeOptions& opt,
                          std::string* trace_json) {
  Pipeline pl = main_pipeline(sys, opt);
  std::vector<Structure> outs = apply_pipeline(sys, pl, opt.eval, trace_json);
  if (outs.empty()) {
    fail(ErrorKind::FilterRejectedWitness,
         "the filter sentence rejected every colouring");
  }
  return std::move(outs.front());
}

// ---------------------------------------------------------------------------
// Backwards direction and tree utilities.

namespace {

std::string leaf_label(const std::string& id) {
  auto pos = id.find('#');
  return pos == std::string::npos ? id : id.substr(pos + 1);
}

}  // namespace

RootedTree rooted_tree_from_desc(const Structure& s) {
  const int n = int(s.universe.size());
  const Symbol* sym = s.vocabulary.find("desc");
  if (!sym || sym->kind != SymbolKind::Relation || sym->arity != 2) {
    fail(ErrorKind::NotATree, "the structure has no binary desc relation");
  }
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[s.universe[std::size_t(i)]] = i;
  const std::size_t nn = std::size_t(n);
  std::vector<std::vector<bool>> d(nn, std::vector<bool>(nn));
  auto it = s.relations.find("desc");
  if (it != s.relations.end()) {
    for (const auto& t : it->second) {
      d[std::size_t(index.at(t[0]))][std::size_t(index.at(t[1]))] = true;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!d[std::size_t(v)][std::size_t(v)]) {
      fail(ErrorKind::NotATree,
           "desc is not reflexive at '" + s.universe[std::size_t(v)] + "'");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && d[std::size_t(a)][std::size_t(b)] && d[std::size_t(b)][std::size_t(a)]) {
        fail(ErrorKind::NotATree, "desc is not antisymmetric between '" +
                                      s.universe[std::size_t(a)] + "' and '" +
                                      s.universe[std::size_t(b)] + "'");
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!d[std::size_t(a)][std::size_t(b)]) continue;
      for (int c = 0; c < n; ++c) {
        if (d[std::size_t(b)][std::size_t(c)] && !d[std::size_t(a)][std::size_t(c)]) {
          fail(ErrorKind::NotATree, "desc is not transitive");
        }
      }
    }
  }
  int root = -1;
  for (int v = 0; v < n; ++v) {
    bool has_proper_anc = false;
    for (int y = 0; y < n; ++y) {
      if (y != v && d[std::size_t(v)][std::size_t(y)]) has_proper_anc = true;
    }
    if (!has_proper_anc) {
      if (root != -1) {
        fail(ErrorKind::NotATree, "desc has more than one root");
      }
      root = v;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!d[std::size_t(v)][std::size_t(root)]) {
      fail(ErrorKind::NotATree,
           "'" + s.universe[std::size_t(v)] + "' does not descend from the root");
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int y = 0; y < n; ++y) {
      if (!d[std::size_t(v)][std::size_t(y)]) continue;
      for (int z = 0; z < n; ++z) {
        if (!d[std::size_t(v)][std::size_t(z)]) continue;
        if (!d[std::size_t(y)][std::size_t(z)] && !d[std::size_t(z)][std::size_t(y)]) {
          fail(ErrorKind::NotATree, "the ancestors of '" +
                                        s.universe[std::size_t(v)] +
                                        "' are not totally ordered");
        }
      }
    }
  }

  RootedTree t;
  t.root = root;
  t.children.assign(std::size_t(n), {});
  t.labels.assign(std::size_t(n), "");
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    // The parent is the closest proper ancestor: the one with the most
    // ancestors of its own.
    int parent = -1;
    std::size_t best = 0;
    for (int y = 0; y < n; ++y) {
      if (y == v || !d[std::size_t(v)][std::size_t(y)]) continue;
      std::size_t count = 0;
      for (int z = 0; z < n; ++z) {
        if (d[std::size_t(y)][std::size_t(z)]) ++count;
      }
      if (parent == -1 || count > best) {
        parent = y;
        best = count;
      }
    }
    t.children[std::size_t(parent)].push_back(v);
  }
  for (int v = 0; v < n; ++v) {
    if (t.children[std::size_t(v)].empty()) {
      t.labels[std::size_t(v)] = leaf_label(s.universe[std::size_t(v)]);
    }
  }
  return t;
}

RootedTree rooted_tree_from_laminar(const LaminarTree& tree) {
  RootedTree t;
  t.root = 0;
  t.children.assign(tree.nodes.size(), {});
  t.labels.assign(tree.nodes.size(), "");
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    t.children[v] = tree.nodes[v].children;
    if (tree.nodes[v].children.empty()) {
      t.labels[v] = leaf_label(tree.universe[std::size_t(tree.nodes[v].elems.lowest())]);
    }
  }
  return t;
}

namespace {

std::string canon_node(const RootedTree& t, int v) {
  if (t.children[std::size_t(v)].empty()) {
    const std::string& l = t.labels[std::size_t(v)];
    return "L" + std::to_string(l.size()) + ":" + l;
  }
  std::vector<std::string> parts;
  for (int c : t.children[std::size_t(v)]) parts.push_back(canon_node(t, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "N(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

}  // namespace

std::string rooted_tree_canon(const RootedTree& t) {
  if (t.root < 0 || std::size_t(t.root) >= t.children.size()) {
    fail(ErrorKind::NotATree, "rooted tree has no root");
  }
  return canon_node(t, t.root);
}

bool rooted_tree_iso(const RootedTree& a, const RootedTree& b) {
  return rooted_tree_canon(a) == rooted_tree_canon(b);
}

bool rooted_tree_iso(const LaminarTree& a, const Structure& b) {
  return rooted_tree_iso(rooted_tree_from_laminar(a), rooted_tree_from_desc(b));
}

bool rooted_tree_iso(const Structure& a, const Structure& b) {
  return rooted_tree_iso(rooted_tree_from_desc(a), rooted_tree_from_desc(b));
}

Structure tree_to_setsystem(const Structure& tree, const EvalOptions& opts) {
  rooted_tree_from_desc(tree);  // validates the tree shape

  FormulaLibrary lib({1});
  InterpretationStep step;
  step.domain_var = "x";
  step.domain = lib.derived_predicate_named("leaf", {"x"});
  step.output_vocabulary = lib.base_vocabulary();
  // X is exactly the set of leaves below some node.
  step.outputs["SET"] = InterpretationOutput{
      {"X"},
      f_exists("e0", f_forall("e1", f_iff(f_and({f_rel("desc", {"e1", "e0"}),
                                                 lib.derived_predicate_named(
                                                     "leaf", {"e1"})}),
                                          f_in("e1", "X"))))};
  auto outs = apply_interpretation(tree, step, opts);
  return std::move(outs.front());
}

}  // namespace lamtrans
