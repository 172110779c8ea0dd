#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "lamtrans/eval.hpp"
#include "lamtrans/formulas.hpp"
#include "lamtrans/laminar.hpp"
#include "lamtrans/logic.hpp"

using namespace lamtrans;

namespace {

Structure coloured_structure(const SetSystem& sys, const LaminarTree& tree,
                             const IdentifyingColouring& col, const FormulaLibrary& lib) {
  Structure base = system_to_structure(sys);
  std::map<std::string, std::vector<Tuple>> rels;
  for (int j = 0; j < 16; ++j) {
    std::vector<Tuple> a, b;
    for (int e : col.A[std::size_t(j)].indices()) a.push_back({tree.universe[std::size_t(e)]});
    for (int e : col.B[std::size_t(j)].indices()) b.push_back({tree.universe[std::size_t(e)]});
    rels[lib.colour_a(j + 1)] = a;
    rels[lib.colour_b(j + 1)] = b;
  }
  return make_structure(lib.coloured_vocabulary(), base.universe, rels,
                        base.set_predicates);
}

std::vector<std::vector<std::string>> all_subsets(const std::vector<std::string>& u) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t m = 0; m < (std::size_t(1) << u.size()); ++m) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (m & (std::size_t(1) << i)) s.push_back(u[i]);
    out.push_back(s);
  }
  return out;
}

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind;
  }
  FAIL("expected an error");
  return ErrorKind::UsageError;
}

struct Fixture3 {
  FormulaLibrary lib;
  SetSystem sys = make_set_system({"a", "b", "c"},
                                  {{"a"}, {"b"}, {"c"}, {"a", "b"}, {"a", "b", "c"}});
  LaminarTree tree = build_laminar_tree(sys);
  ThinPartition tp = thin_partition(tree);
  IdentifyingColouring col = identifying_colouring(tree, tp);
  Structure cs = coloured_structure(sys, tree, col, lib);
  IndexedStructure is{cs};
  Evaluator ev{is};
  std::vector<std::string> U = {"a", "b", "c"};
  std::vector<std::vector<std::string>> fam = {
      {"a"}, {"b"}, {"c"}, {"a", "b"}, {"a", "b", "c"}};
};

struct FixtureCat {
  FormulaLibrary lib;
  SetSystem sys = make_set_system(
      {"l1", "l2", "l3", "l4", "x", "y"},
      {{"l1"}, {"l2"}, {"l3"}, {"l4"}, {"x"}, {"y"},
       {"x", "y"}, {"l4", "x", "y"}, {"l3", "l4", "x", "y"},
       {"l2", "l3", "l4", "x", "y"},
       {"l1", "l2", "l3", "l4", "x", "y"}});
  LaminarTree tree = build_laminar_tree(sys);
  ThinPartition tp = thin_partition(tree);
  IdentifyingColouring col = identifying_colouring(tree, tp);
  Structure cs = coloured_structure(sys, tree, col, lib);
  IndexedStructure is{cs};
  Evaluator ev{is};
};

}  // namespace

TEST_CASE("colour layout on the three-leaf system") {
  Fixture3 fx;
  CHECK(fx.cs.relations.at("A1") == std::vector<Tuple>{{"a"}, {"b"}});
  CHECK(fx.cs.relations.at("B1") == std::vector<Tuple>{{"a"}});
  CHECK(fx.cs.relations.at("A5") == std::vector<Tuple>{{"a"}});
  CHECK(fx.cs.relations.at("A2").empty());
}

TEST_CASE("derived set predicates") {
  Fixture3 fx;
  Assignment a;
  a.sets["X"] = {"a", "b", "c"};
  CHECK(fx.ev.eval(fx.lib.derived_predicate("ROOT"), a));
  a.sets["X"] = {"a", "b"};
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("ROOT"), a));
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("LEAF"), a));
  a.sets["X"] = {"c"};
  CHECK(fx.ev.eval(fx.lib.derived_predicate("LEAF"), a));
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("LEAF_A", "A1"), a));  // c not in A1
  a.sets["X"] = {"a"};
  CHECK(fx.ev.eval(fx.lib.derived_predicate("LEAF_A", "A1"), a));

  // first argument is the child / descendant
  Assignment p;
  p.sets["X"] = {"a", "b"};
  p.sets["Y"] = {"a", "b", "c"};
  CHECK(fx.ev.eval(fx.lib.derived_predicate("CHILD"), p));
  CHECK(fx.ev.eval(fx.lib.derived_predicate("DESC"), p));
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("ANC"), p));
  std::swap(p.sets["X"], p.sets["Y"]);
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("CHILD"), p));
  CHECK(fx.ev.eval(fx.lib.derived_predicate("ANC"), p));
  CHECK(fx.ev.eval(fx.lib.derived_predicate("PARENT"), p));
  p.sets["X"] = {"a", "b", "c"};
  p.sets["Y"] = {"a"};
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("CHILD"), p));   // grandchild
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("PARENT"), p));  // grandparent
  CHECK(fx.ev.eval(fx.lib.derived_predicate("ANC"), p));

  // non-family sets are rejected by the SET conjunct
  Assignment q;
  q.sets["X"] = {"b", "c"};
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("LEAF"), q));
  q.sets["X"] = {"b"};
  q.sets["Y"] = {"b", "c"};
  CHECK(!fx.ev.eval(fx.lib.derived_predicate("CHILD"), q));
}

TEST_CASE("branch formulas match the native classifier on every colour") {
  Fixture3 fx;
  Vocabulary voc = fx.lib.base_vocabulary();
  voc.symbols.push_back({"K", SymbolKind::Relation, 1});
  std::sort(voc.symbols.begin(), voc.symbols.end(),
            [](const Symbol& x, const Symbol& y) { return x.name < y.name; });
  for (const auto& K : all_subsets(fx.U)) {
    std::map<std::string, std::vector<Tuple>> rels;
    std::vector<Tuple> kt;
    for (const auto& e : K) kt.push_back({e});
    rels["K"] = kt;
    Structure s = make_structure(voc, fx.U, rels, fx.cs.set_predicates);
    IndexedStructure is(s);
    Evaluator ev(is);
    Bits kb = is.set_to_bits(K);
    for (int node : fx.tree.inner_nodes()) {
      BranchClass bc = classify_branch(fx.tree, kb, node);
      Assignment a;
      a.sets["X"] = fx.tree.elem_ids(fx.tree.nodes[std::size_t(node)].elems);
      CHECK(ev.eval(fx.lib.branch_formula(BranchKind::Fully, "K"), a) ==
            (bc.kind == BranchKind::Fully));
      CHECK(ev.eval(fx.lib.branch_formula(BranchKind::Single, "K"), a) ==
            (bc.kind == BranchKind::Single));
      CHECK(ev.eval(fx.lib.branch_formula(BranchKind::Missed, "K"), a) ==
            (bc.kind == BranchKind::Missed));
    }
  }
}

TEST_CASE("maximal representative pairs are unique on the three-leaf system") {
  Fixture3 fx;
  FormulaPtr rep_star = fx.lib.rep_formula("A1", true);
  int hits = 0;
  for (const auto& R : all_subsets(fx.U)) {
    for (const auto& X : fx.fam) {
      Assignment a;
      a.sets["R"] = R;
      a.sets["X"] = X;
      if (fx.ev.eval(rep_star, a)) {
        ++hits;
        CHECK(R == std::vector<std::string>{"a", "b"});
        CHECK(X == fx.U);
      }
    }
  }
  CHECK(hits == 1);

  // the unstarred predicate admits a sub-candidate; maximality rejects it
  Assignment a;
  a.sets["R"] = {"a"};
  a.sets["X"] = {"a", "b"};
  CHECK(fx.ev.eval(fx.lib.rep_formula("A1", false), a));
  CHECK(!fx.ev.eval(rep_star, a));

  // the empty candidate never qualifies
  a.sets["R"] = {};
  for (const auto& X : fx.fam) {
    a.sets["X"] = X;
    CHECK(!fx.ev.eval(fx.lib.rep_formula("A1", false), a));
  }
}

TEST_CASE("every family set has exactly one leader (three leaves)") {
  Fixture3 fx;
  std::map<std::vector<std::string>, std::pair<int, std::string>> expected = {
      {{"a"}, {0, "a"}},      {{"b"}, {0, "b"}},      {{"c"}, {0, "c"}},
      {{"a", "b"}, {5, "a"}}, {{"a", "b", "c"}, {1, "a"}}};
  for (const auto& X : fx.fam) {
    int count = 0;
    std::pair<int, std::string> found{-1, ""};
    for (int i = 0; i <= 16; ++i) {
      for (const auto& r : fx.U) {
        Assignment a;
        a.elems["r"] = r;
        a.sets["X"] = X;
        if (fx.ev.eval(fx.lib.leader_formula(i), a)) {
          ++count;
          found = {i, r};
        }
      }
    }
    CHECK(count == 1);
    CHECK(found == expected.at(X));
  }
}

TEST_CASE("the filter sentence accepts the construction and rejects damage") {
  Fixture3 fx;
  CHECK(fx.ev.eval(fx.lib.chi_sentence()));
  Structure bad = fx.cs;
  bad.relations["A5"].clear();  // erase the colour of inner node {a,b}
  bad.relations["B5"].clear();
  IndexedStructure isb(bad);
  Evaluator evb(isb);
  CHECK(!evb.eval(fx.lib.chi_sentence()));
}

TEST_CASE("laminarity sentences") {
  Fixture3 fx;
  CHECK(fx.ev.eval(fx.lib.laminarity_sentence(true)));
  Structure crossing = make_structure(
      fx.lib.base_vocabulary(), fx.U, {},
      {{"SET", {{"a"}, {"b"}, {"c"}, {"a", "b"}, {"b", "c"}, {"a", "b", "c"}}}});
  IndexedStructure isx(crossing);
  Evaluator evx(isx);
  CHECK(!evx.eval(fx.lib.laminarity_sentence(true)));
  // the uncorrected rendering is vacuously true: its singleton clause can
  // always pick the literal singleton as witness
  CHECK(evx.eval(fx.lib.laminarity_sentence(false)));
  CHECK(fx.ev.eval(fx.lib.laminarity_sentence(false)));
}

TEST_CASE("caterpillar: rep candidates relative to R, not the colour") {
  FixtureCat fx;
  CHECK(fx.cs.relations.at("A1") == std::vector<Tuple>{{"l1"}, {"x"}});
  CHECK(fx.cs.relations.at("B1") == std::vector<Tuple>{{"l1"}, {"x"}});

  Assignment a;
  a.sets["R"] = {"l1"};
  a.sets["X"] = {"l1", "l2", "l3", "l4", "x", "y"};
  CHECK(fx.ev.eval(fx.lib.rep_formula("A1", false), a));
  CHECK(fx.ev.eval(fx.lib.rep_formula("A1", true), a));

  // the nested same-part candidate survives maximality: {l1} does not
  // contain {x} even though its pair sits at an ancestor
  a.sets["R"] = {"x"};
  a.sets["X"] = {"x", "y"};
  CHECK(fx.ev.eval(fx.lib.rep_formula("A1", false), a));
  CHECK(fx.ev.eval(fx.lib.rep_formula("A1", true), a));

  // a mismatched pair still fails
  a.sets["R"] = {"x"};
  a.sets["X"] = {"l1", "l2", "l3", "l4", "x", "y"};
  CHECK(!fx.ev.eval(fx.lib.rep_formula("A1", false), a));
  a.sets["R"] = {"l1", "x"};
  for (const auto& X : fx.sys.sets) {
    a.sets["X"] = X;
    CHECK(!fx.ev.eval(fx.lib.rep_formula("A1", false), a));
  }
}

TEST_CASE("caterpillar: exactly one leader per family set") {
  FixtureCat fx;
  std::map<std::vector<std::string>, std::pair<int, std::string>> expected = {
      {{"l1"}, {0, "l1"}},
      {{"l2"}, {0, "l2"}},
      {{"l3"}, {0, "l3"}},
      {{"l4"}, {0, "l4"}},
      {{"x"}, {0, "x"}},
      {{"y"}, {0, "y"}},
      {{"x", "y"}, {1, "x"}},
      {{"l4", "x", "y"}, {13, "l4"}},
      {{"l3", "l4", "x", "y"}, {9, "l3"}},
      {{"l2", "l3", "l4", "x", "y"}, {5, "l2"}},
      {{"l1", "l2", "l3", "l4", "x", "y"}, {1, "l1"}}};
  std::vector<std::string> U = {"l1", "l2", "l3", "l4", "x", "y"};
  for (const auto& X : fx.sys.sets) {
    int count = 0;
    std::pair<int, std::string> found{-1, ""};
    for (int i = 0; i <= 16; ++i) {
      for (const auto& r : U) {
        Assignment a;
        a.elems["r"] = r;
        a.sets["X"] = X;
        if (fx.ev.eval(fx.lib.leader_formula(i), a)) {
          ++count;
          found = {i, r};
        }
      }
    }
    CHECK(count == 1);
    CHECK(found == expected.at(X));
  }
  CHECK(fx.ev.eval(fx.lib.chi_sentence()));
}

TEST_CASE("counting formulas over tree structures") {
  FormulaLibrary lib;
  Vocabulary tv = lib.tree_vocabulary();
  // three-leaf star: root w, leaves c1 c2 c3 (reflexive descendant pairs)
  std::vector<Tuple> desc = {{"w", "w"}, {"c1", "c1"}, {"c2", "c2"}, {"c3", "c3"},
                             {"c1", "w"}, {"c2", "w"}, {"c3", "w"}};
  Structure star = make_structure(tv, {"c1", "c2", "c3", "w"}, {{"desc", desc}}, {});
  IndexedStructure iss(star);
  Evaluator evs(iss);

  Assignment a;
  a.elems["x"] = "w";
  CHECK(evs.eval(lib.derived_predicate("root"), a));
  CHECK(!evs.eval(lib.derived_predicate("leaf"), a));
  a.elems["x"] = "c2";
  CHECK(!evs.eval(lib.derived_predicate("root"), a));
  CHECK(evs.eval(lib.derived_predicate("leaf"), a));
  a.elems["y"] = "w";
  CHECK(evs.eval(lib.derived_predicate("child"), a));
  std::swap(a.elems["x"], a.elems["y"]);
  CHECK(!evs.eval(lib.derived_predicate("child"), a));

  auto ck = [&](int l, const std::string& v, std::vector<std::string> S) {
    Assignment b;
    b.elems["v"] = v;
    b.sets["S"] = std::move(S);
    return evs.eval(lib.counting_formula(CountingKind::Countkids, l), b);
  };
  CHECK(ck(0, "w", {}));
  CHECK(!ck(0, "w", {"c1"}));
  CHECK(ck(1, "w", {"c1"}));
  CHECK(ck(2, "w", {"c1", "c3"}));
  CHECK(!ck(1, "w", {"c1", "c3"}));
  CHECK(ck(3, "w", {"c1", "c2", "c3"}));
  CHECK(ck(0, "c1", {"c1", "c2", "c3"}));  // leaves have no children
  CHECK(ck(1, "w", {"w", "c2"}));  // membership without childhood does not count

  auto ok = [&](int k, const std::string& v, std::vector<std::string> S) {
    Assignment b;
    b.elems["v"] = v;
    b.sets["S"] = std::move(S);
    return evs.eval(lib.counting_formula(CountingKind::Oddkids, k), b);
  };
  CHECK(ok(3, "w", {"c1"}));
  CHECK(!ok(3, "w", {"c1", "c2"}));
  CHECK(ok(3, "w", {"c1", "c2", "c3"}));
  CHECK(!ok(1, "w", {"c1", "c2", "c3"}));  // bound too small to see 3

  auto el = [&](Evaluator& ev, int k, std::vector<std::string> X) {
    Assignment b;
    b.sets["X"] = std::move(X);
    return ev.eval(lib.counting_formula(CountingKind::Evenleaf, k), b);
  };
  CHECK(el(evs, 3, {}));
  CHECK(!el(evs, 3, {"c1"}));
  CHECK(el(evs, 3, {"c1", "c3"}));
  CHECK(!el(evs, 3, {"c1", "c2", "c3"}));
  // with the arity bound below the actual down-degree the parity check
  // breaks: the sharpness witness
  CHECK(el(evs, 1, {"c1", "c2", "c3"}));

  // path tree w -> m -> c
  std::vector<Tuple> pd = {{"w", "w"}, {"m", "m"}, {"c", "c"},
                           {"m", "w"}, {"c", "m"}, {"c", "w"}};
  Structure path = make_structure(tv, {"c", "m", "w"}, {{"desc", pd}}, {});
  IndexedStructure isp(path);
  Evaluator evp(isp);
  Assignment b;
  b.elems["x"] = "c";
  b.elems["y"] = "w";
  CHECK(!evp.eval(lib.derived_predicate("child"), b));  // grandchild only
  b.elems["y"] = "m";
  CHECK(evp.eval(lib.derived_predicate("child"), b));
  CHECK(el(evp, 1, {}));
  CHECK(!el(evp, 1, {"c"}));
}

TEST_CASE("printing, parsing, caching, and errors") {
  FormulaLibrary lib;
  FormulaLibrary small({2});
  FormulaPtr chi = small.chi_sentence();
  const std::string text = print_formula(chi);
  FormulaPtr back = parse_formula(text);
  CHECK(print_formula(back) == text);
  CHECK(small.chi_sentence().get() == chi.get());  // cached instance

  FormulaPtr rep = lib.rep_formula("A1", true);
  const std::string rtext = print_formula(rep);
  CHECK(print_formula(parse_formula(rtext)) == rtext);

  CHECK(kind_of([&] { lib.derived_predicate("BOGUS"); }) ==
        ErrorKind::UnknownPredicateName);
  CHECK(kind_of([&] { lib.derived_predicate("LEAF_A"); }) == ErrorKind::UsageError);
  CHECK(kind_of([&] { lib.branch_formula(BranchKind::Partial, "K"); }) ==
        ErrorKind::UsageError);
  CHECK(kind_of([&] { lib.leader_formula(17); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { lib.colour_a(0); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { lib.rep_formula_named("A1", true, "QR", "X"); }) ==
        ErrorKind::UsageError);
  CHECK(kind_of([&] { lib.derived_predicate_named("LEAF", {"x"}); }) ==
        ErrorKind::UsageError);
  CHECK(kind_of([&] { lib.counting_formula(CountingKind::Countkids, -1); }) ==
        ErrorKind::RangeError);
  CHECK(kind_of([&] { lib.counting_formula(CountingKind::Evenleaf, 0); }) ==
        ErrorKind::RangeError);
  CHECK(kind_of([] { FormulaLibrary bad({0}); }) == ErrorKind::RangeError);
}
