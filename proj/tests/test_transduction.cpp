#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lamtrans/formulas.hpp"
#include "lamtrans/laminar.hpp"
#include "lamtrans/transduction.hpp"

using namespace lamtrans;

namespace {

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

Structure tree3() {
  Vocabulary voc;
  voc.symbols = {{"desc", SymbolKind::Relation, 2}};
  return make_structure(voc, {"a", "b", "r"},
                        {{"desc",
                          {{"r", "r"}, {"a", "a"}, {"b", "b"}, {"a", "r"}, {"b", "r"}}}},
                        {});
}

}  // namespace

TEST_CASE("copying step") {
  Vocabulary voc;
  Structure s = make_structure(voc, {"a"}, {}, {});
  auto outs = apply_step(s, CopyingStep{1});
  REQUIRE(outs.size() == 1);
  const Structure& o = outs[0];
  CHECK(o.universe == std::vector<std::string>{"0#a", "1#a"});
  CHECK(o.relations.at("copy0") == std::vector<Tuple>{{"0#a", "0#a"}});
  CHECK(o.relations.at("copy1") == std::vector<Tuple>{{"1#a", "0#a"}});
}

TEST_CASE("filtering step") {
  Vocabulary voc;
  Structure s = make_structure(voc, {"a"}, {}, {});
  auto pass = apply_step(s, FilteringStep{f_exists("x", f_eq("x", "x"))});
  REQUIRE(pass.size() == 1);
  CHECK(pass[0].universe == s.universe);
  auto rej = apply_step(s, FilteringStep{f_not(f_exists("x", f_eq("x", "x")))});
  CHECK(rej.empty());
  CHECK(kind_of([&] { apply_step(s, FilteringStep{f_eq("x", "y")}); }) ==
        ErrorKind::UsageError);  // open sentence
}

TEST_CASE("interpretation step restricts the domain") {
  Structure t = tree3();
  FormulaLibrary lib({1});
  InterpretationStep step;
  step.domain_var = "x";
  step.domain = lib.derived_predicate_named("leaf", {"x"});
  Vocabulary out;
  out.symbols = {{"same", SymbolKind::Relation, 2}};
  step.output_vocabulary = out;
  step.outputs["same"] = InterpretationOutput{{"x", "y"}, f_eq("x", "y")};
  auto outs = apply_step(t, step);
  REQUIRE(outs.size() == 1);
  CHECK(outs[0].universe == std::vector<std::string>{"a", "b"});
  CHECK(outs[0].relations.at("same").size() == 2);
}

TEST_CASE("colouring step: provided and enumerated policies") {
  Vocabulary voc;
  Structure s = make_structure(voc, {"a", "b"}, {}, {});

  ColouringStep prov;
  prov.names = {"A1"};
  prov.policy = ColouringStep::Policy::Provided;
  prov.provided = {{"A1", {"b"}}};
  auto outs = apply_step(s, prov);
  REQUIRE(outs.size() == 1);
  CHECK(outs[0].relations.at("A1") == std::vector<Tuple>{{"b"}});

  ColouringStep en;
  en.names = {"A1"};
  en.policy = ColouringStep::Policy::Enumerate;
  auto all = apply_step(s, en);
  CHECK(all.size() == 4);
  std::set<std::size_t> sizes;
  for (const auto& o : all) sizes.insert(o.relations.at("A1").size());
  CHECK(sizes == std::set<std::size_t>{0, 1, 2});

  en.enumerate_bit_cap = 1;
  CHECK(kind_of([&] { apply_step(s, en); }) == ErrorKind::ResourceLimitExceeded);

  ColouringStep clash;
  clash.names = {"A1", "A1"};
  clash.policy = ColouringStep::Policy::Enumerate;
  CHECK(kind_of([&] { apply_step(s, clash); }) == ErrorKind::VocabularyMismatch);
}

TEST_CASE("witness pipeline on a single element") {
  SetSystem sys = make_set_system({"a"}, {{"a"}});
  Structure out = laminar_to_tree(system_to_structure(sys));
  CHECK(out.universe.size() == 1);
  CHECK(rooted_tree_iso(build_laminar_tree(sys), out));
}

TEST_CASE("witness pipeline on three leaves, with trace and interpretation back") {
  SetSystem sys = make_set_system({"a", "b", "c"},
                                  {{"a"}, {"b"}, {"c"}, {"a", "b"}, {"a", "b", "c"}});
  std::string trace;
  Structure out = laminar_to_tree(system_to_structure(sys), {}, &trace);
  CHECK(out.universe.size() == 5);
  CHECK(rooted_tree_iso(build_laminar_tree(sys), out));
  CHECK(trace.find("\"filtering\"") != std::string::npos);

  SetSystem back = structure_to_setsystem(tree_to_setsystem(out));
  SetSystem expect;
  expect.universe = {"0#a", "0#b", "0#c"};
  for (auto s2 : sys.sets) {
    std::vector<std::string> renamed;
    for (const auto& e : s2) renamed.push_back("0#" + e);
    expect.sets.push_back(renamed);
  }
  expect = make_set_system(expect.universe, expect.sets);
  CHECK(back == expect);
}

TEST_CASE("witness pipeline on the caterpillar; strip_set; part budget") {
  SetSystem sys = make_set_system(
      {"l1", "l2", "l3", "l4", "x", "y"},
      {{"l1"}, {"l2"}, {"l3"}, {"l4"}, {"x"}, {"y"},
       {"x", "y"}, {"l4", "x", "y"}, {"l3", "l4", "x", "y"},
       {"l2", "l3", "l4", "x", "y"},
       {"l1", "l2", "l3", "l4", "x", "y"}});
  Structure out = laminar_to_tree(system_to_structure(sys));
  CHECK(out.universe.size() == 11);
  CHECK(rooted_tree_iso(build_laminar_tree(sys), out));

  LaminarToTreeOptions strip;
  strip.strip_set = true;
  Structure bare = laminar_to_tree(system_to_structure(sys), strip);
  REQUIRE(bare.vocabulary.symbols.size() == 1);
  CHECK(bare.vocabulary.symbols[0].name == "desc");
  CHECK(rooted_tree_iso(out, bare));

  LaminarToTreeOptions small;
  small.part_count = 3;
  CHECK(kind_of([&] { laminar_to_tree(system_to_structure(sys), small); }) ==
        ErrorKind::RangeError);
}

TEST_CASE("enumerate policy fans out and every survivor is isomorphic") {
  SetSystem sys = make_set_system({"a", "b"}, {{"a"}, {"b"}, {"a", "b"}});
  LaminarToTreeOptions opt;
  opt.policy = ColouringPolicy::Enumerate;
  opt.part_count = 1;
  Pipeline pl = main_pipeline(system_to_structure(sys), opt);
  auto outs = apply_pipeline(system_to_structure(sys), pl, opt.eval);
  // the filter at one part holds iff |A1 ∩ B1| = 1: 6 of the 16 colourings
  CHECK(outs.size() == 6);
  for (const auto& o : outs) CHECK(rooted_tree_iso(outs[0], o));
  CHECK(rooted_tree_iso(build_laminar_tree(sys), outs[0]));

  LaminarToTreeOptions wopt;
  wopt.part_count = 1;
  Structure w = laminar_to_tree(system_to_structure(sys), wopt);
  CHECK(rooted_tree_iso(w, outs[0]));
}

TEST_CASE("non-laminar and degenerate inputs are rejected") {
  SetSystem cross = make_set_system(
      {"a", "b", "c"},
      {{"a"}, {"b"}, {"c"}, {"a", "b"}, {"b", "c"}, {"a", "b", "c"}});
  CHECK(kind_of([&] { laminar_to_tree(system_to_structure(cross)); }) ==
        ErrorKind::NotLaminar);
  SetSystem ok = make_set_system({"a"}, {{"a"}});
  LaminarToTreeOptions bad;
  bad.part_count = 0;
  CHECK(kind_of([&] { laminar_to_tree(system_to_structure(ok), bad); }) ==
        ErrorKind::RangeError);
}

TEST_CASE("interpreting a tree back into a set system validates the tree") {
  Structure t = tree3();
  SetSystem sys = structure_to_setsystem(tree_to_setsystem(t));
  CHECK(sys == make_set_system({"a", "b"}, {{"a"}, {"b"}, {"a", "b"}}));

  Vocabulary voc;
  voc.symbols = {{"desc", SymbolKind::Relation, 2}};
  // not reflexive
  CHECK(kind_of([&] {
          tree_to_setsystem(make_structure(voc, {"a"}, {{"desc", {}}}, {}));
        }) == ErrorKind::NotATree);
  // two roots
  CHECK(kind_of([&] {
          tree_to_setsystem(make_structure(
              voc, {"a", "b"}, {{"desc", {{"a", "a"}, {"b", "b"}}}}, {}));
        }) == ErrorKind::NotATree);
  // diamond: d has two incomparable ancestors under the root
  CHECK(kind_of([&] {
          tree_to_setsystem(make_structure(
              voc, {"d", "p", "q", "r"},
              {{"desc",
                {{"d", "d"}, {"p", "p"}, {"q", "q"}, {"r", "r"},
                 {"d", "p"}, {"d", "q"}, {"d", "r"}, {"p", "r"}, {"q", "r"}}}},
              {}));
        }) == ErrorKind::NotATree);
  // not transitive
  CHECK(kind_of([&] {
          tree_to_setsystem(make_structure(
              voc, {"a", "b", "c"},
              {{"desc",
                {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}}}},
              {}));
        }) == ErrorKind::NotATree);
  // missing desc
  CHECK(kind_of([&] {
          Vocabulary none;
          tree_to_setsystem(make_structure(none, {"a"}, {}, {}));
        }) == ErrorKind::NotATree);
}

TEST_CASE("rooted tree isomorphism distinguishes shape and labels") {
  RootedTree path;  // r - m - leaf(a)
  path.root = 0;
  path.children = {{1}, {2}, {}};
  path.labels = {"", "", "a"};
  RootedTree star;  // r - (a, b)
  star.root = 0;
  star.children = {{1, 2}, {}, {}};
  star.labels = {"", "a", "b"};
  CHECK(!rooted_tree_iso(path, star));
  RootedTree star2 = star;  // same shape, children listed in another order
  star2.children[0] = {2, 1};
  CHECK(rooted_tree_iso(star, star2));
  RootedTree relabel = star;
  relabel.labels = {"", "a", "c"};
  CHECK(!rooted_tree_iso(star, relabel));
  CHECK(rooted_tree_canon(star) == rooted_tree_canon(star2));
  CHECK(rooted_tree_canon(star) != rooted_tree_canon(relabel));
}
