#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamtrans/laminar.hpp"

using namespace lamtrans;

namespace {

SetSystem sys3() {
  return make_set_system({"a", "b", "c"},
                         {{"a", "b", "c"}, {"a", "b"}, {"a"}, {"b"}, {"c"}});
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

}  // namespace

TEST_CASE("laminarity check accepts and explains rejections") {
  CHECK(check_laminar(sys3()));
  std::string why;
  SetSystem missing_universe = make_set_system({"a", "b"}, {{"a"}, {"b"}});
  CHECK(!check_laminar(missing_universe, &why));
  CHECK(!why.empty());
  SetSystem crossing = make_set_system(
      {"a", "b", "c"}, {{"a", "b", "c"}, {"a"}, {"b"}, {"c"}, {"a", "b"}, {"b", "c"}});
  CHECK(!check_laminar(crossing, &why));
  CHECK(why.find("cross") != std::string::npos);
  SetSystem no_singleton =
      make_set_system({"a", "b"}, {{"a"}, {"a", "b"}});
  CHECK(!check_laminar(no_singleton, &why));
}

TEST_CASE("tree construction: breadth-first ids, depths, leaf map") {
  LaminarTree t = build_laminar_tree(sys3());
  REQUIRE(t.size() == 5);
  CHECK(t.nodes[0].parent == -1);
  CHECK(t.nodes[0].depth == 0);
  CHECK(t.elem_ids(t.nodes[1].elems) == std::vector<std::string>{"a", "b"});
  CHECK(t.elem_ids(t.nodes[2].elems) == std::vector<std::string>{"c"});
  CHECK(t.nodes[1].depth == 1);
  CHECK(t.nodes[2].depth == 1);
  CHECK(t.nodes[3].depth == 2);
  CHECK(t.nodes[4].depth == 2);
  CHECK(t.leaf_of[0] == 3);
  CHECK(t.leaf_of[1] == 4);
  CHECK(t.leaf_of[2] == 2);
  CHECK(t.node_with_elems(t.elems_from_ids({"a", "b"})) == 1);
  CHECK(t.node_with_elems(t.elems_from_ids({"b", "c"})) == -1);
  CHECK(kind_of([] {
          build_laminar_tree(make_set_system({"a", "b"}, {{"a"}, {"b"}}));
        }) == ErrorKind::NotLaminar);
}

TEST_CASE("tips and up-trees") {
  LaminarTree t = build_laminar_tree(sys3());
  TipResult r = tip_and_uptree(t, std::vector<std::string>{"a", "b"});
  CHECK(r.tip == 0);
  CHECK(r.uptree == std::vector<int>{0, 1, 3, 4});
  r = tip_and_uptree(t, std::vector<std::string>{"a"});
  CHECK(r.tip == 1);
  CHECK(r.uptree == std::vector<int>{1, 3});
  CHECK(kind_of([&] {
          tip_and_uptree(t, std::vector<std::string>{"a", "c"});
        }) == ErrorKind::TipUndefined);
}

TEST_CASE("branch classification") {
  LaminarTree t = build_laminar_tree(sys3());
  Bits all = t.elems_from_ids({"a", "b", "c"});
  CHECK(classify_branch(t, all, 0).kind == BranchKind::Fully);
  Bits ja = t.elems_from_ids({"a"});
  BranchClass c = classify_branch(t, ja, 0);
  CHECK(c.kind == BranchKind::Single);
  CHECK(c.branched_child == 1);
  Bits jc = t.elems_from_ids({"c"});
  CHECK(classify_branch(t, jc, 1).kind == BranchKind::Missed);
  CHECK(kind_of([&] { classify_branch(t, ja, 2); }) == ErrorKind::NotInnerNode);
}

TEST_CASE("thin partition on the three-leaf tree") {
  LaminarTree t = build_laminar_tree(sys3());
  ThinPartition tp = thin_partition(t);
  CHECK(tp.parts[0] == std::vector<int>{0});
  CHECK(tp.parts[4] == std::vector<int>{1});
  for (int j = 0; j < 16; ++j) {
    if (j != 0 && j != 4) CHECK(tp.parts[j].empty());
    CHECK(is_thin(t, tp.parts[j]));
  }
}

TEST_CASE("representative sets and trees") {
  LaminarTree t = build_laminar_tree(sys3());
  RepAssignment ra = build_representative_sets(t, {0});
  REQUIRE(ra.entries.size() == 1);
  CHECK(ra.entries[0].tree_nodes == std::vector<int>{0, 1, 3, 4});
  CHECK(t.elem_ids(ra.entries[0].rep_elems) == std::vector<std::string>{"a", "b"});
  CHECK(tip_and_uptree(t, ra.entries[0].rep_elems).tip == 0);
  CHECK(is_representative_tree(t, 0, ra.entries[0].tree_nodes));
  // keeping both children where one is required breaks the alternation
  CHECK(!is_representative_tree(t, 1, {1, 3, 4}));
  CHECK(kind_of([&] { is_representative_tree(t, 0, {0, 3}); }) ==
        ErrorKind::NotASubtree);
}

TEST_CASE("identifying colouring on the three-leaf tree") {
  LaminarTree t = build_laminar_tree(sys3());
  ThinPartition tp = thin_partition(t);
  IdentifyingColouring col = identifying_colouring(t, tp);
  CHECK(t.elem_ids(col.A[0]) == std::vector<std::string>{"a", "b"});
  CHECK(t.elem_ids(col.B[0]) == std::vector<std::string>{"a"});
  CHECK(t.elem_ids(col.A[4]) == std::vector<std::string>{"a"});
  CHECK(t.elem_ids(col.B[4]) == std::vector<std::string>{"a"});
  for (int j = 0; j < 16; ++j) {
    if (j != 0 && j != 4) {
      CHECK(col.A[j].empty());
      CHECK(col.B[j].empty());
    }
  }
}

TEST_CASE("single-node system") {
  LaminarTree t1 = build_laminar_tree(make_set_system({"a"}, {{"a"}}));
  CHECK(t1.size() == 1);
  CHECK(t1.is_leaf(0));
  ThinPartition tp = thin_partition(t1);
  for (const auto& part : tp.parts) CHECK(part.empty());
}

TEST_CASE("thinness rejects sibling pairs and leaves") {
  SetSystem sys = make_set_system(
      {"a", "b", "c", "d"},
      {{"a", "b", "c", "d"}, {"a", "b"}, {"c", "d"}, {"a"}, {"b"}, {"c"}, {"d"}});
  LaminarTree t4 = build_laminar_tree(sys);
  CHECK(!is_thin(t4, {1, 2}));
  CHECK(is_thin(t4, {1}));
  CHECK(kind_of([&] { is_thin(t4, {3}); }) == ErrorKind::ContainsLeaf);
}

TEST_CASE("caterpillar: nested nodes share a part, rep trees stay disjoint") {
  SetSystem sys = make_set_system(
      {"l1", "l2", "l3", "l4", "x", "y"},
      {{"l1", "l2", "l3", "l4", "x", "y"},
       {"l2", "l3", "l4", "x", "y"},
       {"l3", "l4", "x", "y"},
       {"l4", "x", "y"},
       {"x", "y"},
       {"l1"}, {"l2"}, {"l3"}, {"l4"}, {"x"}, {"y"}});
  LaminarTree cat = build_laminar_tree(sys);
  ThinPartition tp = thin_partition(cat);
  int deep = cat.node_with_elems(cat.elems_from_ids({"x", "y"}));
  REQUIRE(deep >= 0);
  CHECK(cat.nodes[deep].depth == 4);
  CHECK(tp.parts[0] == std::vector<int>{0, deep});
  CHECK(is_thin(cat, tp.parts[0]));
  RepAssignment ra = build_representative_sets(cat, tp.parts[0]);
  REQUIRE(ra.entries.size() == 2);
  std::vector<char> seen(cat.size(), 0);
  for (const auto& e : ra.entries) {
    for (int v : e.tree_nodes) {
      CHECK(seen[v] == 0);
      seen[v] = 1;
    }
    CHECK(is_representative_tree(cat, e.s, e.tree_nodes));
    CHECK(tip_and_uptree(cat, e.rep_elems).tip == e.s);
  }
}

TEST_CASE("set-system json round trip") {
  const std::string json = setsystem_to_json(sys3());
  SetSystem back = setsystem_from_json(json);
  CHECK(back == sys3());
  CHECK(setsystem_to_json(back) == json);
}

TEST_CASE("tree serialization renders every node") {
  LaminarTree t = build_laminar_tree(sys3());
  const std::string j = tree_to_json(t);
  for (const char* needle : {"\"id\"", "\"parent\"", "\"leaves\""}) {
    CHECK(j.find(needle) != std::string::npos);
  }
  const std::string d = tree_to_dot(t);
  CHECK(d.find("digraph") != std::string::npos);
  CHECK(d.find("{a,b}") != std::string::npos);  // inner nodes carry leafsets
}
