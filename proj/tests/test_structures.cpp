#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamtrans/structures.hpp"

using namespace lamtrans;

namespace {

Vocabulary voc1() {
  Vocabulary v;
  v.symbols = {{"E", SymbolKind::Relation, 2}, {"SET", SymbolKind::SetPredicate, 1}};
  return v;
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

TEST_CASE("construction canonicalizes and validates") {
  Structure s = make_structure(voc1(), {"b", "a", "c"},
                               {{"E", {{"c", "a"}, {"a", "b"}, {"a", "b"}}}},
                               {{"SET", {{"b", "a"}, {"c"}, {"a", "b"}}}});
  CHECK(s.universe == std::vector<std::string>{"a", "b", "c"});
  CHECK(s.relations.at("E") == std::vector<Tuple>{{"a", "b"}, {"c", "a"}});
  CHECK(s.set_predicates.at("SET") == std::vector<ElementSet>{{"a", "b"}, {"c"}});
  CHECK(s.has_element("a"));
  CHECK(!s.has_element("z"));

  // omitted interpretations default to empty
  Structure t = make_structure(voc1(), {"a"}, {}, {});
  CHECK(t.relations.at("E").empty());
  CHECK(t.set_predicates.at("SET").empty());
}

TEST_CASE("construction rejects bad inputs") {
  CHECK(kind_of([] { make_structure(voc1(), {}, {}, {}); }) == ErrorKind::EmptyUniverse);
  CHECK(kind_of([] {
          make_structure(voc1(), {"a"}, {{"F", {{"a", "a"}}}}, {});
        }) == ErrorKind::UnknownSymbol);
  CHECK(kind_of([] {
          make_structure(voc1(), {"a"}, {{"E", {{"a"}}}}, {});
        }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([] {
          make_structure(voc1(), {"a"}, {{"E", {{"a", "z"}}}}, {});
        }) == ErrorKind::ElementOutOfUniverse);
  CHECK(kind_of([] {
          make_structure(voc1(), {"a"}, {}, {{"SET", {{"z"}}}});
        }) == ErrorKind::ElementOutOfUniverse);
  CHECK(kind_of([] {
          // SET declared as a set predicate cannot be interpreted as a relation
          make_structure(voc1(), {"a"}, {{"SET", {{"a"}}}}, {});
        }) == ErrorKind::UnknownSymbol);
  Vocabulary dup;
  dup.symbols = {{"E", SymbolKind::Relation, 2}, {"E", SymbolKind::Relation, 1}};
  CHECK(kind_of([&] { make_structure(dup, {"a"}, {}, {}); }) == ErrorKind::ArityConflict);
}

TEST_CASE("union merges universes and shared symbols") {
  Vocabulary va;
  va.symbols = {{"P", SymbolKind::Relation, 1}};
  Vocabulary vb;
  vb.symbols = {{"P", SymbolKind::Relation, 1}, {"Q", SymbolKind::SetPredicate, 1}};
  Structure a = make_structure(va, {"x", "y"}, {{"P", {{"x"}}}}, {});
  Structure b = make_structure(vb, {"y", "z"}, {{"P", {{"z"}}}}, {{"Q", {{"y", "z"}}}});
  Structure u = structure_union(a, b);
  CHECK(u.universe == std::vector<std::string>{"x", "y", "z"});
  CHECK(u.relations.at("P") == std::vector<Tuple>{{"x"}, {"z"}});
  CHECK(u.set_predicates.at("Q") == std::vector<ElementSet>{{"y", "z"}});
  CHECK(u.vocabulary.symbols.size() == 2);

  // shared symbol with conflicting arity
  Vocabulary vc;
  vc.symbols = {{"P", SymbolKind::Relation, 2}};
  Structure c = make_structure(vc, {"x"}, {{"P", {{"x", "x"}}}}, {});
  CHECK(kind_of([&] { structure_union(a, c); }) == ErrorKind::ArityConflict);
}

TEST_CASE("json round trip is identity on canonical forms") {
  Structure s = make_structure(voc1(), {"b", "a"}, {{"E", {{"b", "a"}}}},
                               {{"SET", {{"a"}, {"a", "b"}}}});
  const std::string j = structure_to_json(s);
  Structure back = structure_from_json(j);
  CHECK(back == s);
  CHECK(structure_to_json(back) == j);

  // a second serialize-parse cycle stays byte-stable
  CHECK(structure_to_json(structure_from_json(structure_to_json(back))) == j);
}

TEST_CASE("sorted_unique") {
  CHECK(sorted_unique({"c", "a", "c", "b", "a"}) ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(sorted_unique({}).empty());
}
