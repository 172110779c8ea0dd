#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lamtrans/errors.hpp"

namespace lamtrans {

// Extended relational structures: a finite universe of opaque element ids,
// relation symbols interpreted by tuple sets, and set-predicate symbols
// interpreted by families of element subsets.  Everything is stored in a
// canonical sorted form so that equality and serialization are stable.

enum class SymbolKind { Relation, SetPredicate };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Relation;
  int arity = 1;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Vocabulary {
  std::vector<Symbol> symbols;  // sorted by name, names unique

  const Symbol* find(const std::string& name) const;
  bool has(const std::string& name) const { return find(name) != nullptr; }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

using Tuple = std::vector<std::string>;
using ElementSet = std::vector<std::string>;  // sorted element ids

struct Structure {
  Vocabulary vocabulary;
  std::vector<std::string> universe;  // sorted, nonempty
  std::map<std::string, std::vector<Tuple>> relations;
  std::map<std::string, std::vector<ElementSet>> set_predicates;

  bool has_element(const std::string& id) const;

  friend bool operator==(const Structure&, const Structure&) = default;
};

// Validates symbols, arities and element membership, sorts and deduplicates
// all interpretations.  Rejects an empty universe.  Interpretations for
// declared symbols may be omitted and default to empty.
Structure make_structure(Vocabulary voc, std::vector<std::string> universe,
                         std::map<std::string, std::vector<Tuple>> relations,
                         std::map<std::string, std::vector<ElementSet>> set_predicates);

// Disjoint-vocabulary parts keep their interpretation; shared symbols must
// agree on kind and arity (ArityConflict otherwise) and take the union of
// their interpretations.  Universes are merged.
Structure structure_union(const Structure& a, const Structure& b);

// Canonical JSON serialization.  parse(serialize(s)) == s, and serializing a
// parsed canonical document reproduces it byte for byte.
std::string structure_to_json(const Structure& s);
Structure structure_from_json(const std::string& text);

// Sorted-unique normalization helpers shared by the other modules.
std::vector<std::string> sorted_unique(std::vector<std::string> xs);

}  // namespace lamtrans
