#include "lamtrans/structures.hpp"

#include <algorithm>

#include <json.hpp>

namespace lamtrans {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ElementOutOfUniverse: return "ElementOutOfUniverse";
    case ErrorKind::EmptyUniverse: return "EmptyUniverse";
    case ErrorKind::ArityConflict: return "ArityConflict";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ResourceLimitExceeded: return "ResourceLimitExceeded";
    case ErrorKind::NotLaminar: return "NotLaminar";
    case ErrorKind::TipUndefined: return "TipUndefined";
    case ErrorKind::NotInnerNode: return "NotInnerNode";
    case ErrorKind::NotASubtree: return "NotASubtree";
    case ErrorKind::NotThin: return "NotThin";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::FilterRejectedWitness: return "FilterRejectedWitness";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::ContainsLeaf: return "ContainsLeaf";
    case ErrorKind::UnknownPredicateName: return "UnknownPredicateName";
    case ErrorKind::VocabularyMismatch: return "VocabularyMismatch";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Error";
}

std::vector<std::string> sorted_unique(std::vector<std::string> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

const Symbol* Vocabulary::find(const std::string& name) const {
  for (const auto& s : symbols)
    if (s.name == name) return &s;
  return nullptr;
}

bool Structure::has_element(const std::string& id) const {
  return std::binary_search(universe.begin(), universe.end(), id);
}

namespace {

Vocabulary normalize_vocabulary(Vocabulary voc) {
  std::sort(voc.symbols.begin(), voc.symbols.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  for (std::size_t i = 0; i + 1 < voc.symbols.size(); ++i)
    if (voc.symbols[i].name == voc.symbols[i + 1].name)
      fail(ErrorKind::ArityConflict, "symbol '" + voc.symbols[i].name + "' declared twice");
  for (const auto& s : voc.symbols) {
    if (s.arity < 1)
      fail(ErrorKind::ArityMismatch, "symbol '" + s.name + "' must have arity >= 1");
    if (s.kind == SymbolKind::SetPredicate && s.arity != 1)
      fail(ErrorKind::ArityMismatch,
           "set predicate '" + s.name + "' must have arity 1");
  }
  return voc;
}

}  // namespace

Structure make_structure(Vocabulary voc, std::vector<std::string> universe,
                         std::map<std::string, std::vector<Tuple>> relations,
                         std::map<std::string, std::vector<ElementSet>> set_predicates) {
  Structure s;
  s.vocabulary = normalize_vocabulary(std::move(voc));
  s.universe = sorted_unique(std::move(universe));
  if (s.universe.empty()) fail(ErrorKind::EmptyUniverse, "structures need a nonempty universe");

  auto check_element = [&](const std::string& id, const std::string& where) {
    if (!s.has_element(id))
      fail(ErrorKind::ElementOutOfUniverse, "'" + id + "' in " + where);
  };

  for (auto& [name, tuples] : relations) {
    const Symbol* sym = s.vocabulary.find(name);
    if (!sym || sym->kind != SymbolKind::Relation)
      fail(ErrorKind::UnknownSymbol, "relation '" + name + "' not declared");
    for (auto& t : tuples) {
      if (int(t.size()) != sym->arity)
        fail(ErrorKind::ArityMismatch, "tuple of length " + std::to_string(t.size()) +
                                           " for '" + name + "'");
      for (auto& e : t) check_element(e, "relation '" + name + "'");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    s.relations[name] = std::move(tuples);
  }
  for (auto& [name, sets] : set_predicates) {
    const Symbol* sym = s.vocabulary.find(name);
    if (!sym || sym->kind != SymbolKind::SetPredicate)
      fail(ErrorKind::UnknownSymbol, "set predicate '" + name + "' not declared");
    for (auto& m : sets) {
      m = sorted_unique(std::move(m));
      for (auto& e : m) check_element(e, "set predicate '" + name + "'");
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    s.set_predicates[name] = std::move(sets);
  }
  // Every declared symbol gets an interpretation, possibly empty.
  for (const auto& sym : s.vocabulary.symbols) {
    if (sym.kind == SymbolKind::Relation)
      s.relations.try_emplace(sym.name);
    else
      s.set_predicates.try_emplace(sym.name);
  }
  return s;
}

Structure structure_union(const Structure& a, const Structure& b) {
  Vocabulary voc = a.vocabulary;
  for (const auto& sym : b.vocabulary.symbols) {
    const Symbol* existing = voc.find(sym.name);
    if (!existing) {
      voc.symbols.push_back(sym);
    } else if (existing->kind != sym.kind || existing->arity != sym.arity) {
      fail(ErrorKind::ArityConflict, "shared symbol '" + sym.name + "' disagrees");
    }
  }

  std::vector<std::string> universe = a.universe;
  universe.insert(universe.end(), b.universe.begin(), b.universe.end());

  std::map<std::string, std::vector<Tuple>> rels = a.relations;
  for (const auto& [name, tuples] : b.relations) {
    auto& dst = rels[name];
    dst.insert(dst.end(), tuples.begin(), tuples.end());
  }
  std::map<std::string, std::vector<ElementSet>> preds = a.set_predicates;
  for (const auto& [name, sets] : b.set_predicates) {
    auto& dst = preds[name];
    dst.insert(dst.end(), sets.begin(), sets.end());
  }
  return make_structure(std::move(voc), std::move(universe), std::move(rels), std::move(preds));
}

namespace {

using Json = nlohmann::ordered_json;

Json element_array(const std::vector<std::string>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

std::vector<std::string> parse_string_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::SyntaxError, where + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail(ErrorKind::SyntaxError, where + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

std::string structure_to_json(const Structure& s) {
  Json j;
  Json voc = Json::array();
  for (const auto& sym : s.vocabulary.symbols) {
    Json e;
    e["name"] = sym.name;
    e["kind"] = sym.kind == SymbolKind::Relation ? "relation" : "setpred";
    e["arity"] = sym.arity;
    voc.push_back(e);
  }
  j["vocabulary"] = voc;
  j["universe"] = element_array(s.universe);
  Json rels = Json::object();
  for (const auto& [name, tuples] : s.relations) {
    Json a = Json::array();
    for (const auto& t : tuples) a.push_back(element_array(t));
    rels[name] = a;
  }
  j["relations"] = rels;
  Json preds = Json::object();
  for (const auto& [name, sets] : s.set_predicates) {
    Json a = Json::array();
    for (const auto& m : sets) a.push_back(element_array(m));
    preds[name] = a;
  }
  j["setPredicates"] = preds;
  return j.dump(2) + "\n";
}

Structure structure_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::SyntaxError, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::SyntaxError, "structure document must be an object");

  Vocabulary voc;
  if (!j.contains("vocabulary")) fail(ErrorKind::SyntaxError, "missing 'vocabulary'");
  for (const auto& e : j["vocabulary"]) {
    Symbol sym;
    sym.name = e.at("name").get<std::string>();
    std::string kind = e.at("kind").get<std::string>();
    if (kind == "relation")
      sym.kind = SymbolKind::Relation;
    else if (kind == "setpred")
      sym.kind = SymbolKind::SetPredicate;
    else
      fail(ErrorKind::SyntaxError, "symbol kind must be 'relation' or 'setpred'");
    sym.arity = e.at("arity").get<int>();
    voc.symbols.push_back(sym);
  }

  std::vector<std::string> universe = parse_string_array(j.at("universe"), "universe");

  std::map<std::string, std::vector<Tuple>> rels;
  if (j.contains("relations"))
    for (const auto& [name, arr] : j["relations"].items()) {
      std::vector<Tuple> tuples;
      for (const auto& t : arr) tuples.push_back(parse_string_array(t, "relation tuple"));
      rels[name] = std::move(tuples);
    }
  std::map<std::string, std::vector<ElementSet>> preds;
  if (j.contains("setPredicates"))
    for (const auto& [name, arr] : j["setPredicates"].items()) {
      std::vector<ElementSet> sets;
      for (const auto& m : arr) sets.push_back(parse_string_array(m, "set member"));
      preds[name] = std::move(sets);
    }
  return make_structure(std::move(voc), std::move(universe), std::move(rels), std::move(preds));
}

}  // namespace lamtrans
