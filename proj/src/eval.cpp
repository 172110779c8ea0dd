#include "lamtrans/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace lamtrans {

IndexedStructure::IndexedStructure(const Structure& s) : src_(&s), elems_(s.universe) {
  index_.reserve(elems_.size() * 2);
  for (int i = 0; i < int(elems_.size()); ++i) index_[elems_[i]] = i;

  for (const auto& [name, tuples] : s.relations) {
    const Symbol* sym = s.vocabulary.find(name);
    Relation rel;
    rel.arity = sym->arity;
    if (rel.arity == 1) rel.unary = Bits(elems_.size());
    for (const auto& t : tuples) {
      std::vector<int> idx;
      idx.reserve(t.size());
      for (const auto& e : t) idx.push_back(index_.at(e));
      if (rel.arity == 1)
        rel.unary.set(std::size_t(idx[0]));
      else if (rel.arity == 2)
        rel.binary.insert((std::uint64_t(std::uint32_t(idx[0])) << 32) | std::uint32_t(idx[1]));
      else
        rel.tuples.push_back(std::move(idx));
    }
    std::sort(rel.tuples.begin(), rel.tuples.end());
    rels_.emplace(name, std::move(rel));
  }
  for (const auto& [name, sets] : s.set_predicates) {
    Predicate pred;
    pred.members.reserve(sets.size());
    for (const auto& m : sets) pred.members.push_back(set_to_bits(m));
    std::sort(pred.members.begin(), pred.members.end(), Bits::canon_less);
    pred.lookup.insert(pred.members.begin(), pred.members.end());
    preds_.emplace(name, std::move(pred));
  }
}

int IndexedStructure::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

const IndexedStructure::Relation* IndexedStructure::relation(const std::string& name) const {
  auto it = rels_.find(name);
  return it == rels_.end() ? nullptr : &it->second;
}

const IndexedStructure::Predicate* IndexedStructure::predicate(const std::string& name) const {
  auto it = preds_.find(name);
  return it == preds_.end() ? nullptr : &it->second;
}

Bits IndexedStructure::set_to_bits(const std::vector<std::string>& ids) const {
  Bits b(elems_.size());
  for (const auto& id : ids) {
    int i = index_of(id);
    if (i < 0) fail(ErrorKind::ElementOutOfUniverse, "'" + id + "' not in universe");
    b.set(std::size_t(i));
  }
  return b;
}

std::vector<std::string> IndexedStructure::bits_to_ids(const Bits& b) const {
  std::vector<std::string> out;
  for (int i : b.indices()) out.push_back(elems_[std::size_t(i)]);
  return out;
}

Evaluator::Evaluator(const IndexedStructure& s, EvalOptions opts) : s_(s), opts_(opts) {
  memo_.reserve(1 << 12);
}

int Evaluator::lookup_elem(const Env& env, const std::string& v) const {
  for (auto it = env.elems.rbegin(); it != env.elems.rend(); ++it)
    if (*it->name == v) return it->value;
  fail(ErrorKind::UnboundVariable, "element variable '" + v + "'");
}

const Bits* Evaluator::lookup_set(const Env& env, const std::string& v) const {
  for (auto it = env.sets.rbegin(); it != env.sets.rend(); ++it)
    if (*it->name == v) return it->value;
  fail(ErrorKind::UnboundVariable, "set variable '" + v + "'");
}

namespace {

bool is_atom(FormulaKind k) {
  switch (k) {
    case FormulaKind::RelAtom:
    case FormulaKind::PredAtom:
    case FormulaKind::Member:
    case FormulaKind::ElemEq:
    case FormulaKind::SetEq:
    case FormulaKind::Subset:
      return true;
    default:
      return false;
  }
}

void collect_conjuncts(const Formula* f, std::vector<const Formula*>& out) {
  if (f->kind == FormulaKind::And) {
    for (const auto& c : f->children) collect_conjuncts(c.get(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

const Evaluator::NodeInfo& Evaluator::info(const Formula& f) {
  auto it = infos_.find(&f);
  if (it != infos_.end()) return it->second;

  NodeInfo ni;
  bool quant_set = f.kind == FormulaKind::ExistsSet || f.kind == FormulaKind::ForallSet;
  ni.memo = quant_set ||
            (!is_atom(f.kind) && f.free_elems.size() + f.free_sets.size() <= 2);

  if (quant_set && opts_.guarded) {
    // A quantifier range shrinks when every witness (for exists) or every
    // counterexample (for forall) provably satisfies a guard conjunct:
    //   - P(X) for a set predicate P restricts X to P's interpretation,
    //   - (forall x (implies (in x X) (rel A x))) restricts X to subsets of
    //     the unary relation A.
    // For forall the conjunct must sit in the antecedent of an implication.
    const Formula& body = *f.children[0];
    const Formula* positive = nullptr;
    if (f.kind == FormulaKind::ExistsSet)
      positive = &body;
    else if (body.kind == FormulaKind::Implies)
      positive = body.children[0].get();
    if (positive) {
      std::vector<const Formula*> cs;
      collect_conjuncts(positive, cs);
      for (const Formula* c : cs) {
        if (c->kind == FormulaKind::PredAtom && c->set_args[0] == f.bound) {
          if (const auto* p = s_.predicate(c->symbol)) {
            ni.guard = GuardKind::Family;
            ni.family = &p->members;
            break;
          }
        }
      }
      if (ni.guard == GuardKind::None) {
        for (const Formula* c : cs) {
          if (c->kind != FormulaKind::ForallElem) continue;
          const Formula& inner = *c->children[0];
          if (inner.kind != FormulaKind::Implies) continue;
          const Formula& ant = *inner.children[0];
          const Formula& con = *inner.children[1];
          if (ant.kind == FormulaKind::Member && ant.set_args[0] == f.bound &&
              ant.elem_args[0] == c->bound && con.kind == FormulaKind::RelAtom &&
              con.elem_args.size() == 1 && con.elem_args[0] == c->bound) {
            if (const auto* r = s_.relation(con.symbol); r && r->arity == 1) {
              ni.guard = GuardKind::SubsetOfUnary;
              ni.unary = &r->unary;
              break;
            }
          }
        }
      }
    }
  }
  return infos_.emplace(&f, ni).first->second;
}

bool Evaluator::build_key(const Formula& f, const Env& env, MemoKey& out) const {
  out.node = &f;
  std::size_t at = 0;
  for (const auto& v : f.free_elems) {
    if (at >= out.payload.size()) return false;
    out.payload[at++] = std::uint64_t(lookup_elem(env, v)) + 1;
  }
  for (const auto& v : f.free_sets) {
    const Bits* b = lookup_set(env, v);
    if (at + b->words() > out.payload.size()) return false;
    for (std::size_t w = 0; w < b->words(); ++w) out.payload[at++] = b->word(w);
  }
  out.len = std::uint8_t(at);
  return true;
}

bool Evaluator::ev(const Formula& f, Env& env) {
  switch (f.kind) {
    case FormulaKind::RelAtom: {
      const auto* rel = s_.relation(f.symbol);
      if (!rel) fail(ErrorKind::UnknownSymbol, "relation '" + f.symbol + "'");
      if (rel->arity != int(f.elem_args.size()))
        fail(ErrorKind::ArityMismatch, "relation '" + f.symbol + "' used with " +
                                           std::to_string(f.elem_args.size()) + " arguments");
      if (rel->arity == 1) return rel->unary.test(std::size_t(lookup_elem(env, f.elem_args[0])));
      if (rel->arity == 2) {
        std::uint64_t a = std::uint64_t(std::uint32_t(lookup_elem(env, f.elem_args[0])));
        std::uint64_t b = std::uint64_t(std::uint32_t(lookup_elem(env, f.elem_args[1])));
        return rel->binary.count((a << 32) | b) > 0;
      }
      std::vector<int> t;
      t.reserve(f.elem_args.size());
      for (const auto& v : f.elem_args) t.push_back(lookup_elem(env, v));
      return std::binary_search(rel->tuples.begin(), rel->tuples.end(), t);
    }
    case FormulaKind::PredAtom: {
      const auto* pred = s_.predicate(f.symbol);
      if (!pred) fail(ErrorKind::UnknownSymbol, "set predicate '" + f.symbol + "'");
      return pred->lookup.count(*lookup_set(env, f.set_args[0])) > 0;
    }
    case FormulaKind::Member:
      return lookup_set(env, f.set_args[0])->test(std::size_t(lookup_elem(env, f.elem_args[0])));
    case FormulaKind::ElemEq:
      return lookup_elem(env, f.elem_args[0]) == lookup_elem(env, f.elem_args[1]);
    case FormulaKind::SetEq:
      return *lookup_set(env, f.set_args[0]) == *lookup_set(env, f.set_args[1]);
    case FormulaKind::Subset:
      return lookup_set(env, f.set_args[0])->subset_of(*lookup_set(env, f.set_args[1]));
    default:
      break;
  }

  const NodeInfo& ni = info(f);
  MemoKey key;
  bool keyed = ni.memo && build_key(f, env, key);
  if (keyed) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  bool value = false;
  switch (f.kind) {
    case FormulaKind::Not:
      value = !ev(*f.children[0], env);
      break;
    case FormulaKind::And: {
      value = true;
      for (const auto& c : f.children)
        if (!ev(*c, env)) {
          value = false;
          break;
        }
      break;
    }
    case FormulaKind::Or: {
      value = false;
      for (const auto& c : f.children)
        if (ev(*c, env)) {
          value = true;
          break;
        }
      break;
    }
    case FormulaKind::Implies:
      value = !ev(*f.children[0], env) || ev(*f.children[1], env);
      break;
    case FormulaKind::Iff:
      value = ev(*f.children[0], env) == ev(*f.children[1], env);
      break;
    case FormulaKind::ExistsElem:
    case FormulaKind::ForallElem: {
      bool exists = f.kind == FormulaKind::ExistsElem;
      const Formula& body = *f.children[0];
      env.elems.push_back({&f.bound, 0});
      value = !exists;
      for (int i = 0; i < s_.size(); ++i) {
        env.elems.back().value = i;
        bool v = ev(body, env);
        if (v == exists) {
          value = exists;
          break;
        }
      }
      env.elems.pop_back();
      break;
    }
    case FormulaKind::ExistsSet:
    case FormulaKind::ForallSet:
      value = ev_quant_set(f, env);
      break;
    default:
      break;
  }

  if (keyed) memo_.emplace(key, value);
  return value;
}

bool Evaluator::ev_quant_set(const Formula& f, Env& env) {
  bool exists = f.kind == FormulaKind::ExistsSet;
  const Formula& body = *f.children[0];
  const NodeInfo& ni = info(f);

  env.sets.push_back({&f.bound, nullptr});
  bool result = !exists;
  auto try_candidate = [&](const Bits& cand) {
    env.sets.back().value = &cand;
    bool v = ev(body, env);
    if (v == exists) {
      result = exists;
      return true;
    }
    return false;
  };

  if (ni.guard == GuardKind::Family) {
    for (const Bits& cand : *ni.family)
      if (try_candidate(cand)) break;
  } else {
    std::vector<int> base;
    if (ni.guard == GuardKind::SubsetOfUnary) {
      base = ni.unary->indices();
    } else {
      base.resize(std::size_t(s_.size()));
      std::iota(base.begin(), base.end(), 0);
    }
    if (base.size() > opts_.max_subset_universe)
      fail(ErrorKind::ResourceLimitExceeded,
           "set quantifier over " + std::to_string(base.size()) + " elements exceeds cap " +
               std::to_string(opts_.max_subset_universe));

    // All subsets of the base, by cardinality then lexicographically.
    Bits cand(std::size_t(s_.size()));
    std::size_t m = base.size();
    std::vector<std::size_t> c;
    bool stopped = false;
    for (std::size_t k = 0; k <= m && !stopped; ++k) {
      c.resize(k);
      std::iota(c.begin(), c.end(), std::size_t(0));
      while (true) {
        cand.clear();
        for (auto p : c) cand.set(std::size_t(base[p]));
        if (try_candidate(cand)) {
          stopped = true;
          break;
        }
        std::size_t i = k;
        while (i > 0 && c[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
      }
    }
  }
  env.sets.pop_back();
  return result;
}

bool Evaluator::eval(const FormulaPtr& f, const Assignment& a) {
  Env env;
  std::vector<Bits> owned;
  owned.reserve(f->free_sets.size());
  for (const auto& v : f->free_elems) {
    auto it = a.elems.find(v);
    if (it == a.elems.end())
      fail(ErrorKind::UnboundVariable, "element variable '" + v + "' has no binding");
    int idx = s_.index_of(it->second);
    if (idx < 0) fail(ErrorKind::ElementOutOfUniverse, "'" + it->second + "'");
    env.elems.push_back({&it->first, idx});
  }
  for (const auto& v : f->free_sets) {
    auto it = a.sets.find(v);
    if (it == a.sets.end())
      fail(ErrorKind::UnboundVariable, "set variable '" + v + "' has no binding");
    owned.push_back(s_.set_to_bits(it->second));
  }
  std::size_t i = 0;
  for (const auto& v : f->free_sets) {
    auto it = a.sets.find(v);
    env.sets.push_back({&it->first, &owned[i++]});
  }
  return ev(*f, env);
}

bool Evaluator::eval_indexed(const FormulaPtr& f, const Binding& b) {
  Env env;
  for (const auto& [name, value] : b.elems) env.elems.push_back({&name, value});
  for (const auto& [name, value] : b.sets) env.sets.push_back({&name, &value});
  return ev(*f, env);
}

bool eval(const Structure& s, const FormulaPtr& f, const Assignment& a, EvalOptions opts) {
  IndexedStructure idx(s);
  Evaluator ev(idx, opts);
  return ev.eval(f, a);
}

EvalOptions default_eval_options() {
  EvalOptions opts;
  if (const char* env = std::getenv("LAMTRANS_MAX_SUBSET_UNIVERSE")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) opts.max_subset_universe = std::size_t(v);
  }
  return opts;
}

}  // namespace lamtrans
