#include "lamtrans/formulas.hpp"

#include <algorithm>
#include <cctype>

namespace lamtrans {
namespace {

using F = FormulaPtr;
using V = std::vector<FormulaPtr>;

// ---------------------------------------------------------------------------
// Name hygiene for caller-facing builders.  Internally bound variables are
// always q/Q-prefixed; caller-supplied free variables must stay out of that
// namespace so instantiating a formula at fresh names can never capture.

void want_free_set_name(const std::string& v) {
  if (v.empty() || !is_set_var(v)) {
    fail(ErrorKind::UsageError, "expected a set variable name, got '" + v + "'");
  }
  if (v[0] == 'Q') {
    fail(ErrorKind::UsageError,
         "free set variable '" + v + "' uses the reserved 'Q' prefix");
  }
}

void want_free_elem_name(const std::string& v) {
  if (v.empty() || !is_elem_var(v)) {
    fail(ErrorKind::UsageError, "expected an element variable name, got '" + v + "'");
  }
  if (v[0] == 'q') {
    fail(ErrorKind::UsageError,
         "free element variable '" + v + "' uses the reserved 'q' prefix");
  }
}

const char kSet[] = "SET";
const char kDesc[] = "desc";

// ---------------------------------------------------------------------------
// Derived predicates over {SET}.

F build_upper_root(const std::string& X) {
  return f_and({f_pred(kSet, X), f_forall("qy", f_in("qy", X))});
}

F build_upper_leaf(const std::string& X) {
  return f_and({f_pred(kSet, X),
                f_exists("qy", f_and({f_in("qy", X),
                                      f_forall("qz", f_implies(f_in("qz", X),
                                                               f_eq("qz", "qy")))}))});
}

F build_upper_leaf_colour(const std::string& colour, const std::string& X) {
  return f_and({build_upper_leaf(X),
                f_exists("qy", f_and({f_in("qy", X), f_rel(colour, {"qy"})}))});
}

// First argument is the descendant: X's node lies in the subtree of Y's node.
F build_upper_desc(const std::string& X, const std::string& Y) {
  return f_and({f_pred(kSet, X), f_pred(kSet, Y), f_subset(X, Y)});
}

F build_upper_pdesc(const std::string& X, const std::string& Y) {
  return f_and({build_upper_desc(X, Y), f_not(f_seteq(X, Y))});
}

F build_upper_anc(const std::string& X, const std::string& Y) {
  return f_and({f_pred(kSet, X), f_pred(kSet, Y), f_subset(Y, X)});
}

// X is a child of Y: X is a proper subset of Y with no family set strictly
// between them.
F build_upper_child(const std::string& X, const std::string& Y) {
  return f_and(
      {f_pred(kSet, X), f_pred(kSet, Y), f_subset(X, Y), f_not(f_seteq(X, Y)),
       f_forall_set(
           "QB",
           f_implies(f_and({f_pred(kSet, "QB"), f_subset(X, "QB"), f_subset("QB", Y)}),
                     f_or({f_seteq("QB", X), f_seteq("QB", Y)})))});
}

// ---------------------------------------------------------------------------
// Derived predicates over {desc} (element variables).

F build_lower_root(const std::string& x) {
  return f_forall("qy", f_implies(f_rel(kDesc, {x, "qy"}), f_eq("qy", x)));
}

F build_lower_leaf(const std::string& x) {
  return f_forall("qy", f_implies(f_rel(kDesc, {"qy", x}), f_eq("qy", x)));
}

// x is a child of y: a proper descendant with nothing strictly between.
F build_lower_child(const std::string& x, const std::string& y) {
  return f_and(
      {f_rel(kDesc, {x, y}), f_not(f_eq(x, y)),
       f_forall("qb", f_implies(f_and({f_rel(kDesc, {x, "qb"}), f_rel(kDesc, {"qb", y})}),
                                f_or({f_eq("qb", x), f_eq("qb", y)})))});
}

// ---------------------------------------------------------------------------
// Branch predicates.  The generic builder tests branching of the inner node
// X against the elements satisfying `hit`, a callback producing the atom
// "element e is selected".  The public colour form uses a unary relation
// atom; the representative machinery instantiates membership in its
// candidate set variable instead.

using HitAtom = std::function<F(const std::string& elem)>;

F hit_inside(const std::string& child_set, const std::string& elem_bound,
             const HitAtom& hit) {
  return f_exists(elem_bound, f_and({f_in(elem_bound, child_set), hit(elem_bound)}));
}

F build_fully(const std::string& X, const HitAtom& hit) {
  return f_and({f_pred(kSet, X), f_not(build_upper_leaf(X)),
                f_forall_set("QW", f_implies(build_upper_child("QW", X),
                                             hit_inside("QW", "qw", hit)))});
}

F build_single(const std::string& X, const HitAtom& hit) {
  return f_and(
      {f_pred(kSet, X), f_not(build_upper_leaf(X)),
       f_exists_set(
           "QW",
           f_and({build_upper_child("QW", X), hit_inside("QW", "qw", hit),
                  f_forall_set("QV",
                               f_implies(f_and({build_upper_child("QV", X),
                                                hit_inside("QV", "qv", hit)}),
                                         f_seteq("QV", "QW")))}))});
}

F build_missed(const std::string& X, const HitAtom& hit) {
  return f_and({f_pred(kSet, X), f_not(build_upper_leaf(X)),
                f_forall("qm", f_implies(f_in("qm", X), f_not(hit("qm"))))});
}

HitAtom colour_hit(const std::string& colour) {
  return [colour](const std::string& e) { return f_rel(colour, {e}); };
}

HitAtom member_hit(const std::string& R) {
  return [R](const std::string& e) { return f_in(e, R); };
}

// Leaf node whose element is selected.
F build_leaf_hit(const std::string& Z, const HitAtom& hit) {
  return f_and({build_upper_leaf(Z),
                f_exists("qy", f_and({f_in("qy", Z), hit("qy")}))});
}

// Every element under Z is unselected; covers both inner nodes missed by the
// selection and leaves whose element is unselected.
F build_avoids(const std::string& Z, const std::string& R) {
  return f_forall("qa", f_implies(f_in("qa", Z), f_not(f_in("qa", R))));
}

// ---------------------------------------------------------------------------
// Representative-set predicate.
//
// REP(R, X) holds when R could be the representative set assigned to the
// node of X: (i) R is inside the colour, (ii) X has a unique proper
// descendant, necessarily a child, spanning R, and walking down from X the
// selection alternates correctly: (iii) every fully branched node has only
// single-branched or selected-leaf children, and (iv) every single-branched
// node has exactly one child that is fully branched or a selected leaf
// while every other child contains no selected element.
//
// Branch conditions (iii)/(iv) test branching by R itself, and their
// descendant guards include X.  The uniqueness quantifier in (ii) ranges
// over proper descendants only; with a reflexive range (ii) would force the
// child of X spanning R to equal X itself and the predicate would be
// identically false.

F build_rep(const std::string& colour, const std::string& R, const std::string& X) {
  HitAtom hit = member_hit(R);
  F in_colour = f_forall("qi", f_implies(f_in("qi", R), f_rel(colour, {"qi"})));
  F tip = f_exists_set(
      "QYr",
      f_and({build_upper_child("QYr", X), f_subset(R, "QYr"),
             f_forall_set("QUr",
                          f_implies(f_and({build_upper_pdesc("QUr", X), f_subset(R, "QUr")}),
                                    f_seteq("QUr", "QYr")))}));
  F fully_rule = f_forall_set(
      "QYr",
      f_implies(f_and({build_upper_desc("QYr", X), build_fully("QYr", hit)}),
                f_forall_set("QZr", f_implies(build_upper_child("QZr", "QYr"),
                                              f_or({build_leaf_hit("QZr", hit),
                                                    build_single("QZr", hit)})))));
  F single_rule = f_forall_set(
      "QYr",
      f_implies(
          f_and({build_upper_desc("QYr", X), build_single("QYr", hit)}),
          f_exists_set(
              "QZr",
              f_and({build_upper_child("QZr", "QYr"),
                     f_or({build_leaf_hit("QZr", hit), build_fully("QZr", hit)}),
                     f_forall_set("QTr",
                                  f_implies(f_and({build_upper_child("QTr", "QYr"),
                                                   f_not(f_seteq("QTr", "QZr"))}),
                                            build_avoids("QTr", R)))}))));
  return f_and({f_pred(kSet, X), in_colour, tip, fully_rule, single_rule});
}

// REP*(R, X) additionally requires maximality: no superset of R may satisfy
// REP at X or at any set containing X.
F build_rep_star(const std::string& colour, const std::string& R,
                 const std::string& X) {
  F maximal = f_forall_set(
      "QXs",
      f_implies(build_upper_anc("QXs", X),
                f_forall_set("QRs",
                             f_implies(f_and({f_subset(R, "QRs"),
                                              build_rep(colour, "QRs", "QXs")}),
                                       f_and({f_seteq("QRs", R), f_seteq("QXs", X)})))));
  return f_and({build_rep(colour, R, X), maximal});
}

// ---------------------------------------------------------------------------
// Counting formulas over {desc}.

F build_countkids(int count, const std::string& v, const std::string& S) {
  F is_kid = f_and({f_in("qx", S), build_lower_child("qx", v)});
  if (count == 0) {
    return f_forall("qx", f_not(is_kid));
  }
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(count));
  for (int i = 1; i <= count; ++i) names.push_back("qc" + std::to_string(i));
  V parts;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      parts.push_back(f_not(f_eq(names[static_cast<size_t>(i)],
                                 names[static_cast<size_t>(j)])));
    }
  }
  V alts;
  for (const auto& n : names) alts.push_back(f_eq("qx", n));
  parts.push_back(f_forall("qx", f_iff(is_kid, f_or(std::move(alts)))));
  F body = parts.size() == 1 ? parts[0] : f_and(std::move(parts));
  for (int i = count - 1; i >= 0; --i) {
    body = f_exists(names[static_cast<size_t>(i)], std::move(body));
  }
  return body;
}

F build_oddkids(int max_arity, const std::string& v, const std::string& S) {
  V alts;
  for (int l = 1; l <= max_arity; l += 2) alts.push_back(build_countkids(l, v, S));
  return alts.size() == 1 ? alts[0] : f_or(std::move(alts));
}

// X (a set of leaves) has even cardinality, assuming every node has at most
// max_arity children.  Witness set: a node is selected iff the number of
// selected leaves below it is odd; the root must end up unselected.
F build_evenleaf(int max_arity, const std::string& X) {
  F on_leaves = f_forall(
      "ql", f_implies(build_lower_leaf("ql"), f_iff(f_in("ql", "QS"), f_in("ql", X))));
  F on_inner = f_forall(
      "qn", f_implies(f_not(build_lower_leaf("qn")),
                      f_iff(f_in("qn", "QS"), build_oddkids(max_arity, "qn", "QS"))));
  F on_root = f_forall("qr", f_implies(build_lower_root("qr"), f_not(f_in("qr", "QS"))));
  return f_exists_set("QS", f_and({on_leaves, on_inner, on_root}));
}

// ---------------------------------------------------------------------------
// Laminarity sentence over {SET}.

F build_laminarity(bool corrected) {
  if (corrected) {
    F has_universe =
        f_exists_set("QU", f_and({f_pred(kSet, "QU"), f_forall("qx", f_in("qx", "QU"))}));
    F has_singletons = f_forall(
        "qx", f_exists_set("QS", f_and({f_pred(kSet, "QS"),
                                        f_forall("qy", f_iff(f_in("qy", "QS"),
                                                             f_eq("qy", "qx")))})));
    F overlap_free = f_forall_set(
        "QF",
        f_implies(f_pred(kSet, "QF"),
                  f_forall_set(
                      "QG",
                      f_implies(f_pred(kSet, "QG"),
                                f_or({f_forall("qz", f_not(f_and({f_in("qz", "QF"),
                                                                  f_in("qz", "QG")}))),
                                      f_subset("QF", "QG"), f_subset("QG", "QF")})))));
    return f_and({has_universe, has_singletons, overlap_free});
  }
  // Published rendering, reproduced connective-for-connective: the three
  // clauses are joined by disjunction and the first two tuck the SET guard
  // inside the wrong scope, so this sentence is weaker than the corrected
  // one (it accepts some non-laminar families).
  F clause_universe =
      f_exists_set("QU", f_forall("qx", f_or({f_in("qx", "QU"), f_pred(kSet, "QU")})));
  F clause_singletons = f_forall(
      "qx", f_exists_set("QS", f_forall("qy", f_or({f_pred(kSet, "QS"),
                                                    f_iff(f_in("qy", "QS"),
                                                          f_eq("qy", "qx"))}))));
  F clause_overlap = f_forall_set(
      "QF",
      f_forall_set(
          "QG",
          f_implies(f_and({f_pred(kSet, "QF"), f_pred(kSet, "QG")}),
                    f_or({f_forall("qz", f_not(f_and({f_in("qz", "QF"), f_in("qz", "QG")}))),
                          f_subset("QF", "QG"), f_subset("QG", "QF")}))));
  return f_or({clause_universe, clause_singletons, clause_overlap});
}

std::string branch_kind_key(BranchKind kind) {
  switch (kind) {
    case BranchKind::Fully: return "fully";
    case BranchKind::Single: return "single";
    case BranchKind::Missed: return "missed";
    case BranchKind::Partial: return "partial";
  }
  fail(ErrorKind::UsageError, "invalid branch kind");
}

}  // namespace

// ---------------------------------------------------------------------------

FormulaLibrary::FormulaLibrary(FormulaLibraryConfig config) : config_(config) {
  if (config_.part_count < 1) {
    fail(ErrorKind::RangeError, "part count must be at least 1, got " +
                                    std::to_string(config_.part_count));
  }
}

std::string FormulaLibrary::colour_a(int i) const {
  if (i < 1 || i > config_.part_count) {
    fail(ErrorKind::IndexOutOfRange,
         "colour index " + std::to_string(i) + " outside 1.." +
             std::to_string(config_.part_count));
  }
  return "A" + std::to_string(i);
}

std::string FormulaLibrary::colour_b(int i) const {
  if (i < 1 || i > config_.part_count) {
    fail(ErrorKind::IndexOutOfRange,
         "colour index " + std::to_string(i) + " outside 1.." +
             std::to_string(config_.part_count));
  }
  return "B" + std::to_string(i);
}

std::string FormulaLibrary::copy_name(int i) const {
  if (i < 0 || i > config_.part_count) {
    fail(ErrorKind::IndexOutOfRange,
         "copy index " + std::to_string(i) + " outside 0.." +
             std::to_string(config_.part_count));
  }
  return "copy" + std::to_string(i);
}

Vocabulary FormulaLibrary::base_vocabulary() const {
  Vocabulary voc;
  voc.symbols.push_back({kSet, SymbolKind::SetPredicate, 1});
  return voc;
}

Vocabulary FormulaLibrary::coloured_vocabulary() const {
  std::vector<Symbol> symbols;
  symbols.push_back({kSet, SymbolKind::SetPredicate, 1});
  for (int i = 1; i <= config_.part_count; ++i) {
    symbols.push_back({colour_a(i), SymbolKind::Relation, 1});
    symbols.push_back({colour_b(i), SymbolKind::Relation, 1});
  }
  std::sort(symbols.begin(), symbols.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  return Vocabulary{std::move(symbols)};
}

Vocabulary FormulaLibrary::copied_vocabulary() const {
  Vocabulary voc = coloured_vocabulary();
  for (int i = 0; i <= config_.part_count; ++i) {
    voc.symbols.push_back({copy_name(i), SymbolKind::Relation, 2});
  }
  std::sort(voc.symbols.begin(), voc.symbols.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  return voc;
}

Vocabulary FormulaLibrary::tree_vocabulary() const {
  Vocabulary voc;
  voc.symbols.push_back({kDesc, SymbolKind::Relation, 2});
  return voc;
}

Vocabulary FormulaLibrary::overlay_vocabulary() const {
  Vocabulary voc;
  voc.symbols.push_back({kSet, SymbolKind::SetPredicate, 1});
  voc.symbols.push_back({kDesc, SymbolKind::Relation, 2});
  std::sort(voc.symbols.begin(), voc.symbols.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  return voc;
}

FormulaPtr FormulaLibrary::memo(const std::string& key,
                                const std::function<FormulaPtr()>& build) const {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FormulaPtr f = build();
  cache_.emplace(key, f);
  return f;
}

FormulaPtr FormulaLibrary::derived_predicate(const std::string& name,
                                             const std::string& colour) const {
  bool lower = !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
  bool binary = name == "DESC" || name == "ANC" || name == "PARENT" ||
                name == "CHILD" || name == "child";
  std::vector<std::string> args;
  if (lower) {
    args = binary ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x"};
  } else {
    args = binary ? std::vector<std::string>{"X", "Y"} : std::vector<std::string>{"X"};
  }
  return derived_predicate_named(name, args, colour);
}

FormulaPtr FormulaLibrary::derived_predicate_named(
    const std::string& name, const std::vector<std::string>& args,
    const std::string& colour) const {
  auto want_args = [&](size_t n, bool set_vars) {
    if (args.size() != n) {
      fail(ErrorKind::UsageError,
           name + " expects " + std::to_string(n) + " variable name(s), got " +
               std::to_string(args.size()));
    }
    for (const auto& a : args) {
      if (set_vars) {
        want_free_set_name(a);
      } else {
        want_free_elem_name(a);
      }
    }
  };
  std::string key = "dp\x1f" + name + "\x1f" + colour;
  for (const auto& a : args) key += "\x1f" + a;

  if (name == "ROOT") {
    want_args(1, true);
    return memo(key, [&] { return build_upper_root(args[0]); });
  }
  if (name == "LEAF") {
    want_args(1, true);
    return memo(key, [&] { return build_upper_leaf(args[0]); });
  }
  if (name == "LEAF_A") {
    want_args(1, true);
    if (colour.empty()) {
      fail(ErrorKind::UsageError, "LEAF_A requires a colour predicate name");
    }
    return memo(key, [&] { return build_upper_leaf_colour(colour, args[0]); });
  }
  if (name == "DESC") {
    want_args(2, true);
    return memo(key, [&] { return build_upper_desc(args[0], args[1]); });
  }
  if (name == "ANC") {
    want_args(2, true);
    return memo(key, [&] { return build_upper_anc(args[0], args[1]); });
  }
  if (name == "CHILD") {
    want_args(2, true);
    return memo(key, [&] { return build_upper_child(args[0], args[1]); });
  }
  if (name == "PARENT") {
    want_args(2, true);
    // X is the parent of Y exactly when Y is a child of X.
    return memo(key, [&] { return build_upper_child(args[1], args[0]); });
  }
  if (name == "root") {
    want_args(1, false);
    return memo(key, [&] { return build_lower_root(args[0]); });
  }
  if (name == "leaf") {
    want_args(1, false);
    return memo(key, [&] { return build_lower_leaf(args[0]); });
  }
  if (name == "child") {
    want_args(2, false);
    return memo(key, [&] { return build_lower_child(args[0], args[1]); });
  }
  fail(ErrorKind::UnknownPredicateName, "no derived predicate named '" + name + "'");
}

FormulaPtr FormulaLibrary::laminarity_sentence(bool corrected) const {
  std::string key = corrected ? "lam\x1f+" : "lam\x1f-";
  return memo(key, [&] { return build_laminarity(corrected); });
}

FormulaPtr FormulaLibrary::branch_formula(BranchKind kind,
                                          const std::string& colour) const {
  return branch_formula_named(kind, colour, "X");
}

FormulaPtr FormulaLibrary::branch_formula_named(BranchKind kind,
                                                const std::string& colour,
                                                const std::string& arg) const {
  want_free_set_name(arg);
  if (colour.empty()) {
    fail(ErrorKind::UsageError, "branch formula requires a colour predicate name");
  }
  if (kind == BranchKind::Partial) {
    fail(ErrorKind::UsageError,
         "partial branching has no defining formula; it is the complement of "
         "the other three kinds");
  }
  std::string key = "branch\x1f" + branch_kind_key(kind) + "\x1f" + colour + "\x1f" + arg;
  return memo(key, [&] {
    HitAtom hit = colour_hit(colour);
    switch (kind) {
      case BranchKind::Fully: return build_fully(arg, hit);
      case BranchKind::Single: return build_single(arg, hit);
      default: return build_missed(arg, hit);
    }
  });
}

FormulaPtr FormulaLibrary::rep_formula(const std::string& colour, bool starred) const {
  return rep_formula_named(colour, starred, "R", "X");
}

FormulaPtr FormulaLibrary::rep_formula_named(const std::string& colour, bool starred,
                                             const std::string& rep_var,
                                             const std::string& set_var) const {
  want_free_set_name(rep_var);
  want_free_set_name(set_var);
  if (colour.empty()) {
    fail(ErrorKind::UsageError, "representative formula requires a colour name");
  }
  std::string key = std::string("rep\x1f") + (starred ? "*" : "-") + "\x1f" + colour +
                    "\x1f" + rep_var + "\x1f" + set_var;
  return memo(key, [&] {
    return starred ? build_rep_star(colour, rep_var, set_var)
                   : build_rep(colour, rep_var, set_var);
  });
}

FormulaPtr FormulaLibrary::leader_raw(int i, const std::string& elem_var,
                                      const std::string& set_var) const {
  std::string key = "leader\x1f" + std::to_string(i) + "\x1f" + elem_var + "\x1f" + set_var;
  return memo(key, [&] {
    if (i == 0) {
      return f_and({build_upper_leaf(set_var), f_in(elem_var, set_var)});
    }
    return f_and({f_rel(colour_b(i), {elem_var}),
                  f_exists_set("QL", f_and({f_in(elem_var, "QL"),
                                            build_rep_star(colour_a(i), "QL", set_var)}))});
  });
}

FormulaPtr FormulaLibrary::leader_formula(int i) const {
  return leader_formula_named(i, "r", "X");
}

FormulaPtr FormulaLibrary::leader_formula_named(int i, const std::string& elem_var,
                                                const std::string& set_var) const {
  if (i < 0 || i > config_.part_count) {
    fail(ErrorKind::IndexOutOfRange,
         "leader index " + std::to_string(i) + " outside 0.." +
             std::to_string(config_.part_count));
  }
  want_free_elem_name(elem_var);
  want_free_set_name(set_var);
  return leader_raw(i, elem_var, set_var);
}

FormulaPtr FormulaLibrary::chi_sentence() const {
  return memo("chi", [&] {
    int p = config_.part_count;
    // (a) every family set has exactly one leader, through exactly one part.
    V exactly_one;
    for (int i = 0; i <= p; ++i) {
      V parts;
      parts.push_back(
          f_exists("qr", f_and({leader_raw(i, "qr", "QX"),
                                f_forall("qs", f_implies(leader_raw(i, "qs", "QX"),
                                                         f_eq("qs", "qr")))})));
      for (int j = 0; j <= p; ++j) {
        if (j == i) continue;
        parts.push_back(f_not(f_exists("qt", leader_raw(j, "qt", "QX"))));
      }
      exactly_one.push_back(f_and(std::move(parts)));
    }
    V clauses;
    clauses.push_back(
        f_forall_set("QX", f_implies(f_pred(kSet, "QX"), f_or(std::move(exactly_one)))));
    // (b) within each part, leaders of distinct family sets are distinct.
    for (int i = 0; i <= p; ++i) {
      clauses.push_back(f_forall_set(
          "QX",
          f_implies(
              f_pred(kSet, "QX"),
              f_forall_set(
                  "QY",
                  f_implies(f_pred(kSet, "QY"),
                            f_forall(
                                "qr",
                                f_forall("qs",
                                         f_implies(f_and({f_not(f_seteq("QX", "QY")),
                                                          leader_raw(i, "qr", "QX"),
                                                          leader_raw(i, "qs", "QY")}),
                                                   f_not(f_eq("qr", "qs"))))))))));
    }
    return f_and(std::move(clauses));
  });
}

FormulaPtr FormulaLibrary::counting_formula(CountingKind kind, int param) const {
  switch (kind) {
    case CountingKind::Countkids:
      return counting_formula_named(kind, param, {"v", "S"});
    case CountingKind::Oddkids:
      return counting_formula_named(kind, param, {"v", "S"});
    case CountingKind::Evenleaf:
      return counting_formula_named(kind, param, {"X"});
  }
  fail(ErrorKind::UsageError, "invalid counting kind");
}

FormulaPtr FormulaLibrary::counting_formula_named(
    CountingKind kind, int param, const std::vector<std::string>& args) const {
  auto want_pair = [&] {
    if (args.size() != 2) {
      fail(ErrorKind::UsageError, "expected variable names (v, S)");
    }
    want_free_elem_name(args[0]);
    want_free_set_name(args[1]);
  };
  switch (kind) {
    case CountingKind::Countkids: {
      if (param < 0) {
        fail(ErrorKind::RangeError,
             "child count must be nonnegative, got " + std::to_string(param));
      }
      want_pair();
      std::string key = "ck\x1f" + std::to_string(param) + "\x1f" + args[0] + "\x1f" + args[1];
      return memo(key, [&] { return build_countkids(param, args[0], args[1]); });
    }
    case CountingKind::Oddkids: {
      if (param < 1) {
        fail(ErrorKind::RangeError,
             "arity bound must be positive, got " + std::to_string(param));
      }
      want_pair();
      std::string key = "ok\x1f" + std::to_string(param) + "\x1f" + args[0] + "\x1f" + args[1];
      return memo(key, [&] { return build_oddkids(param, args[0], args[1]); });
    }
    case CountingKind::Evenleaf: {
      if (param < 1) {
        fail(ErrorKind::RangeError,
             "arity bound must be positive, got " + std::to_string(param));
      }
      if (args.size() != 1) {
        fail(ErrorKind::UsageError, "expected one set variable name (X)");
      }
      want_free_set_name(args[0]);
      std::string key = "el\x1f" + std::to_string(param) + "\x1f" + args[0];
      return memo(key, [&] { return build_evenleaf(param, args[0]); });
    }
  }
  fail(ErrorKind::UsageError, "invalid counting kind");
}

}  // namespace lamtrans
