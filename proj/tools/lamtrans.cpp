// Command-line front end: every pipeline stage as a standalone command, with
// JSON/DOT/text output, stdin/stdout plumbing, and stable exit codes
// (0 success or property true, 1 property false or filter rejected,
// 2 usage or validation error).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamtrans/errors.hpp"
#include "lamtrans/eval.hpp"
#include "lamtrans/formulas.hpp"
#include "lamtrans/laminar.hpp"
#include "lamtrans/logic.hpp"
#include "lamtrans/structures.hpp"
#include "lamtrans/transduction.hpp"
#include "lamtrans/verify.hpp"

namespace {

using OrderedJson = nlohmann::ordered_json;
using namespace lamtrans;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::UsageError, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::UsageError, "cannot open output file '" + path + "'");
  out << text;
}

// Inputs that hold a structure directly are accepted as-is; set-system
// documents are lifted through the standard encoding.
Structure load_structure(const std::string& text) {
  try {
    return structure_from_json(text);
  } catch (const Error&) {
    return system_to_structure(setsystem_from_json(text));
  }
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += ids[i];
  }
  return out + "}";
}

std::string system_text(const SetSystem& sys) {
  std::string out = "universe " + join_ids(sys.universe) + "\n";
  for (const auto& s : sys.sets) out += join_ids(s) + "\n";
  return out;
}

// DOT rendering of a transduced tree structure; inner nodes are labelled
// with the leaf labels below them.
std::string rooted_to_dot(const RootedTree& rt) {
  const std::size_t n = rt.labels.size();
  std::vector<std::vector<std::string>> below(n);
  // children ids are always larger in breadth-first order; a reverse sweep
  // fills leaf labels bottom-up without recursion.
  std::vector<int> order;
  std::vector<int> stack{rt.root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int c : rt.children[static_cast<std::size_t>(v)]) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    auto& mine = below[static_cast<std::size_t>(v)];
    if (rt.children[static_cast<std::size_t>(v)].empty()) {
      mine.push_back(rt.labels[static_cast<std::size_t>(v)]);
    } else {
      for (int c : rt.children[static_cast<std::size_t>(v)]) {
        const auto& sub = below[static_cast<std::size_t>(c)];
        mine.insert(mine.end(), sub.begin(), sub.end());
      }
      std::sort(mine.begin(), mine.end());
    }
  }
  std::ostringstream out;
  out << "digraph tree {\n  node [shape=box];\n";
  for (std::size_t v = 0; v < n; ++v) {
    const std::string label = rt.children[v].empty() ? rt.labels[v] : join_ids(below[v]);
    out << "  n" << v << " [label=\"" << label << "\"];\n";
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (int c : rt.children[v]) out << "  n" << v << " -> n" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

// Compacts the witness colouring the way the transduction does: nonempty
// thin-partition slots take colour indices 1..m in slot order.
struct CompactColouring {
  int colour = 0;      // 1-based colour index
  int part_index = 0;  // thin-partition slot
  std::vector<std::string> a_ids, b_ids;
};

std::vector<CompactColouring> compact_colouring(const LaminarTree& tree,
                                                const ThinPartition& tp,
                                                const IdentifyingColouring& col,
                                                int part_count) {
  std::vector<CompactColouring> out;
  for (int j = 0; j < 16; ++j) {
    if (tp.parts[static_cast<std::size_t>(j)].empty()) continue;
    CompactColouring c;
    c.colour = static_cast<int>(out.size()) + 1;
    c.part_index = j;
    c.a_ids = tree.elem_ids(col.A[static_cast<std::size_t>(j)]);
    c.b_ids = tree.elem_ids(col.B[static_cast<std::size_t>(j)]);
    out.push_back(std::move(c));
  }
  if (static_cast<int>(out.size()) > part_count) {
    fail(ErrorKind::RangeError, "the thin partition uses " + std::to_string(out.size()) +
                                    " nonempty parts, more than the requested " +
                                    std::to_string(part_count));
  }
  return out;
}

struct SharedFlags {
  std::string input = "-";
  std::string output = "-";
  std::string format = "json";
  int parts = 16;
  std::uint64_t seed = 1;
  std::size_t max_subset = default_eval_options().max_subset_universe;

  EvalOptions eval() const {
    EvalOptions o = default_eval_options();
    o.max_subset_universe = max_subset;
    return o;
  }
};

void add_io_flags(CLI::App* cmd, SharedFlags* f, bool dot_allowed = false) {
  cmd->add_option("--input", f->input, "input file, or - for stdin");
  cmd->add_option("--output", f->output, "output file, or - for stdout");
  const std::string formats = dot_allowed ? "json, dot, or text" : "json or text";
  cmd->add_option("--format", f->format, "output format: " + formats)
      ->check(dot_allowed ? CLI::IsMember({"json", "dot", "text"})
                          : CLI::IsMember({"json", "text"}));
}

void add_eval_flags(CLI::App* cmd, SharedFlags* f) {
  cmd->add_option("--parts", f->parts, "number of colour parts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-subset-universe", f->max_subset,
                  "largest universe enumerated by unguarded set quantifiers")
      ->check(CLI::PositiveNumber);
}

int run_check_laminar(const SharedFlags& f) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  std::string reason;
  const bool ok = check_laminar(sys, &reason);
  if (f.format == "json") {
    OrderedJson doc;
    doc["laminar"] = ok;
    if (!ok) doc["reason"] = reason;
    write_output(f.output, doc.dump(2) + "\n");
  } else {
    write_output(f.output, ok ? "laminar\n" : "not laminar: " + reason + "\n");
  }
  return ok ? 0 : 1;
}

int run_build_tree(const SharedFlags& f) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  const LaminarTree tree = build_laminar_tree(sys);
  if (f.format == "json") {
    write_output(f.output, tree_to_json(tree));
  } else if (f.format == "dot") {
    write_output(f.output, tree_to_dot(tree));
  } else {
    std::ostringstream out;
    for (const auto& node : tree.nodes) {
      out << node.id << " depth=" << node.depth << " parent=" << node.parent << " "
          << join_ids(tree.elem_ids(node.elems)) << "\n";
    }
    write_output(f.output, out.str());
  }
  return 0;
}

int run_thin_partition(const SharedFlags& f) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  const LaminarTree tree = build_laminar_tree(sys);
  const ThinPartition tp = thin_partition(tree);
  if (f.format == "json") {
    OrderedJson doc;
    doc["parts"] = OrderedJson::array();
    for (int j = 0; j < 16; ++j) {
      const auto& part = tp.parts[static_cast<std::size_t>(j)];
      if (part.empty()) continue;
      OrderedJson jp;
      jp["index"] = j;
      jp["depth_class"] = ThinPartition::part_label(j);
      jp["nodes"] = part;
      doc["parts"].push_back(std::move(jp));
    }
    write_output(f.output, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (int j = 0; j < 16; ++j) {
      const auto& part = tp.parts[static_cast<std::size_t>(j)];
      if (part.empty()) continue;
      out << "part " << j << " (depth class " << ThinPartition::part_label(j) << "):";
      for (int v : part) out << " " << v;
      out << "\n";
    }
    write_output(f.output, out.str());
  }
  return 0;
}

int run_rep_sets(const SharedFlags& f) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  const LaminarTree tree = build_laminar_tree(sys);
  const ThinPartition tp = thin_partition(tree);
  OrderedJson doc;
  doc["parts"] = OrderedJson::array();
  std::ostringstream text;
  for (int j = 0; j < 16; ++j) {
    const auto& part = tp.parts[static_cast<std::size_t>(j)];
    if (part.empty()) continue;
    const RepAssignment rep = build_representative_sets(tree, part);
    OrderedJson jp;
    jp["index"] = j;
    jp["entries"] = OrderedJson::array();
    for (const auto& e : rep.entries) {
      OrderedJson je;
      je["node"] = e.s;
      je["tree_nodes"] = e.tree_nodes;
      je["elements"] = tree.elem_ids(e.rep_elems);
      jp["entries"].push_back(std::move(je));
      text << "part " << j << " node " << e.s << ": "
           << join_ids(tree.elem_ids(e.rep_elems)) << "\n";
    }
    doc["parts"].push_back(std::move(jp));
  }
  write_output(f.output, f.format == "json" ? doc.dump(2) + "\n" : text.str());
  return 0;
}

int run_colouring(const SharedFlags& f) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  const LaminarTree tree = build_laminar_tree(sys);
  const ThinPartition tp = thin_partition(tree);
  const IdentifyingColouring col = identifying_colouring(tree, tp);
  const auto compact = compact_colouring(tree, tp, col, f.parts);
  if (f.format == "json") {
    OrderedJson doc;
    doc["parts"] = f.parts;
    doc["colours"] = OrderedJson::array();
    for (const auto& c : compact) {
      OrderedJson jc;
      jc["colour"] = c.colour;
      jc["part_index"] = c.part_index;
      jc["A"] = c.a_ids;
      jc["B"] = c.b_ids;
      doc["colours"].push_back(std::move(jc));
    }
    write_output(f.output, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (const auto& c : compact) {
      out << "A" << c.colour << " = " << join_ids(c.a_ids) << "  B" << c.colour << " = "
          << join_ids(c.b_ids) << "\n";
    }
    write_output(f.output, out.str());
  }
  return 0;
}

int run_formula(const SharedFlags& f, const std::string& name, const std::string& colour,
                int param, bool starred) {
  const FormulaLibrary lib({f.parts});
  FormulaPtr formula;
  if (name == "laminarity") {
    formula = lib.laminarity_sentence(true);
  } else if (name == "laminarity-verbatim") {
    formula = lib.laminarity_sentence(false);
  } else if (name == "chi") {
    formula = lib.chi_sentence();
  } else if (name == "fully" || name == "single" || name == "missed") {
    const BranchKind kind = name == "fully"    ? BranchKind::Fully
                            : name == "single" ? BranchKind::Single
                                               : BranchKind::Missed;
    formula = lib.branch_formula(kind, colour);
  } else if (name == "rep") {
    formula = lib.rep_formula(colour, starred);
  } else if (name == "leader") {
    if (param < 0) fail(ErrorKind::UsageError, "leader needs --param (the colour index)");
    formula = lib.leader_formula(param);
  } else if (name == "countkids" || name == "oddkids" || name == "evenleaf") {
    if (param < 0) fail(ErrorKind::UsageError, name + " needs --param");
    const CountingKind kind = name == "countkids" ? CountingKind::Countkids
                              : name == "oddkids" ? CountingKind::Oddkids
                                                  : CountingKind::Evenleaf;
    formula = lib.counting_formula(kind, param);
  } else {
    formula = lib.derived_predicate(name, colour);
  }
  const std::string text = print_formula(formula);
  if (f.format == "json") {
    OrderedJson doc;
    doc["name"] = name;
    doc["text"] = text;
    write_output(f.output, doc.dump(2) + "\n");
  } else {
    write_output(f.output, text + "\n");
  }
  return 0;
}

int run_eval(const SharedFlags& f, const std::string& formula_text,
             const std::string& formula_file, const std::string& assignment_text) {
  std::string text = formula_text;
  if (text.empty() && !formula_file.empty()) text = read_input(formula_file);
  if (text.empty()) {
    fail(ErrorKind::UsageError, "eval needs --formula or --formula-file");
  }
  const FormulaPtr formula = parse_formula(text);
  const Structure st = load_structure(read_input(f.input));
  IndexedStructure idx(st);
  Evaluator ev(idx, f.eval());
  Evaluator::Binding binding;
  if (!assignment_text.empty()) {
    const OrderedJson doc = OrderedJson::parse(assignment_text, nullptr, false);
    if (doc.is_discarded()) fail(ErrorKind::UsageError, "assignment is not valid JSON");
    if (doc.contains("elements")) {
      for (const auto& [var, id] : doc["elements"].items()) {
        const int i = idx.index_of(id.get<std::string>());
        if (i < 0) {
          fail(ErrorKind::ElementOutOfUniverse,
               "assignment element '" + id.get<std::string>() + "' is not in the universe");
        }
        binding.elems.push_back({var, i});
      }
    }
    if (doc.contains("sets")) {
      for (const auto& [var, ids] : doc["sets"].items()) {
        Bits b(st.universe.size());
        for (const auto& id : ids) {
          const int i = idx.index_of(id.get<std::string>());
          if (i < 0) {
            fail(ErrorKind::ElementOutOfUniverse,
                 "assignment element '" + id.get<std::string>() + "' is not in the universe");
          }
          b.set(static_cast<std::size_t>(i));
        }
        binding.sets.push_back({var, b});
      }
    }
  }
  const bool value = ev.eval_indexed(formula, binding);
  if (f.format == "json") {
    OrderedJson doc;
    doc["value"] = value;
    write_output(f.output, doc.dump(2) + "\n");
  } else {
    write_output(f.output, value ? "true\n" : "false\n");
  }
  return value ? 0 : 1;
}

int run_transduce(const SharedFlags& f, const std::string& policy, bool strip_set,
                  const std::string& trace_path) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  LaminarToTreeOptions opt;
  opt.policy = policy == "enumerate" ? ColouringPolicy::Enumerate : ColouringPolicy::Witness;
  opt.part_count = f.parts;
  opt.strip_set = strip_set;
  opt.eval = f.eval();
  std::string trace;
  const Structure out =
      laminar_to_tree(system_to_structure(sys), opt, trace_path.empty() ? nullptr : &trace);
  if (!trace_path.empty()) write_output(trace_path, trace);
  if (f.format == "json") {
    write_output(f.output, structure_to_json(out));
  } else if (f.format == "dot") {
    write_output(f.output, rooted_to_dot(rooted_tree_from_desc(out)));
  } else {
    write_output(f.output, rooted_tree_canon(rooted_tree_from_desc(out)) + "\n");
  }
  return 0;
}

// Strips the copy prefix ("0#e1" -> "e1") so a transduced tree interprets
// back to the original element names.
SetSystem strip_copy_prefixes(const SetSystem& sys) {
  const auto strip = [](const std::string& id) {
    const auto pos = id.find('#');
    return pos == std::string::npos ? id : id.substr(pos + 1);
  };
  std::vector<std::string> universe;
  universe.reserve(sys.universe.size());
  for (const auto& id : sys.universe) universe.push_back(strip(id));
  std::vector<std::vector<std::string>> sets;
  sets.reserve(sys.sets.size());
  for (const auto& s : sys.sets) {
    std::vector<std::string> t;
    t.reserve(s.size());
    for (const auto& id : s) t.push_back(strip(id));
    sets.push_back(std::move(t));
  }
  return make_set_system(std::move(universe), std::move(sets));
}

int run_roundtrip(const SharedFlags& f) {
  const SetSystem sys = setsystem_from_json(read_input(f.input));
  const std::string canonical = setsystem_to_json(sys);
  LaminarToTreeOptions opt;
  opt.part_count = f.parts;
  opt.eval = f.eval();
  const Structure tree = laminar_to_tree(system_to_structure(sys), opt);
  const SetSystem back =
      strip_copy_prefixes(structure_to_setsystem(tree_to_setsystem(tree, opt.eval)));
  const std::string recovered = setsystem_to_json(back);
  write_output(f.output, recovered);
  if (recovered == canonical) return 0;
  std::cerr << "roundtrip mismatch: the recovered system differs from the input\n";
  return 1;
}

int run_gen(const SharedFlags& f, int leaves, double arity_bias) {
  const SetSystem sys = gen_laminar(f.seed, leaves, arity_bias);
  write_output(f.output, f.format == "json" ? setsystem_to_json(sys) : system_text(sys));
  return 0;
}

int run_enumerate(const SharedFlags& f, int leaves, bool count_only) {
  if (count_only) {
    const std::uint64_t count = count_laminar(leaves);
    if (f.format == "json") {
      OrderedJson doc;
      doc["leaves"] = leaves;
      doc["count"] = count;
      write_output(f.output, doc.dump(2) + "\n");
    } else {
      write_output(f.output, std::to_string(count) + "\n");
    }
    return 0;
  }
  const Corpus corpus = enumerate_laminar(leaves);
  if (f.format == "json") {
    OrderedJson doc;
    doc["leaves"] = leaves;
    doc["count"] = corpus.systems.size();
    doc["systems"] = OrderedJson::array();
    for (const auto& sys : corpus.systems) {
      doc["systems"].push_back(OrderedJson::parse(setsystem_to_json(sys)));
    }
    write_output(f.output, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << corpus.systems.size() << " systems\n";
    for (const auto& sys : corpus.systems) {
      std::string line;
      for (const auto& s : sys.sets) line += join_ids(s);
      out << line << "\n";
    }
    write_output(f.output, out.str());
  }
  return 0;
}

int run_verify(const SharedFlags& f, int max_leaves, const std::vector<std::string>& checks) {
  VerifyConfig cfg;
  cfg.e2e_max_leaves = max_leaves;
  cfg.lemma_max_leaves = std::min(max_leaves, cfg.lemma_max_leaves);
  cfg.part_count = f.parts;
  cfg.seed = f.seed;
  cfg.checks = checks;
  cfg.eval = f.eval();
  const VerificationReport report = run_verification_suite(cfg);
  write_output(f.output, f.format == "json" ? report.to_json() : report.to_text());
  return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laminar set systems, their trees, and the defining transduction"};
  app.require_subcommand(1);

  SharedFlags f;
  std::string formula_name, formula_colour;
  int formula_param = -1;
  bool formula_starred = false;
  std::string eval_formula, eval_formula_file, eval_assignment;
  std::string policy = "witness";
  bool strip_set = false;
  std::string trace_path;
  int leaves = 6;
  double arity_bias = 0.35;
  bool count_only = false;
  int max_leaves = 6;
  std::vector<std::string> checks;

  CLI::App* c_check = app.add_subcommand("check-laminar", "test whether a set system is laminar");
  add_io_flags(c_check, &f);

  CLI::App* c_tree = app.add_subcommand("build-tree", "build the laminar tree of a system");
  add_io_flags(c_tree, &f, true);

  CLI::App* c_thin = app.add_subcommand("thin-partition", "partition the inner nodes into thin sets");
  add_io_flags(c_thin, &f);

  CLI::App* c_rep = app.add_subcommand("rep-sets", "representative sets for every thin part");
  add_io_flags(c_rep, &f);

  CLI::App* c_col = app.add_subcommand("colouring", "the identifying colouring, packed into colour indices");
  add_io_flags(c_col, &f);
  add_eval_flags(c_col, &f);

  CLI::App* c_formula = app.add_subcommand("formula", "print a formula from the library");
  add_io_flags(c_formula, &f);
  add_eval_flags(c_formula, &f);
  c_formula->add_option("--name", formula_name, "formula name (ROOT, LEAF, LEAF_A, DESC, ANC, CHILD, PARENT, root, leaf, child, laminarity, laminarity-verbatim, chi, fully, single, missed, rep, leader, countkids, oddkids, evenleaf)")->required();
  c_formula->add_option("--colour", formula_colour, "colour predicate name, e.g. A1");
  c_formula->add_option("--param", formula_param, "numeric parameter (leader index or counting bound)");
  c_formula->add_flag("--starred", formula_starred, "maximal variant of rep");

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a formula over a structure");
  add_io_flags(c_eval, &f);
  add_eval_flags(c_eval, &f);
  c_eval->add_option("--formula", eval_formula, "formula text");
  c_eval->add_option("--formula-file", eval_formula_file, "file holding the formula text");
  c_eval->add_option("--assignment", eval_assignment,
                     R"(JSON assignment {"elements":{"x":"e1"},"sets":{"X":["e1"]}})");

  CLI::App* c_trans = app.add_subcommand("transduce", "run the full pipeline from a system to its tree");
  add_io_flags(c_trans, &f, true);
  add_eval_flags(c_trans, &f);
  c_trans->add_option("--policy", policy, "colouring policy")
      ->check(CLI::IsMember({"witness", "enumerate"}));
  c_trans->add_flag("--strip-set", strip_set, "drop the SET overlay from the output");
  c_trans->add_option("--trace", trace_path, "write a step-by-step JSON trace to this file");

  CLI::App* c_round = app.add_subcommand("roundtrip", "transduce, interpret back, and compare");
  add_io_flags(c_round, &f);
  add_eval_flags(c_round, &f);

  CLI::App* c_gen = app.add_subcommand("gen", "generate a random laminar system");
  add_io_flags(c_gen, &f);
  c_gen->add_option("--seed", f.seed, "random seed");
  c_gen->add_option("--leaves", leaves, "number of leaves")->check(CLI::PositiveNumber);
  c_gen->add_option("--arity-bias", arity_bias, "probability of widening an inner node")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* c_enum = app.add_subcommand("enumerate", "enumerate all systems with a given leaf count");
  add_io_flags(c_enum, &f);
  c_enum->add_option("--leaves", leaves, "number of leaves")->check(CLI::PositiveNumber);
  c_enum->add_flag("--count-only", count_only, "print only the count, via the recurrence");

  CLI::App* c_verify = app.add_subcommand("verify", "run the verification suite");
  add_io_flags(c_verify, &f);
  add_eval_flags(c_verify, &f);
  c_verify->add_option("--seed", f.seed, "random seed for the generated corpora");
  c_verify->add_option("--max-leaves", max_leaves, "exhaustive corpus bound")
      ->check(CLI::Range(1, 8));
  c_verify->add_option("--checks", checks, "run only these checks (comma separated)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // Verdict-style commands answer in plain text unless asked otherwise;
  // data-producing commands default to JSON.
  for (CLI::App* verdict : {c_check, c_eval}) {
    if (app.got_subcommand(verdict) && verdict->count("--format") == 0) {
      f.format = "text";
    }
  }

  try {
    if (app.got_subcommand(c_check)) return run_check_laminar(f);
    if (app.got_subcommand(c_tree)) return run_build_tree(f);
    if (app.got_subcommand(c_thin)) return run_thin_partition(f);
    if (app.got_subcommand(c_rep)) return run_rep_sets(f);
    if (app.got_subcommand(c_col)) return run_colouring(f);
    if (app.got_subcommand(c_formula)) {
      return run_formula(f, formula_name, formula_colour, formula_param, formula_starred);
    }
    if (app.got_subcommand(c_eval)) {
      return run_eval(f, eval_formula, eval_formula_file, eval_assignment);
    }
    if (app.got_subcommand(c_trans)) return run_transduce(f, policy, strip_set, trace_path);
    if (app.got_subcommand(c_round)) return run_roundtrip(f);
    if (app.got_subcommand(c_gen)) return run_gen(f, leaves, arity_bias);
    if (app.got_subcommand(c_enum)) return run_enumerate(f, leaves, count_only);
    if (app.got_subcommand(c_verify)) return run_verify(f, max_leaves, checks);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind == ErrorKind::FilterRejectedWitness ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
