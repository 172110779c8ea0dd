#include "lamtrans/logic.hpp"

#include <algorithm>
#include <cctype>

namespace lamtrans {

bool is_set_var(const std::string& v) {
  return !v.empty() && std::isupper(static_cast<unsigned char>(v[0]));
}
bool is_elem_var(const std::string& v) {
  return !v.empty() && std::islower(static_cast<unsigned char>(v[0]));
}

namespace {

void merge_sorted(std::vector<std::string>& into, const std::vector<std::string>& from) {
  for (const auto& v : from) {
    auto it = std::lower_bound(into.begin(), into.end(), v);
    if (it == into.end() || *it != v) into.insert(it, v);
  }
}

void erase_var(std::vector<std::string>& vs, const std::string& v) {
  auto it = std::lower_bound(vs.begin(), vs.end(), v);
  if (it != vs.end() && *it == v) vs.erase(it);
}

void compute_frees(Formula& f) {
  for (const auto& v : f.elem_args) merge_sorted(f.free_elems, {v});
  for (const auto& v : f.set_args) merge_sorted(f.free_sets, {v});
  for (const auto& c : f.children) {
    merge_sorted(f.free_elems, c->free_elems);
    merge_sorted(f.free_sets, c->free_sets);
  }
  switch (f.kind) {
    case FormulaKind::ExistsElem:
    case FormulaKind::ForallElem:
      erase_var(f.free_elems, f.bound);
      break;
    case FormulaKind::ExistsSet:
    case FormulaKind::ForallSet:
      erase_var(f.free_sets, f.bound);
      break;
    default:
      break;
  }
}

FormulaPtr finish(Formula f) {
  compute_frees(f);
  return std::make_shared<const Formula>(std::move(f));
}

void want_elem(const std::string& v) {
  if (!is_elem_var(v))
    fail(ErrorKind::SyntaxError, "expected element variable (lowercase), got '" + v + "'");
}
void want_set(const std::string& v) {
  if (!is_set_var(v))
    fail(ErrorKind::SyntaxError, "expected set variable (uppercase), got '" + v + "'");
}

}  // namespace

FormulaPtr f_rel(std::string symbol, std::vector<std::string> elem_args) {
  for (const auto& v : elem_args) want_elem(v);
  Formula f;
  f.kind = FormulaKind::RelAtom;
  f.symbol = std::move(symbol);
  f.elem_args = std::move(elem_args);
  return finish(std::move(f));
}

FormulaPtr f_pred(std::string symbol, std::string set_arg) {
  want_set(set_arg);
  Formula f;
  f.kind = FormulaKind::PredAtom;
  f.symbol = std::move(symbol);
  f.set_args = {std::move(set_arg)};
  return finish(std::move(f));
}

FormulaPtr f_in(std::string elem, std::string set) {
  want_elem(elem);
  want_set(set);
  Formula f;
  f.kind = FormulaKind::Member;
  f.elem_args = {std::move(elem)};
  f.set_args = {std::move(set)};
  return finish(std::move(f));
}

FormulaPtr f_eq(std::string a, std::string b) {
  want_elem(a);
  want_elem(b);
  Formula f;
  f.kind = FormulaKind::ElemEq;
  f.elem_args = {std::move(a), std::move(b)};
  return finish(std::move(f));
}

FormulaPtr f_seteq(std::string a, std::string b) {
  want_set(a);
  want_set(b);
  Formula f;
  f.kind = FormulaKind::SetEq;
  f.set_args = {std::move(a), std::move(b)};
  return finish(std::move(f));
}

FormulaPtr f_subset(std::string a, std::string b) {
  want_set(a);
  want_set(b);
  Formula f;
  f.kind = FormulaKind::Subset;
  f.set_args = {std::move(a), std::move(b)};
  return finish(std::move(f));
}

FormulaPtr f_not(FormulaPtr x) {
  Formula f;
  f.kind = FormulaKind::Not;
  f.children = {std::move(x)};
  return finish(std::move(f));
}

FormulaPtr f_and(std::vector<FormulaPtr> fs) {
  Formula f;
  f.kind = FormulaKind::And;
  f.children = std::move(fs);
  return finish(std::move(f));
}

FormulaPtr f_or(std::vector<FormulaPtr> fs) {
  Formula f;
  f.kind = FormulaKind::Or;
  f.children = std::move(fs);
  return finish(std::move(f));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::Implies;
  f.children = {std::move(a), std::move(b)};
  return finish(std::move(f));
}

FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::Iff;
  f.children = {std::move(a), std::move(b)};
  return finish(std::move(f));
}

namespace {
FormulaPtr quantifier(FormulaKind kind, std::string v, FormulaPtr body) {
  Formula f;
  f.kind = kind;
  f.bound = std::move(v);
  f.children = {std::move(body)};
  return finish(std::move(f));
}
}  // namespace

FormulaPtr f_exists(std::string v, FormulaPtr body) {
  want_elem(v);
  return quantifier(FormulaKind::ExistsElem, std::move(v), std::move(body));
}
FormulaPtr f_forall(std::string v, FormulaPtr body) {
  want_elem(v);
  return quantifier(FormulaKind::ForallElem, std::move(v), std::move(body));
}
FormulaPtr f_exists_set(std::string v, FormulaPtr body) {
  want_set(v);
  return quantifier(FormulaKind::ExistsSet, std::move(v), std::move(body));
}
FormulaPtr f_forall_set(std::string v, FormulaPtr body) {
  want_set(v);
  return quantifier(FormulaKind::ForallSet, std::move(v), std::move(body));
}

FreeVariables free_variables(const Formula& f) {
  return FreeVariables{f.free_elems, f.free_sets};
}

namespace {

void print_rec(const Formula& f, std::string& out) {
  auto head = [&](const char* h) {
    out += '(';
    out += h;
  };
  auto args = [&](const std::vector<std::string>& vs) {
    for (const auto& v : vs) {
      out += ' ';
      out += v;
    }
  };
  auto kids = [&](const Formula& g) {
    for (const auto& c : g.children) {
      out += ' ';
      print_rec(*c, out);
    }
  };
  switch (f.kind) {
    case FormulaKind::RelAtom:
      head("rel");
      out += ' ';
      out += f.symbol;
      args(f.elem_args);
      break;
    case FormulaKind::PredAtom:
      head("pred");
      out += ' ';
      out += f.symbol;
      args(f.set_args);
      break;
    case FormulaKind::Member:
      head("in");
      args(f.elem_args);
      args(f.set_args);
      break;
    case FormulaKind::ElemEq:
      head("=");
      args(f.elem_args);
      break;
    case FormulaKind::SetEq:
      head("seteq");
      args(f.set_args);
      break;
    case FormulaKind::Subset:
      head("subset");
      args(f.set_args);
      break;
    case FormulaKind::Not:
      head("not");
      kids(f);
      break;
    case FormulaKind::And:
      head("and");
      kids(f);
      break;
    case FormulaKind::Or:
      head("or");
      kids(f);
      break;
    case FormulaKind::Implies:
      head("implies");
      kids(f);
      break;
    case FormulaKind::Iff:
      head("iff");
      kids(f);
      break;
    case FormulaKind::ExistsElem:
      head("exists");
      out += ' ';
      out += f.bound;
      kids(f);
      break;
    case FormulaKind::ForallElem:
      head("forall");
      out += ' ';
      out += f.bound;
      kids(f);
      break;
    case FormulaKind::ExistsSet:
      head("existsSet");
      out += ' ';
      out += f.bound;
      kids(f);
      break;
    case FormulaKind::ForallSet:
      head("forallSet");
      out += ' ';
      out += f.bound;
      kids(f);
      break;
  }
  out += ')';
}

struct Parser {
  const std::string& text;
  const Vocabulary* voc;
  std::size_t pos = 0;

  [[noreturn]] void err(std::size_t at, const std::string& msg) {
    fail(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(at));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) err(pos, "unexpected end of input");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) err(pos, std::string("expected '") + c + "'");
    ++pos;
  }

  static bool token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#' ||
           c == '-' || c == '*';
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && token_char(text[pos])) ++pos;
    if (pos == start) err(start, "expected a token");
    return text.substr(start, pos - start);
  }

  void check_atom(std::size_t at, const std::string& name, SymbolKind kind, int arity) {
    if (!voc) return;
    const Symbol* sym = voc->find(name);
    if (!sym) err(at, "symbol '" + name + "' not in vocabulary");
    if (sym->kind != kind)
      err(at, "symbol '" + name + "' has the wrong kind");
    if (sym->arity != arity)
      err(at, "symbol '" + name + "' expects arity " + std::to_string(sym->arity));
  }

  FormulaPtr formula() {
    expect('(');
    std::size_t head_at = pos;
    skip_ws();
    std::string head;
    if (pos < text.size() && text[pos] == '=') {
      head = "=";
      ++pos;
    } else {
      head = token();
    }
    FormulaPtr result;
    try {
      result = body(head, head_at);
    } catch (const Error&) {
      throw;
    }
    expect(')');
    return result;
  }

  std::vector<FormulaPtr> rest() {
    std::vector<FormulaPtr> fs;
    while (peek() != ')') fs.push_back(formula());
    return fs;
  }

  FormulaPtr body(const std::string& head, std::size_t head_at) {
    if (head == "rel") {
      std::string name = token();
      std::vector<std::string> vars;
      while (peek() != ')') vars.push_back(token());
      check_atom(head_at, name, SymbolKind::Relation, int(vars.size()));
      return f_rel(name, vars);
    }
    if (head == "pred") {
      std::string name = token();
      std::string var = token();
      check_atom(head_at, name, SymbolKind::SetPredicate, 1);
      return f_pred(name, var);
    }
    if (head == "in") {
      std::string x = token();
      std::string s = token();
      return f_in(x, s);
    }
    if (head == "=") {
      std::string a = token();
      std::string b = token();
      return f_eq(a, b);
    }
    if (head == "seteq") {
      std::string a = token();
      std::string b = token();
      return f_seteq(a, b);
    }
    if (head == "subset") {
      std::string a = token();
      std::string b = token();
      return f_subset(a, b);
    }
    if (head == "not") {
      auto f = formula();
      if (peek() != ')') err(pos, "'not' takes one formula");
      return f_not(f);
    }
    if (head == "and") return f_and(rest());
    if (head == "or") return f_or(rest());
    if (head == "implies" || head == "iff") {
      auto a = formula();
      auto b = formula();
      if (peek() != ')') err(pos, "'" + head + "' takes two formulas");
      return head == "implies" ? f_implies(a, b) : f_iff(a, b);
    }
    if (head == "exists" || head == "forall" || head == "existsSet" || head == "forallSet") {
      std::size_t var_at = pos;
      std::string v = token();
      bool set_q = head == "existsSet" || head == "forallSet";
      if (set_q && !is_set_var(v)) err(var_at, "'" + head + "' needs an uppercase variable");
      if (!set_q && !is_elem_var(v)) err(var_at, "'" + head + "' needs a lowercase variable");
      auto f = formula();
      if (peek() != ')') err(pos, "quantifiers take one body formula");
      if (head == "exists") return f_exists(v, f);
      if (head == "forall") return f_forall(v, f);
      if (head == "existsSet") return f_exists_set(v, f);
      return f_forall_set(v, f);
    }
    err(head_at, "unknown form '" + head + "'");
  }
};

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

FormulaPtr parse_formula(const std::string& text, const Vocabulary* voc) {
  Parser p{text, voc};
  FormulaPtr f = p.formula();
  if (!p.at_end()) p.err(p.pos, "trailing input");
  return f;
}

}  // namespace lamtrans
