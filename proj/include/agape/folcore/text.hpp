#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "agape/folcore/defs.hpp"
#include "agape/folcore/sexpr.hpp"
#include "agape/folcore/signature.hpp"
#include "agape/folcore/sortcheck.hpp"
#include "agape/folcore/store.hpp"

namespace agape::folcore {

// ---------------------------------------------------------------------------
// Printing.  Deterministic: children keep construction order, single spaces,
// line breaks only for long subtrees.  DAG sharing is expanded, so printing
// refuses formulas whose tree blows past the node limit.
// ---------------------------------------------------------------------------

class Printer {
 public:
  explicit Printer(const Store& st, std::size_t max_nodes = 5'000'000)
      : st_(st), budget_(max_nodes) {}

  std::string print(FormulaId f) {
    std::string out;
    emit(f, 0, out);
    return out;
  }

  std::string print_term(TermId t) {
    std::string out;
    emit_term(t, out);
    return out;
  }

 private:
  void spend() {
    if (budget_ == 0)
      throw Error("formula tree too large to print; keep it modular or raise the limit");
    --budget_;
  }

  void emit_term(TermId t, std::string& out) {
    const TermNode& n = st_.term(t);
    switch (n.kind) {
      case TermKind::Var:
        out += st_.name(n.name);
        break;
      case TermKind::Const:
        out += "(const " + st_.name(n.name) + ")";
        break;
      case TermKind::Fn:
        out += "(fn " + st_.name(n.name);
        for (TermId a : n.args) {
          out += ' ';
          emit_term(a, out);
        }
        out += ')';
        break;
    }
  }

  // Small subtrees print inline; larger ones break per child.
  bool small(FormulaId f, int fuel) {
    if (fuel <= 0) return false;
    const FormulaNode& n = st_.node(f);
    int left = fuel - 1 - static_cast<int>(n.terms.size());
    for (FormulaId k : n.kids) {
      if (!small(k, left)) return false;
      left -= 1;
    }
    return left > 0;
  }

  void emit(FormulaId f, int indent, std::string& out) {
    spend();
    const FormulaNode& n = st_.node(f);
    auto emit_kids = [&](const char* head) {
      out += '(';
      out += head;
      bool inline_all = small(f, 12);
      for (FormulaId k : n.kids) {
        if (inline_all) {
          out += ' ';
        } else {
          out += '\n';
          out.append(static_cast<std::size_t>(indent) + 2, ' ');
        }
        emit(k, indent + 2, out);
      }
      out += ')';
    };
    switch (n.kind) {
      case FKind::Atom:
      case FKind::Call: {
        out += n.kind == FKind::Atom ? "(rel " : "(call ";
        out += st_.name(n.name);
        for (TermId t : n.terms) {
          out += ' ';
          emit_term(t, out);
        }
        out += ')';
        break;
      }
      case FKind::Eq:
        out += "(= ";
        emit_term(n.terms[0], out);
        out += ' ';
        emit_term(n.terms[1], out);
        out += ')';
        break;
      case FKind::Not:
        emit_kids("not");
        break;
      case FKind::And:
        emit_kids("and");
        break;
      case FKind::Or:
        emit_kids("or");
        break;
      case FKind::Imp:
        emit_kids("imp");
        break;
      case FKind::Forall:
      case FKind::Exists: {
        out += n.kind == FKind::Forall ? "(forall (" : "(exists (";
        for (std::size_t i = 0; i < n.binds.size(); ++i) {
          if (i) out += ' ';
          out += '(' + st_.name(n.binds[i].var) + ' ' + st_.name(n.binds[i].sort) + ')';
        }
        out += ')';
        if (small(n.kids[0], 10)) {
          out += ' ';
        } else {
          out += '\n';
          out.append(static_cast<std::size_t>(indent) + 2, ' ');
        }
        emit(n.kids[0], indent + 2, out);
        out += ')';
        break;
      }
    }
  }

  const Store& st_;
  std::size_t budget_;
};

inline std::string print(const Store& st, FormulaId f) { return Printer(st).print(f); }
inline std::string print_term(const Store& st, TermId t) { return Printer(st).print_term(t); }

// ---------------------------------------------------------------------------
// Parsing.  Bound variables take their sort from the binder; free variables
// are inferred from symbol positions, with equality chains resolved by
// unification.  Unknown symbols and sort clashes are reported with position.
// ---------------------------------------------------------------------------

class FormulaParser {
 public:
  FormulaParser(Store& st, const Signature& sig, const DefTable* defs = nullptr)
      : st_(st), sig_(sig), defs_(defs) {}

  // Pre-seeded free-variable sorts (used for definition bodies, where the
  // parameter list fixes them).
  void seed(const std::string& var, const std::string& sort) { assign(var, sort, nullptr); }

  FormulaId parse(const SExpr& e) {
    // Constraint passes run to a fixpoint: each pass can resolve equalities
    // whose partner sort arrived late.
    std::size_t known = 0;
    for (int round = 0; round < 64; ++round) {
      std::vector<Scope> env;
      analyze(e, env);
      std::size_t now = resolved_.size();
      if (now == known) break;
      known = now;
    }
    std::vector<Scope> env;
    return build(e, env);
  }

 private:
  struct Scope {
    std::string var, sort;
  };

  const std::string* bound_sort(const std::vector<Scope>& env, const std::string& v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->var == v) return &it->sort;
    return nullptr;
  }

  // union-find over free variable names
  std::string find(const std::string& v) {
    auto it = parent_.find(v);
    if (it == parent_.end() || it->second == v) return v;
    std::string r = find(it->second);
    parent_[v] = r;
    return r;
  }

  void unite(const std::string& a, const std::string& b, const SExpr* at) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    auto ia = resolved_.find(ra);
    auto ib = resolved_.find(rb);
    if (ia != resolved_.end() && ib != resolved_.end() && ia->second != ib->second) {
      if (at) at->fail("variables '" + a + "' and '" + b + "' equated at different sorts");
      throw ParseError("sort clash between '" + a + "' and '" + b + "'");
    }
    parent_[ra] = rb;
    if (ia != resolved_.end() && ib == resolved_.end()) resolved_[rb] = ia->second;
  }

  void assign(const std::string& v, const std::string& sort, const SExpr* at) {
    std::string r = find(v);
    auto [it, fresh] = resolved_.emplace(r, sort);
    if (!fresh && it->second != sort) {
      if (at)
        at->fail("free variable '" + v + "' used at sorts " + it->second + " and " + sort);
      throw ParseError("sort clash on '" + v + "'");
    }
  }

  std::optional<std::string> lookup(const std::string& v) {
    auto it = resolved_.find(find(v));
    if (it == resolved_.end()) return std::nullopt;
    return it->second;
  }

  // --- pass 1: constraints ---

  // Returns the sort of the term when determinable in this pass.
  std::optional<std::string> analyze_term(const SExpr& e, std::vector<Scope>& env,
                                          const std::optional<std::string>& expected) {
    if (e.is_atom()) {
      if (const std::string* s = bound_sort(env, e.text)) {
        if (expected && *expected != *s)
          e.fail("variable '" + e.text + "' has sort " + *s + ", expected " + *expected);
        return *s;
      }
      if (expected) assign(e.text, *expected, &e);
      return lookup(e.text);
    }
    if (!e.is_list() || e.size() == 0 || !e[0].is_atom()) e.fail("malformed term");
    const std::string& head = e[0].text;
    if (head == "fn") {
      if (e.size() < 2) e.fail("(fn NAME term*) expected");
      const SymbolDecl& d = decl_of(e[1], SymbolKind::Function, "function");
      if (e.size() - 2 != d.arity()) e[1].fail("function '" + d.name + "' arity mismatch");
      for (std::size_t i = 0; i < d.arity(); ++i) analyze_term(e[i + 2], env, d.arg_sorts[i]);
      if (expected && *expected != d.result_sort)
        e.fail("term of sort " + d.result_sort + " where " + *expected + " expected");
      return d.result_sort;
    }
    if (head == "const") {
      if (e.size() != 2) e.fail("(const NAME) expected");
      const SymbolDecl& d = decl_of(e[1], SymbolKind::Constant, "constant");
      if (expected && *expected != d.result_sort)
        e.fail("constant of sort " + d.result_sort + " where " + *expected + " expected");
      return d.result_sort;
    }
    e.fail("malformed term head '" + head + "'");
  }

  const SymbolDecl& decl_of(const SExpr& name_atom, SymbolKind want, const char* what) {
    const std::string& name = name_atom.atom(what);
    const SymbolDecl* d = sig_.find_symbol(name);
    if (!d) name_atom.fail("unknown symbol '" + name + "'");
    if (d->kind != want) name_atom.fail("symbol '" + name + "' is not a " + std::string(what));
    return *d;
  }

  void analyze(const SExpr& e, std::vector<Scope>& env) {
    if (!e.is_list() || e.size() == 0 || !e[0].is_atom()) e.fail("malformed formula");
    const std::string& head = e[0].text;
    if (head == "forall" || head == "exists") {
      if (e.size() != 3) e.fail("(" + head + " (binding+) formula) expected");
      std::size_t base = env.size();
      read_bindings(e[1], env);
      analyze(e[2], env);
      env.resize(base);
      return;
    }
    if (head == "and" || head == "or") {
      if (e.size() < 2) e.fail("(" + head + " formula+) expected");
      for (std::size_t i = 1; i < e.size(); ++i) analyze(e[i], env);
      return;
    }
    if (head == "not") {
      if (e.size() != 2) e.fail("(not formula) expected");
      analyze(e[1], env);
      return;
    }
    if (head == "imp") {
      if (e.size() != 3) e.fail("(imp formula formula) expected");
      analyze(e[1], env);
      analyze(e[2], env);
      return;
    }
    if (head == "=") {
      if (e.size() != 3) e.fail("(= term term) expected");
      auto sa = analyze_term(e[1], env, std::nullopt);
      if (sa) {
        analyze_term(e[2], env, sa);
      } else {
        auto sb = analyze_term(e[2], env, std::nullopt);
        if (sb) {
          analyze_term(e[1], env, sb);
        } else if (e[1].is_atom() && e[2].is_atom()) {
          // both free variables of unknown sort: unify
          unite(e[1].text, e[2].text, &e);
        }
      }
      return;
    }
    if (head == "rel") {
      if (e.size() < 2) e.fail("(rel NAME term*) expected");
      const SymbolDecl& d = decl_of(e[1], SymbolKind::Relation, "relation");
      if (e.size() - 2 != d.arity()) e[1].fail("relation '" + d.name + "' arity mismatch");
      for (std::size_t i = 0; i < d.arity(); ++i) analyze_term(e[i + 2], env, d.arg_sorts[i]);
      return;
    }
    if (head == "call") {
      if (e.size() < 2) e.fail("(call NAME term*) expected");
      const std::string& name = e[1].atom("definition name");
      if (defs_ && defs_->has(name)) {
        const NamedDef& d = defs_->get(name);
        if (e.size() - 2 != d.params.size()) e[1].fail("definition '" + name + "' arity mismatch");
        for (std::size_t i = 0; i + 2 < e.size(); ++i)
          analyze_term(e[i + 2], env, st_.name(d.params[i].sort));
      } else {
        for (std::size_t i = 2; i < e.size(); ++i) analyze_term(e[i], env, std::nullopt);
      }
      return;
    }
    e.fail("unknown formula head '" + head + "'");
  }

  void read_bindings(const SExpr& bl, std::vector<Scope>& env) {
    if (!bl.is_list() || bl.size() == 0) bl.fail("binding list expected");
    for (const SExpr& b : bl.items) {
      if (!b.is_list() || b.size() != 2 || !b[0].is_atom() || !b[1].is_atom())
        b.fail("binding (NAME SORT) expected");
      if (!sig_.has_sort(b[1].text)) b[1].fail("unknown sort '" + b[1].text + "'");
      env.push_back({b[0].text, b[1].text});
    }
  }

  // --- pass 2: construction ---

  TermId build_term(const SExpr& e, std::vector<Scope>& env) {
    if (e.is_atom()) {
      if (const std::string* s = bound_sort(env, e.text)) return st_.var(e.text, *s);
      auto s = lookup(e.text);
      if (!s) e.fail("cannot infer the sort of free variable '" + e.text + "'");
      return st_.var(e.text, *s);
    }
    const std::string& head = e[0].text;
    if (head == "fn") {
      std::vector<TermId> args;
      for (std::size_t i = 2; i < e.size(); ++i) args.push_back(build_term(e[i], env));
      return st_.fn(e[1].text, std::move(args));
    }
    return st_.cst(e[1].text);  // const
  }

  FormulaId build(const SExpr& e, std::vector<Scope>& env) {
    const std::string& head = e[0].text;
    if (head == "forall" || head == "exists") {
      std::size_t base = env.size();
      read_bindings(e[1], env);
      std::vector<Binding> bs;
      for (std::size_t i = base; i < env.size(); ++i) bs.push_back(st_.bind(env[i].var, env[i].sort));
      FormulaId body = build(e[2], env);
      env.resize(base);
      return st_.quant(head == "forall" ? FKind::Forall : FKind::Exists, std::move(bs), body);
    }
    if (head == "and" || head == "or") {
      std::vector<FormulaId> ks;
      for (std::size_t i = 1; i < e.size(); ++i) ks.push_back(build(e[i], env));
      return head == "and" ? st_.conj(std::move(ks)) : st_.disj(std::move(ks));
    }
    if (head == "not") return st_.lnot(build(e[1], env));
    if (head == "imp") return st_.imp(build(e[1], env), build(e[2], env));
    if (head == "=") return st_.eq(build_term(e[1], env), build_term(e[2], env));
    if (head == "rel" || head == "call") {
      std::vector<TermId> ts;
      for (std::size_t i = 2; i < e.size(); ++i) ts.push_back(build_term(e[i], env));
      return head == "rel" ? st_.atom(e[1].text, std::move(ts))
                           : st_.call(e[1].text, std::move(ts));
    }
    e.fail("unknown formula head '" + head + "'");
  }

  Store& st_;
  const Signature& sig_;
  const DefTable* defs_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::string> resolved_;
};

inline FormulaId parse(const std::string& text, Store& st, const Signature& sig,
                       const DefTable* defs = nullptr) {
  SExpr e = SExprReader::read_one(text);
  FormulaParser p(st, sig, defs);
  return p.parse(e);
}

// ---------------------------------------------------------------------------
// Definition files: a sequence of
//   (def NAME ((var SORT) ...) formula [(meta "paper-loc" "semantics" variant [symbolic])])
// ---------------------------------------------------------------------------

inline DefTable read_defs(const std::string& text, Store& st, const Signature& sig) {
  DefTable table;
  for (const SExpr& e : SExprReader::read_all(text)) {
    if (!e.headed("def") || e.size() < 4) e.fail("(def NAME (params) formula ...) expected");
    NamedDef d;
    d.name = e[1].atom("definition name");
    const SExpr& params = e[2];
    if (!params.is_list()) params.fail("parameter list expected");
    FormulaParser p(st, sig, &table);
    for (const SExpr& b : params.items) {
      if (!b.is_list() || b.size() != 2) b.fail("parameter (NAME SORT) expected");
      if (!sig.has_sort(b[1].text)) b[1].fail("unknown sort '" + b[1].text + "'");
      d.params.push_back(st.bind(b[0].text, b[1].text));
      p.seed(b[0].text, b[1].text);
    }
    d.body = p.parse(e[3]);
    for (std::size_t i = 4; i < e.size(); ++i) {
      const SExpr& m = e[i];
      if (!m.headed("meta")) m.fail("(meta ...) expected");
      if (m.size() >= 2 && m[1].is_str()) d.meta.paper_loc = m[1].text;
      if (m.size() >= 3 && m[2].is_str()) d.meta.intended_semantics = m[2].text;
      for (std::size_t j = 3; j < m.size(); ++j) {
        const std::string& tag = m[j].atom("meta tag");
        if (tag == "plain")
          d.meta.variant = Variant::Plain;
        else if (tag == "vol")
          d.meta.variant = Variant::Vol;
        else if (tag == "symbolic")
          d.meta.symbolic = true;
        else
          m[j].fail("unknown meta tag '" + tag + "'");
      }
    }
    table.add(st, std::move(d));
  }
  return table;
}

inline std::string escape_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string write_defs(const Store& st, const DefTable& table) {
  std::string out;
  for (const NamedDef& d : table.all()) {
    out += "(def " + d.name + " (";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) out += ' ';
      out += '(' + st.name(d.params[i].var) + ' ' + st.name(d.params[i].sort) + ')';
    }
    out += ")\n  " + print(st, d.body);
    if (!d.meta.paper_loc.empty() || !d.meta.intended_semantics.empty() || d.meta.symbolic ||
        d.meta.variant == Variant::Vol) {
      out += "\n  (meta " + escape_str(d.meta.paper_loc) + ' ' +
             escape_str(d.meta.intended_semantics) + ' ' +
             (d.meta.variant == Variant::Vol ? "vol" : "plain");
      if (d.meta.symbolic) out += " symbolic";
      out += ')';
    }
    out += ")\n\n";
  }
  return out;
}

}  // namespace agape::folcore
